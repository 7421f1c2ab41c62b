#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "narrowpass/cspace.hpp"

namespace narrowpass {

// Convex polygon, counter-clockwise.
struct Polygon {
  std::vector<Point2> vertices;
  friend bool operator==(const Polygon&, const Polygon&) = default;
};

// Axis-aligned box in any dimension; used for 3D obstacles and passage regions.
struct AlignedBox {
  std::vector<Interval> axes;

  std::size_t dims() const noexcept { return axes.size(); }
  bool contains(std::span<const double> p) const noexcept;
  std::vector<double> center() const;
  double volume() const noexcept;
  friend bool operator==(const AlignedBox&, const AlignedBox&) = default;
};

struct Scene {
  std::string name;
  std::size_t dims = 2;
  std::vector<Interval> bounds;
  std::vector<Polygon> polygons;  // dims == 2
  std::vector<AlignedBox> boxes;  // dims == 3
  std::optional<AlignedBox> passage;

  // Throws ParameterError describing the first violated invariant.
  void validate() const;
  AlignedBox bounds_box() const { return AlignedBox{bounds}; }

  friend bool operator==(const Scene&, const Scene&) = default;
};

// Number of collision queries issued during one trial.
class CollisionCounter {
 public:
  std::uint64_t calls() const noexcept { return calls_; }
  void increment() noexcept { ++calls_; }
  void reset() noexcept { calls_ = 0; }

 private:
  std::uint64_t calls_ = 0;
};

// Throw ParameterError on a broken invariant.
void validate_polygon(const Polygon& poly);
void validate_obstacle_box(const AlignedBox& box);

// Polygon area (positive when counter-clockwise).
double signed_area(const Polygon& poly) noexcept;

bool point_in_polygon(const Polygon& poly, Point2 p) noexcept;
bool segment_hits_polygon(const Polygon& poly, Point2 a, Point2 b) noexcept;
bool segment_hits_box(const AlignedBox& box, std::span<const double> a,
                      std::span<const double> b) noexcept;

// True when p touches any obstacle or lies strictly outside the bounds.
bool point_in_obstacle(const Scene& scene, std::span<const double> p);

// True when the closed segment ab touches any obstacle or leaves the bounds.
bool segment_hits_scene(const Scene& scene, std::span<const double> a,
                        std::span<const double> b);

using Mat3 = std::array<std::array<double, 3>, 3>;

// Rz(yaw) * Ry(pitch) * Rx(roll).
Mat3 rotation_from_euler(double yaw, double pitch, double roll) noexcept;

// Oriented box: center, orthonormal axes (columns of `axes`) and half extents.
struct OrientedBox {
  std::array<double, 3> center{};
  Mat3 axes{};
  std::array<double, 3> half{};

  std::array<std::array<double, 3>, 8> corners() const noexcept;
};

std::vector<OrientedBox> place_body(const RigidBodyRobot3D& robot,
                                    const Configuration& q);

// Separating-axis test; touching boxes overlap.
bool obb_overlaps_aabb(const OrientedBox& obb, const AlignedBox& aabb) noexcept;

// Counts exactly one query on `counter` per call, whatever the outcome.
bool is_colliding(const Scene& scene, const Robot& robot,
                  const Configuration& q, CollisionCounter& counter);

// Reference point used for sample-quality scoring: q.trans for point and
// link robots, the transformed volume centroid for rigid bodies.
std::vector<double> reference_point(const Robot& robot, const Configuration& q);

// Does not touch any collision counter. Throws ContractError when the scene
// declares no passage.
bool in_passage(const Scene& scene, const Robot& robot, const Configuration& q);

}  // namespace narrowpass
