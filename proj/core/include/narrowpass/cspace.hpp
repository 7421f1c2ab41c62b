#pragma once

#include <array>
#include <cstddef>
#include <numbers>
#include <span>
#include <variant>
#include <vector>

#include "narrowpass/random.hpp"

namespace narrowpass {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Maps any finite angle into [0, 2*pi).
double wrap_angle(double a) noexcept;

// Signed shortest rotation taking `from` to `to`, in [-pi, pi].
double shortest_arc(double from, double to) noexcept;

// A point in configuration space: translational block followed by an
// angular block. Angles are wrapped on every write.
class Configuration {
 public:
  Configuration() = default;
  Configuration(std::vector<double> trans, std::vector<double> angles);

  const std::vector<double>& trans() const noexcept { return trans_; }
  const std::vector<double>& angles() const noexcept { return angles_; }
  std::size_t dim() const noexcept { return trans_.size() + angles_.size(); }

  void set_trans(std::size_t i, double v) { trans_.at(i) = v; }
  void set_angle(std::size_t i, double v) { angles_.at(i) = wrap_angle(v); }

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  std::vector<double> trans_;
  std::vector<double> angles_;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double extent() const noexcept { return hi - lo; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

class SpaceSpec {
 public:
  SpaceSpec(std::vector<Interval> trans_bounds, std::size_t angle_dims,
            double angle_weight = 1.0);

  const std::vector<Interval>& trans_bounds() const noexcept { return bounds_; }
  std::size_t trans_dims() const noexcept { return bounds_.size(); }
  std::size_t angle_dims() const noexcept { return angle_dims_; }
  std::size_t dim() const noexcept { return bounds_.size() + angle_dims_; }
  double angle_weight() const noexcept { return angle_weight_; }

  // Length of the diagonal of the translational bounding box.
  double diagonal() const noexcept;

  bool matches(const Configuration& q) const noexcept {
    return q.trans().size() == bounds_.size() &&
           q.angles().size() == angle_dims_;
  }
  // Throws ContractError when q has the wrong shape.
  void check(const Configuration& q) const;

  friend bool operator==(const SpaceSpec&, const SpaceSpec&) = default;

 private:
  std::vector<Interval> bounds_;
  std::size_t angle_dims_ = 0;
  double angle_weight_ = 1.0;
};

// ---------------------------------------------------------------------------
// Robots

struct PointRobot {};

// Serial chain anchored at q.trans. Each link angle is absolute, measured
// from the world x axis.
struct PlanarLinkRobot {
  std::vector<double> link_lengths;
};

struct BodyBox {
  std::array<double, 3> lo{};
  std::array<double, 3> hi{};
};

// Rigid body made of boxes given in the body frame. q.trans positions the
// body origin, q.angles = (yaw, pitch, roll) applied as Rz * Ry * Rx.
struct RigidBodyRobot3D {
  std::vector<BodyBox> shape;
};

using Robot = std::variant<PointRobot, PlanarLinkRobot, RigidBodyRobot3D>;

// Validates the robot's own invariants and its fit to `spec`.
void validate_robot(const Robot& robot, const SpaceSpec& spec);

PlanarLinkRobot make_link_robot(std::size_t links, double link_length);

// Two perpendicular arms of length `arm` and square cross-section `thickness`
// meeting at a corner, with the body origin at the volume centroid.
RigidBodyRobot3D make_lshape_robot(double arm, double thickness);

struct Point2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point2&, const Point2&) = default;
};

struct Segment2 {
  Point2 a;
  Point2 b;
};

std::vector<Segment2> forward_kinematics(const PlanarLinkRobot& robot,
                                         const Configuration& q);

// ---------------------------------------------------------------------------
// Metric, interpolation and sampling

double distance(const SpaceSpec& spec, const Configuration& q1,
                const Configuration& q2);

Configuration interpolate(const SpaceSpec& spec, const Configuration& q1,
                          const Configuration& q2, double t);

Configuration sample_uniform(const SpaceSpec& spec, Rng& rng);

// Moves q by `length` along `direction` (unit, full dimension). Angular
// components are advanced by length * dir / angle_weight. Translation is not
// clamped to the bounds.
Configuration step(const SpaceSpec& spec, const Configuration& q,
                   std::span<const double> direction, double length);

}  // namespace narrowpass
