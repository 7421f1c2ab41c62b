#include "narrowpass/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "narrowpass/error.hpp"

namespace narrowpass {

namespace {

using Vec3 = std::array<double, 3>;

double cross(Point2 o, Point2 a, Point2 b) noexcept {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double dot3(const Vec3& a, const Vec3& b) noexcept {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

Vec3 cross3(const Vec3& a, const Vec3& b) noexcept {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

Vec3 column(const Mat3& m, int c) noexcept { return {m[0][c], m[1][c], m[2][c]}; }

bool outside_bounds(const std::vector<Interval>& bounds,
                    std::span<const double> p) noexcept {
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    if (p[i] < bounds[i].lo || p[i] > bounds[i].hi) return true;
  }
  return false;
}

void check_point_dims(const Scene& scene, std::size_t n) {
  if (n != scene.dims) {
    throw ContractError("point has " + std::to_string(n) +
                        " coordinates, scene is " + std::to_string(scene.dims) +
                        "D");
  }
}

bool body_hits_scene(const Scene& scene, const RigidBodyRobot3D& robot,
                     const Configuration& q) {
  for (const auto& obb : place_body(robot, q)) {
    for (const auto& c : obb.corners()) {
      if (outside_bounds(scene.bounds, c)) return true;
    }
    for (const auto& box : scene.boxes) {
      if (obb_overlaps_aabb(obb, box)) return true;
    }
  }
  return false;
}

}  // namespace

bool AlignedBox::contains(std::span<const double> p) const noexcept {
  for (std::size_t i = 0; i < axes.size(); ++i) {
    if (p[i] < axes[i].lo || p[i] > axes[i].hi) return false;
  }
  return true;
}

std::vector<double> AlignedBox::center() const {
  std::vector<double> c(axes.size());
  for (std::size_t i = 0; i < axes.size(); ++i) {
    c[i] = 0.5 * (axes[i].lo + axes[i].hi);
  }
  return c;
}

double AlignedBox::volume() const noexcept {
  double v = 1.0;
  for (const auto& a : axes) v *= a.extent();
  return v;
}

void Scene::validate() const {
  if (dims != 2 && dims != 3) throw ParameterError("scene dims must be 2 or 3");
  if (bounds.size() != dims) {
    throw ParameterError("scene bounds must have one interval per dimension");
  }
  for (const auto& b : bounds) {
    if (!(b.lo < b.hi)) throw ParameterError("scene bounds require lo < hi");
  }
  if (dims == 2 && !boxes.empty()) {
    throw ParameterError("2D scenes take polygon obstacles only");
  }
  if (dims == 3 && !polygons.empty()) {
    throw ParameterError("3D scenes take box obstacles only");
  }
  for (const auto& poly : polygons) validate_polygon(poly);
  for (const auto& box : boxes) validate_obstacle_box(box);
  if (passage) {
    if (passage->dims() != dims) {
      throw ParameterError("passage dimension does not match scene");
    }
    for (std::size_t i = 0; i < dims; ++i) {
      const auto& p = passage->axes[i];
      if (!(p.hi > p.lo)) throw ParameterError("passage needs positive extents");
      if (p.lo < bounds[i].lo || p.hi > bounds[i].hi) {
        throw ParameterError("passage must lie within the scene bounds");
      }
    }
  }
}

void validate_polygon(const Polygon& poly) {
  const auto& v = poly.vertices;
  if (v.size() < 3) throw ParameterError("polygon requires ≥3 vertices");
  if (!(signed_area(poly) > 0.0)) {
    throw ParameterError("polygon must be counter-clockwise with positive area");
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (cross(v[i], v[(i + 1) % v.size()], v[(i + 2) % v.size()]) < 0.0) {
      throw ParameterError("polygon must be convex");
    }
  }
}

void validate_obstacle_box(const AlignedBox& box) {
  if (box.dims() != 3) throw ParameterError("obstacle boxes must be 3D");
  for (const auto& a : box.axes) {
    if (!(a.hi > a.lo)) throw ParameterError("boxes need positive extents");
  }
}

double signed_area(const Polygon& poly) noexcept {
  const auto& v = poly.vertices;
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& a = v[i];
    const auto& b = v[(i + 1) % v.size()];
    s += a.x * b.y - b.x * a.y;
  }
  return 0.5 * s;
}

bool point_in_polygon(const Polygon& poly, Point2 p) noexcept {
  const auto& v = poly.vertices;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (cross(v[i], v[(i + 1) % v.size()], p) < 0.0) return false;
  }
  return true;
}

bool segment_hits_polygon(const Polygon& poly, Point2 a, Point2 b) noexcept {
  // Cyrus-Beck clipping of the parametric segment against each edge's
  // inner half-plane.
  const auto& v = poly.vertices;
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  double t_enter = 0.0;
  double t_leave = 1.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2 p0 = v[i];
    const Point2 p1 = v[(i + 1) % v.size()];
    // Outward normal of a CCW edge.
    const double nx = p1.y - p0.y;
    const double ny = -(p1.x - p0.x);
    const double num = nx * (a.x - p0.x) + ny * (a.y - p0.y);
    const double den = nx * dx + ny * dy;
    if (den == 0.0) {
      if (num > 0.0) return false;
      continue;
    }
    const double t = -num / den;
    if (den < 0.0) {
      t_enter = std::max(t_enter, t);
    } else {
      t_leave = std::min(t_leave, t);
    }
    if (t_enter > t_leave) return false;
  }
  return true;
}

bool segment_hits_box(const AlignedBox& box, std::span<const double> a,
                      std::span<const double> b) noexcept {
  double t_enter = 0.0;
  double t_leave = 1.0;
  for (std::size_t i = 0; i < box.axes.size(); ++i) {
    const double d = b[i] - a[i];
    const double lo = box.axes[i].lo;
    const double hi = box.axes[i].hi;
    if (d == 0.0) {
      if (a[i] < lo || a[i] > hi) return false;
      continue;
    }
    double t0 = (lo - a[i]) / d;
    double t1 = (hi - a[i]) / d;
    if (t0 > t1) std::swap(t0, t1);
    t_enter = std::max(t_enter, t0);
    t_leave = std::min(t_leave, t1);
    if (t_enter > t_leave) return false;
  }
  return true;
}

bool point_in_obstacle(const Scene& scene, std::span<const double> p) {
  check_point_dims(scene, p.size());
  if (outside_bounds(scene.bounds, p)) return true;
  if (scene.dims == 2) {
    const Point2 pt{p[0], p[1]};
    return std::any_of(scene.polygons.begin(), scene.polygons.end(),
                       [&](const Polygon& poly) { return point_in_polygon(poly, pt); });
  }
  return std::any_of(scene.boxes.begin(), scene.boxes.end(),
                     [&](const AlignedBox& box) { return box.contains(p); });
}

bool segment_hits_scene(const Scene& scene, std::span<const double> a,
                        std::span<const double> b) {
  check_point_dims(scene, a.size());
  check_point_dims(scene, b.size());
  // The bounds are convex, so the segment stays inside iff both ends do.
  if (outside_bounds(scene.bounds, a) || outside_bounds(scene.bounds, b)) {
    return true;
  }
  if (scene.dims == 2) {
    const Point2 pa{a[0], a[1]};
    const Point2 pb{b[0], b[1]};
    return std::any_of(scene.polygons.begin(), scene.polygons.end(),
                       [&](const Polygon& poly) {
                         return segment_hits_polygon(poly, pa, pb);
                       });
  }
  return std::any_of(scene.boxes.begin(), scene.boxes.end(),
                     [&](const AlignedBox& box) {
                       return segment_hits_box(box, a, b);
                     });
}

Mat3 rotation_from_euler(double yaw, double pitch, double roll) noexcept {
  const double cy = std::cos(yaw), sy = std::sin(yaw);
  const double cp = std::cos(pitch), sp = std::sin(pitch);
  const double cr = std::cos(roll), sr = std::sin(roll);
  return {{{cy * cp, cy * sp * sr - sy * cr, cy * sp * cr + sy * sr},
           {sy * cp, sy * sp * sr + cy * cr, sy * sp * cr - cy * sr},
           {-sp, cp * sr, cp * cr}}};
}

std::array<std::array<double, 3>, 8> OrientedBox::corners() const noexcept {
  std::array<std::array<double, 3>, 8> out{};
  for (int i = 0; i < 8; ++i) {
    const double s[3] = {(i & 1) ? 1.0 : -1.0, (i & 2) ? 1.0 : -1.0,
                         (i & 4) ? 1.0 : -1.0};
    for (int r = 0; r < 3; ++r) {
      double v = center[r];
      for (int c = 0; c < 3; ++c) v += axes[r][c] * s[c] * half[c];
      out[i][r] = v;
    }
  }
  return out;
}

std::vector<OrientedBox> place_body(const RigidBodyRobot3D& robot,
                                    const Configuration& q) {
  if (q.trans().size() != 3 || q.angles().size() != 3) {
    throw ContractError("rigid body configuration must be (3 trans, 3 angles)");
  }
  const Mat3 rot = rotation_from_euler(q.angles()[0], q.angles()[1], q.angles()[2]);
  std::vector<OrientedBox> out;
  out.reserve(robot.shape.size());
  for (const auto& b : robot.shape) {
    OrientedBox obb;
    obb.axes = rot;
    Vec3 local{};
    for (int k = 0; k < 3; ++k) {
      local[k] = 0.5 * (b.lo[k] + b.hi[k]);
      obb.half[k] = 0.5 * (b.hi[k] - b.lo[k]);
    }
    for (int r = 0; r < 3; ++r) {
      obb.center[r] = q.trans()[r] + dot3(rot[r], local);
    }
    out.push_back(obb);
  }
  return out;
}

bool obb_overlaps_aabb(const OrientedBox& obb, const AlignedBox& aabb) noexcept {
  Vec3 box_center{};
  Vec3 box_half{};
  for (int k = 0; k < 3; ++k) {
    box_center[k] = 0.5 * (aabb.axes[k].lo + aabb.axes[k].hi);
    box_half[k] = 0.5 * (aabb.axes[k].hi - aabb.axes[k].lo);
  }
  const Vec3 offset{obb.center[0] - box_center[0], obb.center[1] - box_center[1],
                    obb.center[2] - box_center[2]};
  const std::array<Vec3, 3> world{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  const std::array<Vec3, 3> body{column(obb.axes, 0), column(obb.axes, 1),
                                 column(obb.axes, 2)};

  auto separated = [&](const Vec3& axis) {
    const double len2 = dot3(axis, axis);
    if (len2 < 1e-18) return false;  // degenerate cross product
    double r_box = 0.0;
    double r_obb = 0.0;
    for (int k = 0; k < 3; ++k) {
      r_box += box_half[k] * std::abs(dot3(world[k], axis));
      r_obb += obb.half[k] * std::abs(dot3(body[k], axis));
    }
    return std::abs(dot3(offset, axis)) > r_box + r_obb;
  };

  for (const auto& a : world) {
    if (separated(a)) return false;
  }
  for (const auto& a : body) {
    if (separated(a)) return false;
  }
  for (const auto& a : world) {
    for (const auto& b : body) {
      if (separated(cross3(a, b))) return false;
    }
  }
  return true;
}

bool is_colliding(const Scene& scene, const Robot& robot,
                  const Configuration& q, CollisionCounter& counter) {
  counter.increment();
  if (const auto* link = std::get_if<PlanarLinkRobot>(&robot)) {
    if (scene.dims != 2) throw ContractError("planar link robot needs a 2D scene");
    if (point_in_obstacle(scene, q.trans())) return true;
    for (const auto& seg : forward_kinematics(*link, q)) {
      const double a[2] = {seg.a.x, seg.a.y};
      const double b[2] = {seg.b.x, seg.b.y};
      if (segment_hits_scene(scene, a, b)) return true;
    }
    return false;
  }
  if (const auto* body = std::get_if<RigidBodyRobot3D>(&robot)) {
    if (scene.dims != 3) throw ContractError("rigid body robot needs a 3D scene");
    return body_hits_scene(scene, *body, q);
  }
  return point_in_obstacle(scene, q.trans());
}

std::vector<double> reference_point(const Robot& robot, const Configuration& q) {
  const auto* body = std::get_if<RigidBodyRobot3D>(&robot);
  if (body == nullptr) return q.trans();

  Vec3 centroid{};
  double volume = 0.0;
  for (const auto& b : body->shape) {
    const double v = (b.hi[0] - b.lo[0]) * (b.hi[1] - b.lo[1]) * (b.hi[2] - b.lo[2]);
    for (int k = 0; k < 3; ++k) centroid[k] += v * 0.5 * (b.lo[k] + b.hi[k]);
    volume += v;
  }
  for (double& c : centroid) c /= volume;
  const Mat3 rot = rotation_from_euler(q.angles().at(0), q.angles().at(1),
                                       q.angles().at(2));
  std::vector<double> out(3);
  for (int r = 0; r < 3; ++r) out[r] = q.trans().at(r) + dot3(rot[r], centroid);
  return out;
}

bool in_passage(const Scene& scene, const Robot& robot, const Configuration& q) {
  if (!scene.passage) {
    throw ContractError("scene '" + scene.name + "' declares no passage region");
  }
  const auto ref = reference_point(robot, q);
  check_point_dims(scene, ref.size());
  return scene.passage->contains(ref);
}

}  // namespace narrowpass
