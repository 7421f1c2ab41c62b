#include "narrowpass/cspace.hpp"

#include <cmath>
#include <string>

#include "narrowpass/error.hpp"

namespace narrowpass {

double wrap_angle(double a) noexcept {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a tiny negative value can round up to exactly 2*pi.
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double shortest_arc(double from, double to) noexcept {
  double d = std::remainder(to - from, kTwoPi);
  return d;
}

Configuration::Configuration(std::vector<double> trans,
                             std::vector<double> angles)
    : trans_(std::move(trans)), angles_(std::move(angles)) {
  for (double& a : angles_) a = wrap_angle(a);
}

SpaceSpec::SpaceSpec(std::vector<Interval> trans_bounds, std::size_t angle_dims,
                     double angle_weight)
    : bounds_(std::move(trans_bounds)),
      angle_dims_(angle_dims),
      angle_weight_(angle_weight) {
  for (std::size_t i = 0; i < bounds_.size(); ++i) {
    if (!(bounds_[i].lo < bounds_[i].hi)) {
      throw ParameterError("translation axis " + std::to_string(i) +
                           " requires lo < hi");
    }
  }
  if (angle_dims_ > 0 && !(angle_weight_ > 0.0)) {
    throw ParameterError("angle_weight must be > 0 when angles are present");
  }
  if (angle_weight_ < 0.0) throw ParameterError("angle_weight must be >= 0");
}

double SpaceSpec::diagonal() const noexcept {
  double s = 0.0;
  for (const auto& b : bounds_) s += b.extent() * b.extent();
  return std::sqrt(s);
}

void SpaceSpec::check(const Configuration& q) const {
  if (!matches(q)) {
    throw ContractError("configuration has shape (" +
                        std::to_string(q.trans().size()) + "," +
                        std::to_string(q.angles().size()) +
                        "), space expects (" + std::to_string(trans_dims()) +
                        "," + std::to_string(angle_dims_) + ")");
  }
}

void validate_robot(const Robot& robot, const SpaceSpec& spec) {
  struct Visitor {
    const SpaceSpec& spec;
    void operator()(const PointRobot&) const {
      if (spec.trans_dims() != 2 && spec.trans_dims() != 3) {
        throw ContractError("point robot needs a 2D or 3D space");
      }
    }
    void operator()(const PlanarLinkRobot& r) const {
      if (spec.trans_dims() != 2) {
        throw ContractError("planar link robot needs 2 translation dims");
      }
      if (r.link_lengths.size() != spec.angle_dims()) {
        throw ContractError("planar link robot has " +
                            std::to_string(r.link_lengths.size()) +
                            " links but space has " +
                            std::to_string(spec.angle_dims()) + " angles");
      }
      for (double l : r.link_lengths) {
        if (!(l > 0.0)) throw ParameterError("link lengths must be > 0");
      }
    }
    void operator()(const RigidBodyRobot3D& r) const {
      if (spec.trans_dims() != 3 || spec.angle_dims() != 3) {
        throw ContractError("rigid body robot needs a (3 trans, 3 angle) space");
      }
      if (r.shape.empty()) throw ParameterError("rigid body shape is empty");
      for (const auto& b : r.shape) {
        for (int k = 0; k < 3; ++k) {
          if (!(b.hi[k] > b.lo[k])) {
            throw ParameterError("body boxes need positive extents");
          }
        }
      }
    }
  };
  std::visit(Visitor{spec}, robot);
}

PlanarLinkRobot make_link_robot(std::size_t links, double link_length) {
  return PlanarLinkRobot{std::vector<double>(links, link_length)};
}

RigidBodyRobot3D make_lshape_robot(double arm, double thickness) {
  if (!(arm > thickness) || !(thickness > 0.0)) {
    throw ParameterError("L-shape needs arm > thickness > 0");
  }
  BodyBox long_arm{{0.0, 0.0, 0.0}, {arm, thickness, thickness}};
  BodyBox short_arm{{0.0, thickness, 0.0}, {thickness, arm, thickness}};

  std::array<double, 3> centroid{};
  double volume = 0.0;
  for (const auto& b : {long_arm, short_arm}) {
    double v = (b.hi[0] - b.lo[0]) * (b.hi[1] - b.lo[1]) * (b.hi[2] - b.lo[2]);
    for (int k = 0; k < 3; ++k) centroid[k] += v * 0.5 * (b.lo[k] + b.hi[k]);
    volume += v;
  }
  RigidBodyRobot3D robot;
  for (auto b : {long_arm, short_arm}) {
    for (int k = 0; k < 3; ++k) {
      b.lo[k] -= centroid[k] / volume;
      b.hi[k] -= centroid[k] / volume;
    }
    robot.shape.push_back(b);
  }
  return robot;
}

std::vector<Segment2> forward_kinematics(const PlanarLinkRobot& robot,
                                         const Configuration& q) {
  if (q.trans().size() != 2 || q.angles().size() != robot.link_lengths.size()) {
    throw ContractError("configuration does not match planar link robot");
  }
  std::vector<Segment2> segments;
  segments.reserve(robot.link_lengths.size());
  Point2 at{q.trans()[0], q.trans()[1]};
  for (std::size_t i = 0; i < robot.link_lengths.size(); ++i) {
    const double theta = q.angles()[i];
    const double len = robot.link_lengths[i];
    Point2 next{at.x + len * std::cos(theta), at.y + len * std::sin(theta)};
    segments.push_back({at, next});
    at = next;
  }
  return segments;
}

double distance(const SpaceSpec& spec, const Configuration& q1,
                const Configuration& q2) {
  spec.check(q1);
  spec.check(q2);
  double s = 0.0;
  for (std::size_t i = 0; i < q1.trans().size(); ++i) {
    const double d = q1.trans()[i] - q2.trans()[i];
    s += d * d;
  }
  for (std::size_t i = 0; i < q1.angles().size(); ++i) {
    const double raw = std::abs(q1.angles()[i] - q2.angles()[i]);
    const double d = spec.angle_weight() * std::min(raw, kTwoPi - raw);
    s += d * d;
  }
  return std::sqrt(s);
}

Configuration interpolate(const SpaceSpec& spec, const Configuration& q1,
                          const Configuration& q2, double t) {
  spec.check(q1);
  spec.check(q2);
  if (!(t >= 0.0 && t <= 1.0)) {
    throw ContractError("interpolation parameter must lie in [0, 1]");
  }
  if (t == 0.0) return q1;
  if (t == 1.0) return q2;
  std::vector<double> trans(q1.trans().size());
  for (std::size_t i = 0; i < trans.size(); ++i) {
    trans[i] = q1.trans()[i] + t * (q2.trans()[i] - q1.trans()[i]);
  }
  std::vector<double> angles(q1.angles().size());
  for (std::size_t i = 0; i < angles.size(); ++i) {
    angles[i] = q1.angles()[i] + t * shortest_arc(q1.angles()[i], q2.angles()[i]);
  }
  return Configuration(std::move(trans), std::move(angles));
}

Configuration sample_uniform(const SpaceSpec& spec, Rng& rng) {
  std::vector<double> trans(spec.trans_dims());
  for (std::size_t i = 0; i < trans.size(); ++i) {
    const auto& b = spec.trans_bounds()[i];
    trans[i] = b.lo + uniform01(rng) * b.extent();
  }
  std::vector<double> angles(spec.angle_dims());
  for (double& a : angles) a = uniform01(rng) * kTwoPi;
  return Configuration(std::move(trans), std::move(angles));
}

Configuration step(const SpaceSpec& spec, const Configuration& q,
                   std::span<const double> direction, double length) {
  spec.check(q);
  if (direction.size() != spec.dim()) {
    throw ContractError("direction dimension does not match space");
  }
  double norm2 = 0.0;
  for (double d : direction) norm2 += d * d;
  if (std::abs(std::sqrt(norm2) - 1.0) > 1e-9) {
    throw ContractError("step direction must be a unit vector");
  }
  if (!(length >= 0.0)) throw ContractError("step length must be >= 0");

  const std::size_t nt = spec.trans_dims();
  std::vector<double> trans(q.trans());
  for (std::size_t i = 0; i < nt; ++i) trans[i] += length * direction[i];
  std::vector<double> angles(q.angles());
  for (std::size_t i = 0; i < angles.size(); ++i) {
    angles[i] += length * direction[nt + i] / spec.angle_weight();
  }
  return Configuration(std::move(trans), std::move(angles));
}

}  // namespace narrowpass
