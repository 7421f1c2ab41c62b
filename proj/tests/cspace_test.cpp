#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "narrowpass/cspace.hpp"
#include "narrowpass/error.hpp"
#include "narrowpass/heavytail.hpp"
#include "narrowpass/random.hpp"

namespace np = narrowpass;
using std::numbers::pi;

namespace {

np::SpaceSpec plane() { return np::SpaceSpec({{0, 100}, {0, 100}}, 0); }
np::SpaceSpec plane_with_angles(std::size_t n) {
  return np::SpaceSpec({{0, 100}, {0, 100}}, n);
}

np::Configuration random_config(const np::SpaceSpec& s, np::Rng& rng) {
  return np::sample_uniform(s, rng);
}

TEST(WrapAngle, MapsIntoHalfOpenRange) {
  EXPECT_DOUBLE_EQ(np::wrap_angle(0.0), 0.0);
  EXPECT_DOUBLE_EQ(np::wrap_angle(-0.5), np::kTwoPi - 0.5);
  EXPECT_NEAR(np::wrap_angle(5 * pi), pi, 1e-12);
  EXPECT_EQ(np::wrap_angle(np::kTwoPi), 0.0);
  const double tiny_negative = -1e-18;
  EXPECT_LT(np::wrap_angle(tiny_negative), np::kTwoPi);
}

TEST(Configuration, AnglesWrappedOnConstruction) {
  np::Configuration q({1, 2}, {-pi / 2, 3 * pi});
  EXPECT_NEAR(q.angles()[0], 1.5 * pi, 1e-12);
  EXPECT_NEAR(q.angles()[1], pi, 1e-12);
  q.set_angle(0, 7.0);
  EXPECT_NEAR(q.angles()[0], 7.0 - np::kTwoPi, 1e-12);
}

TEST(SpaceSpec, RejectsBadBoundsAndWeight) {
  EXPECT_THROW(np::SpaceSpec({{1, 1}}, 0), np::ParameterError);
  EXPECT_THROW(np::SpaceSpec({{2, 1}}, 0), np::ParameterError);
  EXPECT_THROW(np::SpaceSpec({{0, 1}}, 2, 0.0), np::ParameterError);
  EXPECT_NO_THROW(np::SpaceSpec({{0, 1}}, 0, 0.0));
}

TEST(SpaceSpec, CheckRejectsWrongShape) {
  const auto s = plane();
  EXPECT_THROW(s.check(np::Configuration({1, 2, 3}, {})), np::ContractError);
  EXPECT_THROW(np::distance(s, np::Configuration({1}, {}), np::Configuration({1, 2}, {})),
               np::ContractError);
}

// --- forward kinematics -----------------------------------------------------

TEST(ForwardKinematics, ZeroAnglesAlongX) {
  const auto robot = np::make_link_robot(2, 1.0);
  const auto segs = np::forward_kinematics(robot, np::Configuration({0, 0}, {0, 0}));
  ASSERT_EQ(segs.size(), 2u);
  EXPECT_EQ(segs[0].a, (np::Point2{0, 0}));
  EXPECT_EQ(segs[0].b, (np::Point2{1, 0}));
  EXPECT_EQ(segs[1].b, (np::Point2{2, 0}));
}

TEST(ForwardKinematics, QuarterTurn) {
  const auto robot = np::make_link_robot(1, 2.0);
  const auto segs = np::forward_kinematics(robot, np::Configuration({1, 1}, {pi / 2}));
  EXPECT_NEAR(segs[0].b.x, 1.0, 1e-12);
  EXPECT_NEAR(segs[0].b.y, 3.0, 1e-12);
}

TEST(ForwardKinematics, ThreeLinksMatchComplexRotation) {
  const auto robot = np::make_link_robot(3, 1.0);
  const auto segs = np::forward_kinematics(robot, np::Configuration({0, 0}, {0, pi / 2, pi}));
  const std::array<std::pair<double, double>, 3> want{{{1, 0}, {1, 1}, {0, 1}}};
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(segs[i].b.x, want[i].first, 1e-12);
    EXPECT_NEAR(segs[i].b.y, want[i].second, 1e-12);
  }
}

TEST(ForwardKinematics, RandomChainsAgreeWithComplexOracle) {
  np::Rng rng = np::make_rng(3);
  std::uniform_real_distribution<double> len(0.1, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 7;
    np::PlanarLinkRobot robot;
    for (std::size_t i = 0; i < n; ++i) robot.link_lengths.push_back(len(rng));
    const auto q = random_config(plane_with_angles(n), rng);
    const auto segs = np::forward_kinematics(robot, q);
    std::complex<double> tip(q.trans()[0], q.trans()[1]);
    for (std::size_t i = 0; i < n; ++i) {
      tip += std::polar(robot.link_lengths[i], q.angles()[i]);
      EXPECT_NEAR(segs[i].b.x, tip.real(), 1e-9);
      EXPECT_NEAR(segs[i].b.y, tip.imag(), 1e-9);
      if (i + 1 < n) EXPECT_EQ(segs[i].b, segs[i + 1].a);
    }
  }
}

TEST(ForwardKinematics, DimensionMismatch) {
  const auto robot = np::make_link_robot(3, 1.0);
  EXPECT_THROW(np::forward_kinematics(robot, np::Configuration({0, 0}, {0, 0})),
               np::ContractError);
}

TEST(Robots, ValidateAgainstSpace) {
  EXPECT_THROW(np::validate_robot(np::make_link_robot(3, 1.0), plane_with_angles(2)),
               np::ContractError);
  EXPECT_THROW(np::validate_robot(np::PlanarLinkRobot{{1.0, -1.0}}, plane_with_angles(2)),
               np::ParameterError);
  EXPECT_NO_THROW(np::validate_robot(np::PointRobot{}, plane()));
  const np::SpaceSpec s3({{0, 1}, {0, 1}, {0, 1}}, 3);
  EXPECT_NO_THROW(np::validate_robot(np::make_lshape_robot(10, 2), s3));
  EXPECT_THROW(np::validate_robot(np::RigidBodyRobot3D{}, s3), np::ParameterError);
}

TEST(Robots, LShapeCentroidAtOrigin) {
  const auto body = np::make_lshape_robot(10, 2);
  double vol = 0;
  std::array<double, 3> c{};
  for (const auto& b : body.shape) {
    double v = 1;
    for (int k = 0; k < 3; ++k) v *= b.hi[k] - b.lo[k];
    for (int k = 0; k < 3; ++k) c[k] += v * 0.5 * (b.lo[k] + b.hi[k]);
    vol += v;
  }
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(c[k] / vol, 0.0, 1e-12);
}

// --- metric -------------------------------------------------------------

TEST(Distance, Examples) {
  const auto s = plane();
  const np::Configuration a({0, 0}, {});
  EXPECT_EQ(np::distance(s, a, a), 0.0);
  EXPECT_DOUBLE_EQ(np::distance(s, a, np::Configuration({3, 4}, {})), 5.0);
  const np::SpaceSpec ang({{0, 1}}, 1);
  EXPECT_NEAR(np::distance(ang, np::Configuration({0}, {0.1}),
                           np::Configuration({0}, {np::kTwoPi - 0.1})),
              0.2, 1e-12);
}

TEST(Distance, AngleWeightScalesAngularPart) {
  const np::SpaceSpec s({{0, 1}}, 1, 3.0);
  EXPECT_NEAR(np::distance(s, np::Configuration({0}, {0}), np::Configuration({0}, {0.5})), 1.5,
              1e-12);
}

// Brute force: evaluate the wrapped difference by scanning the 2*pi shifts.
double brute_distance(const np::SpaceSpec& s, const np::Configuration& a,
                      const np::Configuration& b) {
  double acc = 0;
  for (std::size_t i = 0; i < a.trans().size(); ++i) {
    acc += std::pow(a.trans()[i] - b.trans()[i], 2);
  }
  for (std::size_t i = 0; i < a.angles().size(); ++i) {
    double best = 1e300;
    for (int k = -2; k <= 2; ++k) {
      best = std::min(best, std::abs(a.angles()[i] - b.angles()[i] + k * np::kTwoPi));
    }
    acc += std::pow(s.angle_weight() * best, 2);
  }
  return std::sqrt(acc);
}

TEST(Distance, SymmetricTriangleAndBruteForce) {
  const np::SpaceSpec s({{0, 100}, {0, 100}}, 3, 2.0);
  np::Rng rng = np::make_rng(11);
  for (int i = 0; i < 2000; ++i) {
    const auto a = random_config(s, rng);
    const auto b = random_config(s, rng);
    const auto c = random_config(s, rng);
    const double ab = np::distance(s, a, b);
    EXPECT_DOUBLE_EQ(ab, np::distance(s, b, a));
    EXPECT_LE(ab, np::distance(s, a, c) + np::distance(s, c, b) + 1e-9);
    EXPECT_NEAR(ab, brute_distance(s, a, b), 1e-9);
  }
}

// --- interpolation ------------------------------------------------------

TEST(Interpolate, Examples) {
  const auto s = plane();
  const np::Configuration a({0, 0}, {}), b({2, 2}, {});
  EXPECT_EQ(np::interpolate(s, a, b, 0.0), a);
  EXPECT_EQ(np::interpolate(s, a, b, 1.0), b);
  const auto mid = np::interpolate(s, a, b, 0.5);
  EXPECT_DOUBLE_EQ(mid.trans()[0], 1.0);
  EXPECT_DOUBLE_EQ(mid.trans()[1], 1.0);

  const np::SpaceSpec ang({{0, 1}}, 1);
  const auto m = np::interpolate(ang, np::Configuration({0}, {0.1}),
                                 np::Configuration({0}, {np::kTwoPi - 0.1}), 0.5);
  const double a0 = m.angles()[0];
  EXPECT_NEAR(std::min(a0, np::kTwoPi - a0), 0.0, 1e-12);
}

TEST(Interpolate, RejectsParameterOutsideUnitInterval) {
  const auto s = plane();
  const np::Configuration a({0, 0}, {});
  EXPECT_THROW(np::interpolate(s, a, a, -0.01), np::ContractError);
  EXPECT_THROW(np::interpolate(s, a, a, 1.01), np::ContractError);
}

TEST(Interpolate, EndpointsExactAndDistanceMonotone) {
  const np::SpaceSpec s({{0, 100}, {0, 100}}, 2);
  np::Rng rng = np::make_rng(5);
  for (int i = 0; i < 300; ++i) {
    const auto a = random_config(s, rng);
    const auto b = random_config(s, rng);
    EXPECT_EQ(np::interpolate(s, a, b, 0.0), a);
    EXPECT_EQ(np::interpolate(s, a, b, 1.0), b);
    double prev = 0.0;
    for (int k = 1; k <= 20; ++k) {
      const double d = np::distance(s, np::interpolate(s, a, b, k / 20.0), a);
      EXPECT_GE(d, prev - 1e-9);
      prev = d;
    }
  }
}

// --- uniform sampling ---------------------------------------------------

TEST(SampleUniform, InsideBoundsWithCentredMean) {
  const auto s = plane();
  np::Rng rng = np::make_rng(1);
  const int n = 100000;
  double mx = 0, my = 0;
  for (int i = 0; i < n; ++i) {
    const auto q = np::sample_uniform(s, rng);
    ASSERT_GE(q.trans()[0], 0.0);
    ASSERT_LE(q.trans()[0], 100.0);
    ASSERT_GE(q.trans()[1], 0.0);
    ASSERT_LE(q.trans()[1], 100.0);
    mx += q.trans()[0];
    my += q.trans()[1];
  }
  // sd of the mean = 100 / sqrt(12 n) ~ 0.091; 3 sigma < 1
  EXPECT_NEAR(mx / n, 50.0, 1.0);
  EXPECT_NEAR(my / n, 50.0, 1.0);
}

TEST(SampleUniform, AngleHistogramFlat) {
  const np::SpaceSpec s({{0, 1}}, 1);
  np::Rng rng = np::make_rng(2);
  const int n = 100000;
  std::array<int, 16> bins{};
  for (int i = 0; i < n; ++i) {
    const double a = np::sample_uniform(s, rng).angles()[0];
    ASSERT_GE(a, 0.0);
    ASSERT_LT(a, np::kTwoPi);
    ++bins[static_cast<std::size_t>(a / np::kTwoPi * 16)];
  }
  const double p = 1.0 / 16;
  const double sigma = std::sqrt(n * p * (1 - p));
  for (int b : bins) EXPECT_NEAR(b, n * p, 5 * sigma);
}

// --- step -------------------------------------------------------------------

TEST(Step, Examples) {
  const auto s = plane();
  const np::Configuration q({2, 3}, {});
  const std::array<double, 2> dx{1, 0};
  EXPECT_EQ(np::step(s, q, dx, 0.0), q);
  const auto moved = np::step(s, q, dx, 5.0);
  EXPECT_DOUBLE_EQ(moved.trans()[0], 7.0);
  EXPECT_DOUBLE_EQ(moved.trans()[1], 3.0);

  const np::SpaceSpec ang({{0, 1}}, 1);
  const std::array<double, 2> da{0, 1};
  const auto r = np::step(ang, np::Configuration({0.5}, {1.5 * pi}), da, pi);
  EXPECT_NEAR(r.angles()[0], 0.5 * pi, 1e-12);
}

TEST(Step, NotClampedToBounds) {
  const auto s = plane();
  const std::array<double, 2> dx{-1, 0};
  EXPECT_DOUBLE_EQ(np::step(s, np::Configuration({2, 3}, {}), dx, 10).trans()[0], -8.0);
}

TEST(Step, RejectsNonUnitDirection) {
  const auto s = plane();
  const std::array<double, 2> bad{1, 1};
  EXPECT_THROW(np::step(s, np::Configuration({0, 0}, {}), bad, 1.0), np::ContractError);
  const std::array<double, 3> wrong_dim{1, 0, 0};
  EXPECT_THROW(np::step(s, np::Configuration({0, 0}, {}), wrong_dim, 1.0), np::ContractError);
}

TEST(Step, ReversalReturnsToStart) {
  const np::SpaceSpec s({{0, 100}, {0, 100}}, 3, 1.5);
  np::Rng rng = np::make_rng(8);
  for (int i = 0; i < 500; ++i) {
    const auto q = random_config(s, rng);
    auto dir = np::sample_unit_direction(s.dim(), rng);
    const double len = 10.0 * np::uniform01(rng);
    const auto there = np::step(s, q, dir, len);
    for (double& d : dir) d = -d;
    EXPECT_LT(np::distance(s, np::step(s, there, dir, len), q), 1e-9);
  }
}

}  // namespace
