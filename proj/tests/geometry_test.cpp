#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "narrowpass/bench.hpp"
#include "narrowpass/error.hpp"
#include "narrowpass/geometry.hpp"
#include "narrowpass/heavytail.hpp"
#include "narrowpass/random.hpp"
#include "narrowpass/scenes.hpp"
#include "test_support.hpp"

namespace np = narrowpass;

namespace {

np::Polygon rect(double x0, double x1, double y0, double y1) {
  return np::Polygon{{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}};
}

np::Scene square_scene() {
  np::Scene s;
  s.name = "square";
  s.dims = 2;
  s.bounds = {{0, 100}, {0, 100}};
  s.polygons = {rect(10, 20, 10, 20)};
  s.passage = np::AlignedBox{{{40, 60}, {40, 60}}};
  return s;
}

bool pt(const np::Scene& s, std::vector<double> p) { return np::point_in_obstacle(s, p); }
bool seg(const np::Scene& s, std::vector<double> a, std::vector<double> b) {
  return np::segment_hits_scene(s, a, b);
}

TEST(PointInObstacle, Examples) {
  const auto s = square_scene();
  EXPECT_TRUE(pt(s, {15, 15}));
  EXPECT_FALSE(pt(s, {5, 5}));
  EXPECT_TRUE(pt(s, {-1, 50}));
  EXPECT_TRUE(pt(s, {10, 15}));  // boundary counts
  EXPECT_FALSE(pt(s, {0, 0}));   // on the wall line, not beyond it
  EXPECT_THROW(pt(s, {1, 2, 3}), np::ContractError);
}

TEST(SegmentHitsScene, Examples) {
  const auto s = square_scene();
  EXPECT_TRUE(seg(s, {12, 12}, {18, 18}));
  EXPECT_FALSE(seg(s, {0, 0}, {5, 5}));
  EXPECT_TRUE(seg(s, {0, 30}, {30, 0}));  // diagonal through the square
  EXPECT_FALSE(seg(s, {20, 30}, {30, 20}));
  EXPECT_TRUE(seg(s, {15, 25}, {25, 15}));  // grazes vertex (20, 20)
  EXPECT_TRUE(seg(s, {5, 5}, {-5, 5}));     // leaves the bounds
  EXPECT_TRUE(seg(s, {5, 10}, {30, 10}));   // runs along an edge
}

TEST(SegmentHitsPolygon, AgreesWithDenseSampling) {
  const np::Polygon tri{{{40, 40}, {60, 45}, {50, 60}}};
  np::Rng rng = np::make_rng(21);
  int hits = 0;
  for (int i = 0; i < 3000; ++i) {
    const np::Point2 a{100 * np::uniform01(rng), 100 * np::uniform01(rng)};
    const np::Point2 b{a.x + 30 * (np::uniform01(rng) - 0.5), a.y + 30 * (np::uniform01(rng) - 0.5)};
    bool dense = false;
    double min_clear = 1e9;
    for (int k = 0; k <= 4000; ++k) {
      const double t = k / 4000.0;
      const double x = a.x + t * (b.x - a.x), y = a.y + t * (b.y - a.y);
      dense = dense || oracle::in_convex(tri, x, y);
      for (std::size_t e = 0; e < 3; ++e) {
        const auto& p = tri.vertices[e];
        const auto& q = tri.vertices[(e + 1) % 3];
        min_clear = std::min(min_clear, oracle::segment_point_distance(p.x, p.y, q.x, q.y, x, y));
      }
    }
    const bool exact = np::segment_hits_polygon(tri, a, b);
    hits += exact;
    if (exact != dense) EXPECT_LT(min_clear, 0.02) << "segment " << i;
  }
  EXPECT_GT(hits, 50);
}

TEST(SegmentHitsBox, AgreesWithDenseSampling) {
  const np::AlignedBox box{{{4, 6}, {3, 8}, {1, 2}}};
  np::Rng rng = np::make_rng(22);
  int hits = 0;
  for (int i = 0; i < 3000; ++i) {
    std::array<double, 3> a{}, b{};
    for (int k = 0; k < 3; ++k) {
      a[k] = 10 * np::uniform01(rng);
      b[k] = 10 * np::uniform01(rng);
    }
    bool dense = false;
    double min_clear = 1e9;
    for (int s = 0; s <= 4000; ++s) {
      const double t = s / 4000.0;
      const double p[3] = {a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]),
                           a[2] + t * (b[2] - a[2])};
      dense = dense || oracle::in_box(box, p);
      min_clear = std::min(min_clear, oracle::box_surface_distance(box, p));
    }
    const bool exact = np::segment_hits_box(box, a, b);
    hits += exact;
    if (exact != dense) EXPECT_LT(min_clear, 0.02) << "segment " << i;
  }
  EXPECT_GT(hits, 50);
}

TEST(IsColliding, CountsEveryCall) {
  const auto s = square_scene();
  np::CollisionCounter c;
  const np::Robot point = np::PointRobot{};
  EXPECT_TRUE(np::is_colliding(s, point, np::Configuration({15, 15}, {}), c));
  EXPECT_EQ(c.calls(), 1u);
  const np::Robot arm = np::make_link_robot(2, 5.0);
  EXPECT_FALSE(np::is_colliding(s, arm, np::Configuration({60, 60}, {0.3, 1.2}), c));
  EXPECT_EQ(c.calls(), 2u);
  np::Rng rng = np::make_rng(1);
  const np::SpaceSpec space({{0, 100}, {0, 100}}, 0);
  for (int i = 0; i < 998; ++i) np::is_colliding(s, point, np::sample_uniform(space, rng), c);
  EXPECT_EQ(c.calls(), 1000u);
  c.reset();
  EXPECT_EQ(c.calls(), 0u);
}

TEST(IsColliding, LinkRobotBaseAndSegments) {
  const auto s = square_scene();
  np::CollisionCounter c;
  const np::Robot arm = np::make_link_robot(2, 5.0);
  // base inside the obstacle
  EXPECT_TRUE(np::is_colliding(s, arm, np::Configuration({15, 15}, {0, 0}), c));
  // chain reaching into the obstacle from the left
  EXPECT_TRUE(np::is_colliding(s, arm, np::Configuration({2, 15}, {0, 0}), c));
  // chain leaving the arena
  EXPECT_TRUE(np::is_colliding(s, arm, np::Configuration({95, 50}, {0, 0}), c));
  EXPECT_FALSE(np::is_colliding(s, arm, np::Configuration({85, 50}, {0, 0}), c));
}

TEST(IsColliding, DeterministicAndDimensionChecked) {
  const auto s = square_scene();
  np::CollisionCounter c;
  const np::Robot arm = np::make_link_robot(3, 4.0);
  const np::Configuration q({12, 25}, {4.5, 0.2, 1.0});
  const bool first = np::is_colliding(s, arm, q, c);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(np::is_colliding(s, arm, q, c), first);
  EXPECT_THROW(np::is_colliding(s, arm, np::Configuration({12, 25}, {1.0}), c),
               np::ContractError);
}

TEST(Rotation, MatchesElementaryRotations) {
  np::Rng rng = np::make_rng(31);
  for (int i = 0; i < 200; ++i) {
    const double y = 6.3 * np::uniform01(rng), p = 6.3 * np::uniform01(rng),
                 r = 6.3 * np::uniform01(rng);
    const auto m = np::rotation_from_euler(y, p, r);
    for (int k = 0; k < 3; ++k) {
      oracle::Vec3 e{};
      e[k] = 1.0;
      const auto col = oracle::rotate(y, p, r, e);
      for (int j = 0; j < 3; ++j) EXPECT_NEAR(m[j][k], col[j], 1e-12);
    }
  }
}

TEST(ObbOverlap, AgreesWithPointCloudOracle) {
  const np::AlignedBox target{{{0, 4}, {0, 3}, {0, 2}}};
  np::Rng rng = np::make_rng(32);
  int overlaps = 0;
  for (int i = 0; i < 1500; ++i) {
    np::OrientedBox obb;
    for (int k = 0; k < 3; ++k) {
      obb.center[k] = -3 + 10 * np::uniform01(rng);
      obb.half[k] = 0.2 + 1.5 * np::uniform01(rng);
    }
    const double y = 6.3 * np::uniform01(rng), p = 6.3 * np::uniform01(rng),
                 r = 6.3 * np::uniform01(rng);
    obb.axes = np::rotation_from_euler(y, p, r);
    const bool sat = np::obb_overlaps_aabb(obb, target);
    overlaps += sat;

    bool cloud = false;
    double min_clear = 1e9;
    const int n = 24;
    for (int a = 0; a <= n; ++a) {
      for (int b = 0; b <= n; ++b) {
        for (int c = 0; c <= n; ++c) {
          const oracle::Vec3 local{obb.half[0] * (2.0 * a / n - 1), obb.half[1] * (2.0 * b / n - 1),
                                   obb.half[2] * (2.0 * c / n - 1)};
          const auto w = oracle::rotate(y, p, r, local);
          const double q[3] = {obb.center[0] + w[0], obb.center[1] + w[1], obb.center[2] + w[2]};
          cloud = cloud || oracle::in_box(target, q);
          min_clear = std::min(min_clear, oracle::box_surface_distance(target, q));
        }
      }
    }
    // a cloud hit is a certificate; a miss only counts away from the surface
    if (cloud) EXPECT_TRUE(sat) << "box " << i;
    if (sat && !cloud) EXPECT_LT(min_clear, 0.25) << "box " << i;
  }
  EXPECT_GT(overlaps, 100);
}

TEST(InPassage, Examples) {
  const auto s = square_scene();
  const np::Robot point = np::PointRobot{};
  np::CollisionCounter c;
  EXPECT_TRUE(np::in_passage(s, point, np::Configuration({50, 50}, {})));
  EXPECT_FALSE(np::in_passage(s, point, np::Configuration({1, 1}, {})));
  EXPECT_EQ(c.calls(), 0u);
  auto bare = s;
  bare.passage.reset();
  EXPECT_THROW(np::in_passage(bare, point, np::Configuration({50, 50}, {})), np::ContractError);
}

TEST(InPassage, RigidBodyUsesCentroid) {
  const auto s = np::builtin("tunnel3d", 1.0);
  const np::Robot body = np::make_lshape_robot(1.0, 0.2);
  const auto c = s.passage->center();
  EXPECT_TRUE(np::in_passage(s, body, np::Configuration(c, {1.0, 0.5, 2.0})));
  const auto ref = np::reference_point(body, np::Configuration(c, {1.0, 0.5, 2.0}));
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(ref[k], c[k], 1e-12);
}

double shoelace(const np::Polygon& p) {
  double a = 0;
  for (std::size_t i = 0; i < p.vertices.size(); ++i) {
    const auto& u = p.vertices[i];
    const auto& v = p.vertices[(i + 1) % p.vertices.size()];
    a += u.x * v.y - v.x * u.y;
  }
  return 0.5 * a;
}

TEST(InPassage, UniformHitRateMatchesAreaRatio) {
  const auto s = np::builtin("bar2d", 5.0);
  double obstacle = 0;
  for (const auto& p : s.polygons) obstacle += shoelace(p);
  const double free_area = 100.0 * 100.0 - obstacle;
  const double want = s.passage->volume() / free_area;

  const np::Robot point = np::PointRobot{};
  const np::SpaceSpec space({{0, 100}, {0, 100}}, 0);
  np::Rng rng = np::make_rng(77);
  np::CollisionCounter c;
  int free_hits = 0, in = 0;
  for (int i = 0; i < 1000000; ++i) {
    const auto q = np::sample_uniform(space, rng);
    if (np::is_colliding(s, point, q, c)) continue;
    ++free_hits;
    in += np::in_passage(s, point, q);
  }
  const double rate = static_cast<double>(in) / free_hits;
  EXPECT_NEAR(rate, want, 3 * std::sqrt(want * (1 - want) / free_hits));
}

TEST(Scene, ValidationErrors) {
  auto s = square_scene();
  EXPECT_NO_THROW(s.validate());
  s.polygons.push_back(np::Polygon{{{0, 0}, {1, 0}}});
  try {
    s.validate();
    FAIL() << "expected ParameterError";
  } catch (const np::ParameterError& e) {
    EXPECT_NE(std::string(e.what()).find("polygon requires ≥3 vertices"), std::string::npos);
  }
  s = square_scene();
  s.polygons.push_back(np::Polygon{{{0, 0}, {0, 1}, {1, 0}}});  // clockwise
  EXPECT_THROW(s.validate(), np::ParameterError);
  s = square_scene();
  s.polygons.push_back(np::Polygon{{{0, 0}, {4, 0}, {1, 1}, {0, 4}}});  // dented
  EXPECT_THROW(s.validate(), np::ParameterError);
  s = square_scene();
  s.passage = np::AlignedBox{{{90, 110}, {0, 10}}};
  EXPECT_THROW(s.validate(), np::ParameterError);
}

// Raster oracle for a few configurations per builtin; the acceptance binary
// runs the full 1000.
TEST(IsColliding, AgreesWithRasterOracle) {
  np::Rng rng = np::make_rng(55);
  for (const auto& name : np::builtin_names()) {
    const auto scene = np::builtin(name, np::default_passage_width(name));
    const auto kind = *np::parse_robot(scene.dims == 2 ? "link7" : "lshape");
    for (const np::Robot& robot : {np::Robot{np::PointRobot{}}, np::make_robot(kind, scene)}) {
      const auto space = np::make_space(scene, robot);
      np::CollisionCounter c;
      for (int i = 0; i < 150; ++i) {
        const auto q = np::sample_uniform(space, rng);
        const auto v = oracle::raster_collision(scene, robot, q);
        if (np::is_colliding(scene, robot, q, c) != v.colliding) {
          EXPECT_LT(v.clearance, 0.15) << name << " config " << i;
        }
      }
    }
  }
}

}  // namespace
