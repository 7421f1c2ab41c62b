#include <benchmark/benchmark.h>

#include "narrowpass/bench.hpp"
#include "narrowpass/geometry.hpp"
#include "narrowpass/heavytail.hpp"
#include "narrowpass/samplers.hpp"
#include "narrowpass/scenes.hpp"

namespace np = narrowpass;

namespace {

void BM_PowerLaw(benchmark::State& state) {
  np::Rng rng = np::make_rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(np::sample_power_law(1.9, 1.0, rng));
}
BENCHMARK(BM_PowerLaw);

void BM_IsCollidingPoint(benchmark::State& state) {
  const auto scene = np::builtin("joint2d", 5.0);
  const np::Robot robot = np::PointRobot{};
  const auto space = np::make_space(scene, robot);
  np::Rng rng = np::make_rng(2);
  np::CollisionCounter c;
  for (auto _ : state) {
    benchmark::DoNotOptimize(np::is_colliding(scene, robot, np::sample_uniform(space, rng), c));
  }
}
BENCHMARK(BM_IsCollidingPoint);

void BM_IsCollidingLink7(benchmark::State& state) {
  const auto scene = np::builtin("bar2d", 5.0);
  const auto robot = np::make_robot(*np::parse_robot("link7"), scene);
  const auto space = np::make_space(scene, robot);
  np::Rng rng = np::make_rng(3);
  np::CollisionCounter c;
  for (auto _ : state) {
    benchmark::DoNotOptimize(np::is_colliding(scene, robot, np::sample_uniform(space, rng), c));
  }
}
BENCHMARK(BM_IsCollidingLink7);

void BM_IsCollidingLShape(benchmark::State& state) {
  const auto scene = np::builtin("maze3d", 1.0);
  const auto robot = np::make_robot(*np::parse_robot("lshape"), scene);
  const auto space = np::make_space(scene, robot);
  np::Rng rng = np::make_rng(4);
  np::CollisionCounter c;
  for (auto _ : state) {
    benchmark::DoNotOptimize(np::is_colliding(scene, robot, np::sample_uniform(space, rng), c));
  }
}
BENCHMARK(BM_IsCollidingLShape);

void BM_Sampler(benchmark::State& state) {
  const auto kind = static_cast<np::SamplerKind>(state.range(0));
  np::BenchmarkConfig cfg;
  cfg.scene = np::builtin("bar2d", 5.0);
  cfg.robot = *np::parse_robot("point");
  std::uint64_t seed = 1;
  std::uint64_t calls = 0;
  for (auto _ : state) {
    const auto t = np::run_trial(cfg, kind, 5.0, seed++);
    calls += t.metrics.gamma_c;
  }
  state.counters["gamma_c"] =
      benchmark::Counter(static_cast<double>(calls), benchmark::Counter::kAvgIterations);
  state.SetLabel(std::string(np::sampler_name(kind)));
}
BENCHMARK(BM_Sampler)->DenseRange(0, 5)->Unit(benchmark::kMicrosecond);

void BM_PlanMaze(benchmark::State& state) {
  np::PlanConfig cfg;
  cfg.scene = np::builtin("maze3d", 1.0);
  cfg.step_a = 0.5;
  cfg.sampler_defaults.heavy.x_min = 0.25;
  for (auto _ : state) {
    benchmark::DoNotOptimize(np::run_plan(cfg).result.found);
    ++cfg.seed;
  }
}
BENCHMARK(BM_PlanMaze)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
