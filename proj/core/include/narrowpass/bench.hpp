#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "narrowpass/geometry.hpp"
#include "narrowpass/prm.hpp"
#include "narrowpass/samplers.hpp"

namespace narrowpass {

// "point", "lshape", or "link<N>" (e.g. link7).
struct RobotKind {
  enum class Family { kPoint, kLinks, kLShape } family = Family::kPoint;
  std::size_t links = 0;

  std::string name() const;
  friend bool operator==(const RobotKind&, const RobotKind&) = default;
};

std::optional<RobotKind> parse_robot(std::string_view name);

// Robot sized to the scene: links of 2% of the largest bound extent; an
// L-shape with arms of 10% and thickness of 2%.
Robot make_robot(const RobotKind& kind, const Scene& scene);

// Translation bounds from the scene, angular block from the robot,
// angle_weight 1.
SpaceSpec make_space(const Scene& scene, const Robot& robot);

struct TrialMetrics {
  std::uint64_t gamma_c = 0;  // collision queries
  double t_eps = 0.0;         // wall-clock seconds, microsecond resolution
  double quality = 0.0;       // fraction of samples inside the passage region
  std::size_t samples_returned = 0;
  bool complete = false;
};

struct BenchmarkConfig {
  Scene scene;
  RobotKind robot;
  std::vector<SamplerKind> samplers;
  std::vector<double> steps{2, 5, 10, 15, 20};
  std::size_t k_target = 30;
  std::size_t trials = 300;
  std::uint64_t base_seed = 1;
  std::size_t threads = 1;
  SamplerConfig sampler_defaults{};  // step_a and k_target are overridden

  // Throws ParameterError / ContractError before any trial runs.
  void validate() const;
};

struct TrialOutcome {
  TrialMetrics metrics;
  SampleBatch batch;
};

// Seed of trial `index`: base_seed + index (the RNG applies splitmix64).
std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t index) noexcept;

// Fresh scene copy, counter and RNG; deterministic except for t_eps.
TrialOutcome run_trial(const BenchmarkConfig& cfg, SamplerKind sampler,
                       double step_a, std::uint64_t seed);

struct TrialRecord {
  std::string scene;
  std::string robot;
  std::string sampler;
  double step_a = 0.0;
  std::uint64_t seed = 0;
  TrialMetrics metrics;
};

struct CellSummary {
  std::string scene;
  std::string robot;
  std::string sampler;
  double step_a = 0.0;
  std::size_t trials = 0;
  double median_gamma_c = 0.0;
  double mean_gamma_c = 0.0;
  double median_t_eps = 0.0;
  double mean_t_eps = 0.0;
  double median_quality = 0.0;
  double mean_quality = 0.0;
  double median_samples = 0.0;
  double completion_rate = 0.0;
};

struct BenchmarkResults {
  std::vector<TrialRecord> trials;  // cell-major, then trial index
  std::vector<CellSummary> cells;   // in order of first appearance
};

// Groups records by (scene, robot, sampler, step_a); independent of record
// order within a group.
std::vector<CellSummary> aggregate(const std::vector<TrialRecord>& trials);

// Runs samplers x steps x trials on cfg.threads workers (each trial owns its
// RNG and counter). Results do not depend on the thread count.
BenchmarkResults run_benchmark(const BenchmarkConfig& cfg);

inline constexpr std::string_view kCsvHeader =
    "scene,robot,sampler,step_a,seed,gamma_c,t_eps_s,quality,samples,complete";

// One raw row per trial, then one AGG row per cell:
//   scene,robot,sampler,step_a,AGG,<median gamma_c>,<median t_eps>,
//   <median quality>,<median samples>,<completion rate>
void write_csv(const BenchmarkResults& results, std::ostream& out);
// Throws IoError naming the path.
void emit_csv(const BenchmarkResults& results, const std::string& path);

struct ParsedCsv {
  std::vector<TrialRecord> trials;
  std::vector<std::string> agg_rows;  // verbatim
};
ParsedCsv parse_csv(std::string_view text);
std::string format_agg_row(const CellSummary& cell);

// Scene-to-viewport map: scale = 500 / max(extent_u, extent_v),
// px = 20 + (u - lo_u) * scale, py = 20 + (hi_v - v) * scale.
struct SvgTransform {
  double lo_u = 0.0, hi_v = 0.0, scale = 1.0;
  double width = 0.0, height = 0.0;
  static constexpr double kMargin = 20.0;
  static constexpr double kDrawable = 500.0;

  static SvgTransform for_scene(const Scene& scene, std::size_t axis_u,
                                std::size_t axis_v);
  double px(double u) const noexcept { return kMargin + (u - lo_u) * scale; }
  double py(double v) const noexcept { return kMargin + (hi_v - v) * scale; }
};

struct SvgOptions {
  std::size_t axis_u = 0;  // projection plane for 3D scenes
  std::size_t axis_v = 1;
  bool draw_witnesses = false;
};

std::string render_svg_scatter(const Scene& scene, const Robot& robot,
                               const SampleBatch& batch, const SvgOptions& opts = {});
void emit_svg_scatter(const Scene& scene, const Robot& robot,
                      const SampleBatch& batch, const std::string& path,
                      const SvgOptions& opts = {});

// Bridge sampling + roadmap construction + one query.
struct PlanConfig {
  Scene scene;
  RobotKind robot;
  SamplerKind bridge = SamplerKind::kLfbs;
  std::size_t bridge_samples = 200;
  std::size_t prm_samples = 300;
  double step_a = 0.5;
  PrmParams prm{};
  SamplerConfig sampler_defaults{};
  std::uint64_t seed = 1;
  std::optional<Configuration> start;  // defaults from the builtin query
  std::optional<Configuration> goal;
};

struct PlanOutcome {
  SampleBatch bridge;
  Roadmap roadmap;
  PlanResult result;
  double t_eps = 0.0;  // bridge sampling seconds
  std::uint64_t bridge_calls = 0;
  std::uint64_t total_calls = 0;
};

// Bridge sampling and roadmap use separate streams derived from cfg.seed, so
// runs that differ only in the bridge sampler share their uniform nodes.
PlanOutcome run_plan(const PlanConfig& cfg);

// Workspace start/goal padded with zero angles for the robot's space.
Configuration lift_to_space(const SpaceSpec& space, const std::vector<double>& position);

void write_path(const std::vector<Configuration>& path, std::ostream& out);

// Reads a whole file; throws IoError naming the path.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace narrowpass
