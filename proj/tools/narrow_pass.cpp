// narrow-pass: benchmark narrow-passage samplers, plan with a PRM, and emit
// builtin scenes.
//
// Exit codes: 0 success, 1 validation error, 2 I/O error.

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "narrowpass/bench.hpp"
#include "narrowpass/error.hpp"
#include "narrowpass/format.hpp"
#include "narrowpass/scenes.hpp"

namespace np = narrowpass;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

struct SceneArgs {
  std::string name = "bar2d";
  std::string file;
  double width = 0.0;  // 0 = builtin default

  np::Scene resolve() const {
    if (!file.empty()) return np::load_scene(np::read_file(file));
    const double w = width > 0.0 ? width : np::default_passage_width(name);
    return np::builtin(name, w);
  }
};

void add_scene_options(CLI::App* cmd, SceneArgs& args) {
  cmd->add_option("--scene", args.name, "Builtin scene name")->capture_default_str();
  cmd->add_option("--scene-file", args.file, "Scene file (overrides --scene)");
  cmd->add_option("--width", args.width, "Passage width (default depends on scene)");
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    auto v = np::parse_double(item);
    if (!v) throw np::ParameterError("bad number '" + item + "' in list '" + text + "'");
    out.push_back(*v);
  }
  return out;
}

np::Configuration parse_configuration(const np::SpaceSpec& space, const std::string& text) {
  const auto v = parse_list(text);
  if (v.size() == space.trans_dims()) return np::lift_to_space(space, v);
  if (v.size() != space.dim()) {
    throw np::ParameterError("configuration '" + text + "' needs " +
                             std::to_string(space.trans_dims()) + " or " +
                             std::to_string(space.dim()) + " values");
  }
  return np::Configuration(
      std::vector<double>(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(space.trans_dims())),
      std::vector<double>(v.begin() + static_cast<std::ptrdiff_t>(space.trans_dims()), v.end()));
}

np::RobotKind robot_or_throw(const std::string& name) {
  auto r = np::parse_robot(name);
  if (!r) throw np::ParameterError("unknown robot '" + name + "' (point, link<N>, lshape)");
  return *r;
}

np::SamplerKind sampler_or_throw(const std::string& name) {
  auto s = np::parse_sampler(name);
  if (!s) throw np::ParameterError("unknown sampler '" + name + "'");
  return *s;
}

int run_bench(const SceneArgs& scene_args, const std::string& robot, const std::string& samplers,
              const std::string& steps, std::size_t k, std::size_t trials, std::uint64_t seed,
              std::size_t threads, const std::string& csv, const std::string& svg_dir,
              std::size_t max_walk, double x_min) {
  np::BenchmarkConfig cfg;
  cfg.scene = scene_args.resolve();
  cfg.robot = robot_or_throw(robot);
  cfg.samplers.clear();
  std::stringstream ss(samplers);
  for (std::string s; std::getline(ss, s, ',');) cfg.samplers.push_back(sampler_or_throw(s));
  cfg.steps = parse_list(steps);
  cfg.k_target = k;
  cfg.trials = trials;
  cfg.base_seed = seed;
  cfg.threads = threads;
  cfg.sampler_defaults.max_walk_steps = max_walk;
  cfg.sampler_defaults.heavy.x_min = x_min;
  cfg.validate();

  if (!svg_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(svg_dir, ec);
    if (ec) throw np::IoError("cannot create '" + svg_dir + "': " + ec.message());
  }

  const auto results = np::run_benchmark(cfg);
  if (csv.empty() || csv == "-") {
    np::write_csv(results, std::cout);
  } else {
    np::emit_csv(results, csv);
  }

  auto row = [](const std::vector<std::string>& cols) {
    static constexpr int kWidth[] = {8, 6, 12, 12, 10, 10, 12, 10};
    for (std::size_t i = 0; i < cols.size(); ++i) {
      std::cerr << (i == 0 ? std::left : std::right) << std::setw(kWidth[i]) << cols[i];
    }
    std::cerr << '\n';
  };
  row({"sampler", "step", "median_gc", "mean_gc", "median_q", "mean_q", "median_t_s",
       "complete"});
  for (const auto& c : results.cells) {
    row({c.sampler, np::format_fixed(c.step_a, 1), np::format_fixed(c.median_gamma_c, 1),
         np::format_fixed(c.mean_gamma_c, 1), np::format_fixed(c.median_quality, 3),
         np::format_fixed(c.mean_quality, 3), np::format_fixed(c.median_t_eps, 6),
         np::format_fixed(c.completion_rate, 3)});
  }

  if (!svg_dir.empty()) {
    const np::Robot r = np::make_robot(cfg.robot, cfg.scene);
    for (auto s : cfg.samplers) {
      for (double a : cfg.steps) {
        const auto outcome = np::run_trial(cfg, s, a, np::trial_seed(cfg.base_seed, 0));
        const auto path = (std::filesystem::path(svg_dir) /
                           (cfg.scene.name + "_" + cfg.robot.name() + "_" +
                            std::string(np::sampler_name(s)) + "_a" + np::format_double(a) +
                            ".svg"))
                              .string();
        np::SvgOptions opts;
        opts.draw_witnesses = np::is_bridge_sampler(s);
        np::emit_svg_scatter(cfg.scene, r, outcome.batch, path, opts);
      }
    }
  }
  return EXIT_SUCCESS;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Levy-flight narrow-passage sampling and PRM planning"};
  app.require_subcommand(1);

  // bench
  SceneArgs bench_scene;
  std::string bench_robot = "point", bench_samplers = "lfs,lfbs,rwbs,rbbs,gauss,rws";
  std::string bench_steps = "2,5,10,15,20", bench_csv, bench_svg;
  std::size_t bench_k = 30, bench_trials = 300, bench_threads = 1, bench_walk = 1000;
  std::uint64_t bench_seed = 1;
  double bench_xmin = 1.0;
  auto* bench = app.add_subcommand("bench", "Run seeded sampler trials and emit CSV/SVG");
  add_scene_options(bench, bench_scene);
  bench->add_option("--robot", bench_robot, "point | link<N> | lshape")->capture_default_str();
  bench->add_option("--samplers", bench_samplers, "Comma-separated sampler list")
      ->capture_default_str();
  bench->add_option("--steps", bench_steps, "Comma-separated step sizes")->capture_default_str();
  bench->add_option("--k", bench_k, "Samples requested per trial (K_c)")->capture_default_str();
  bench->add_option("--trials", bench_trials, "Trials per cell")->capture_default_str();
  bench->add_option("--seed", bench_seed, "Base seed")->capture_default_str();
  bench->add_option("--threads", bench_threads, "Worker threads")
      ->envname("NARROW_PASS_THREADS")
      ->capture_default_str();
  bench->add_option("--max-walk", bench_walk, "Step cap per walk")->capture_default_str();
  bench->add_option("--xmin", bench_xmin, "Smallest power-law step increment")
      ->capture_default_str();
  bench->add_option("--csv", bench_csv, "CSV output path (default stdout)");
  bench->add_option("--svg-dir", bench_svg, "Directory for per-cell scatter plots");

  // plan
  SceneArgs plan_scene;
  plan_scene.name = "maze3d";
  std::string plan_robot = "point", plan_bridge = "lfbs", plan_out, plan_roadmap, plan_svg;
  std::string plan_start, plan_goal;
  std::size_t plan_bridge_n = 200, plan_prm_n = 300, plan_k = 10;
  double plan_res = 0.5, plan_step = 0.5, plan_xmin = 1.0;
  std::uint64_t plan_seed = 1;
  auto* plan = app.add_subcommand("plan", "Build a PRM with bridge samples and answer a query");
  add_scene_options(plan, plan_scene);
  plan->add_option("--robot", plan_robot, "point | link<N> | lshape")->capture_default_str();
  plan->add_option("--bridge", plan_bridge, "Narrow-passage sampler")->capture_default_str();
  plan->add_option("--bridge-samples", plan_bridge_n, "Bridge samples")->capture_default_str();
  plan->add_option("--prm-samples", plan_prm_n, "Uniform roadmap nodes")->capture_default_str();
  plan->add_option("--k", plan_k, "Nearest neighbours per node")->capture_default_str();
  plan->add_option("--resolution", plan_res, "Local planner resolution")->capture_default_str();
  plan->add_option("--step", plan_step, "Sampler step size a")->capture_default_str();
  plan->add_option("--seed", plan_seed, "Seed")->capture_default_str();
  plan->add_option("--xmin", plan_xmin, "Smallest power-law step increment")
      ->capture_default_str();
  plan->add_option("--start", plan_start, "Start as comma list (workspace or full config)");
  plan->add_option("--goal", plan_goal, "Goal as comma list (workspace or full config)");
  plan->add_option("--out", plan_out, "Path output file");
  plan->add_option("--roadmap", plan_roadmap, "Roadmap output file");
  plan->add_option("--svg", plan_svg, "Scatter plot of the bridge samples");

  // scene
  std::string scene_emit, scene_check;
  double scene_width = 0.0;
  auto* scene = app.add_subcommand("scene", "Emit or validate scene files");
  auto* emit_opt = scene->add_option("--emit", scene_emit, "Builtin scene to print");
  auto* width_opt =
      scene->add_option("--width", scene_width, "Passage width (default depends on scene)");
  auto* check_opt = scene->add_option("--check", scene_check, "Scene file to validate");
  emit_opt->excludes(check_opt);
  width_opt->needs(emit_opt);
  scene->callback([emit_opt, check_opt] {
    if (emit_opt->count() + check_opt->count() != 1) {
      throw CLI::RequiredError("exactly one of --emit or --check");
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? EXIT_SUCCESS : kExitValidation;
  }

  try {
    if (bench->parsed()) {
      return run_bench(bench_scene, bench_robot, bench_samplers, bench_steps, bench_k,
                       bench_trials, bench_seed, bench_threads, bench_csv, bench_svg, bench_walk,
                       bench_xmin);
    }
    if (plan->parsed()) {
      np::PlanConfig cfg;
      cfg.scene = plan_scene.resolve();
      cfg.robot = robot_or_throw(plan_robot);
      cfg.bridge = sampler_or_throw(plan_bridge);
      cfg.bridge_samples = plan_bridge_n;
      cfg.prm_samples = plan_prm_n;
      cfg.prm.k = plan_k;
      cfg.prm.resolution = plan_res;
      cfg.step_a = plan_step;
      cfg.seed = plan_seed;
      cfg.sampler_defaults.heavy.x_min = plan_xmin;
      const np::Robot robot = np::make_robot(cfg.robot, cfg.scene);
      const np::SpaceSpec space = np::make_space(cfg.scene, robot);
      if (!plan_start.empty()) cfg.start = parse_configuration(space, plan_start);
      if (!plan_goal.empty()) cfg.goal = parse_configuration(space, plan_goal);

      const auto outcome = np::run_plan(cfg);
      const auto& r = outcome.result;
      std::cout << "scene " << cfg.scene.name << " robot " << cfg.robot.name() << " bridge "
                << np::sampler_name(cfg.bridge) << '\n'
                << "found " << (r.found ? "yes" : "no") << '\n'
                << "path_length " << np::format_double(r.path_length) << '\n'
                << "path_nodes " << r.path.size() << '\n'
                << "bridge_samples " << outcome.bridge.samples.size() << '\n'
                << "nodes " << r.stats.nodes << '\n'
                << "edges " << r.stats.edges << '\n'
                << "gamma_c_bridge " << outcome.bridge_calls << '\n'
                << "gamma_c_total " << outcome.total_calls << '\n'
                << "t_eps_s " << np::format_fixed(outcome.t_eps, 6) << '\n'
                << "build_s " << np::format_fixed(r.stats.build_seconds, 6) << '\n'
                << "query_s " << np::format_fixed(r.stats.query_seconds, 6) << '\n'
                << "t_prm_s "
                << np::format_fixed(outcome.t_eps + r.stats.build_seconds + r.stats.query_seconds, 6)
                << '\n';
      if (!plan_out.empty()) {
        std::ostringstream out;
        np::write_path(r.path, out);
        np::write_file(plan_out, out.str());
      }
      if (!plan_roadmap.empty()) np::write_file(plan_roadmap, np::serialize_roadmap(outcome.roadmap));
      if (!plan_svg.empty()) {
        np::SvgOptions opts;
        if (cfg.scene.dims == 3) opts.axis_v = 1;
        np::emit_svg_scatter(cfg.scene, robot, outcome.bridge, plan_svg, opts);
      }
      return EXIT_SUCCESS;
    }
    if (scene->parsed()) {
      if (!scene_emit.empty()) {
        const double w = scene_width > 0.0 ? scene_width : np::default_passage_width(scene_emit);
        std::cout << np::serialize_scene(np::builtin(scene_emit, w));
      } else {
        const auto s = np::load_scene(np::read_file(scene_check));
        std::cout << "ok " << s.name << " dims " << s.dims << " obstacles "
                  << (s.polygons.size() + s.boxes.size()) << '\n';
      }
      return EXIT_SUCCESS;
    }
  } catch (const np::IoError& e) {
    std::cerr << "narrow-pass: I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "narrow-pass: " << e.what() << '\n';
    return kExitValidation;
  }
  return EXIT_SUCCESS;
}
