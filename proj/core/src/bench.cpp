#include "narrowpass/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

#include "narrowpass/error.hpp"
#include "narrowpass/format.hpp"
#include "narrowpass/scenes.hpp"

namespace narrowpass {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_micro_rounded(Clock::time_point t0) {
  const double s = std::chrono::duration<double>(Clock::now() - t0).count();
  return std::round(s * 1e6) / 1e6;
}

double max_extent(const Scene& scene) {
  double m = 0.0;
  for (const auto& b : scene.bounds) m = std::max(m, b.extent());
  return m;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  // Sorted summation keeps the mean independent of record order.
  std::vector<double> s(v);
  std::sort(s.begin(), s.end());
  double acc = 0.0;
  for (double x : s) acc += x;
  return acc / static_cast<double>(s.size());
}

std::vector<std::string> split_commas(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    out.emplace_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

std::string RobotKind::name() const {
  switch (family) {
    case Family::kPoint: return "point";
    case Family::kLShape: return "lshape";
    case Family::kLinks: return "link" + std::to_string(links);
  }
  return "?";
}

std::optional<RobotKind> parse_robot(std::string_view name) {
  if (name == "point") return RobotKind{RobotKind::Family::kPoint, 0};
  if (name == "lshape") return RobotKind{RobotKind::Family::kLShape, 0};
  if (name.starts_with("link") && name.size() > 4) {
    std::size_t n = 0;
    for (char c : name.substr(4)) {
      if (c < '0' || c > '9') return std::nullopt;
      n = n * 10 + static_cast<std::size_t>(c - '0');
      if (n > 64) return std::nullopt;
    }
    if (n == 0) return std::nullopt;
    return RobotKind{RobotKind::Family::kLinks, n};
  }
  return std::nullopt;
}

Robot make_robot(const RobotKind& kind, const Scene& scene) {
  const double size = max_extent(scene);
  switch (kind.family) {
    case RobotKind::Family::kPoint: return PointRobot{};
    case RobotKind::Family::kLinks:
      if (scene.dims != 2) throw ContractError("link robots need a 2D scene");
      return make_link_robot(kind.links, 0.02 * size);
    case RobotKind::Family::kLShape:
      if (scene.dims != 3) throw ContractError("the L-shape robot needs a 3D scene");
      return make_lshape_robot(0.1 * size, 0.02 * size);
  }
  throw ContractError("unknown robot kind");
}

SpaceSpec make_space(const Scene& scene, const Robot& robot) {
  std::size_t angles = 0;
  if (const auto* link = std::get_if<PlanarLinkRobot>(&robot)) angles = link->link_lengths.size();
  if (std::holds_alternative<RigidBodyRobot3D>(robot)) angles = 3;
  SpaceSpec space(scene.bounds, angles, 1.0);
  validate_robot(robot, space);
  return space;
}

void BenchmarkConfig::validate() const {
  scene.validate();
  if (!scene.passage) throw ParameterError("benchmark scene must declare a passage");
  if (samplers.empty()) throw ParameterError("at least one sampler is required");
  if (steps.empty()) throw ParameterError("at least one step size is required");
  for (double s : steps) {
    if (!(s > 0.0)) throw ParameterError("step sizes must be > 0");
  }
  if (k_target < 1) throw ParameterError("k_target must be >= 1");
  if (trials < 1) throw ParameterError("trials must be >= 1");
  if (threads < 1) throw ParameterError("threads must be >= 1");
  const Robot r = make_robot(robot, scene);
  make_space(scene, r);
  SamplerConfig probe = sampler_defaults;
  probe.step_a = steps.front();
  probe.k_target = k_target;
  probe.validate();
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t index) noexcept {
  return base_seed + static_cast<std::uint64_t>(index);
}

TrialOutcome run_trial(const BenchmarkConfig& cfg, SamplerKind sampler,
                       double step_a, std::uint64_t seed) {
  const Scene scene = cfg.scene;
  const Robot robot = make_robot(cfg.robot, scene);
  const SpaceSpec space = make_space(scene, robot);
  SamplerConfig sc = cfg.sampler_defaults;
  sc.step_a = step_a;
  sc.k_target = cfg.k_target;

  CollisionCounter counter;
  Rng rng = make_rng(seed);
  const auto t0 = Clock::now();
  TrialOutcome out;
  try {
    out.batch = run_sampler(sampler, {scene, robot, space}, sc, rng, counter);
  } catch (const std::runtime_error&) {
    // Counted as an incomplete trial; the sweep goes on.
    out.batch = SampleBatch{};
    out.batch.kind = sampler;
  }
  out.metrics.t_eps = elapsed_micro_rounded(t0);
  out.metrics.gamma_c = counter.calls();
  out.metrics.samples_returned = out.batch.samples.size();
  out.metrics.complete = out.batch.complete;
  if (!out.batch.samples.empty()) {
    std::size_t inside = 0;
    for (const auto& q : out.batch.samples) inside += in_passage(scene, robot, q) ? 1 : 0;
    out.metrics.quality =
        static_cast<double>(inside) / static_cast<double>(out.batch.samples.size());
  }
  return out;
}

std::vector<CellSummary> aggregate(const std::vector<TrialRecord>& trials) {
  using Key = std::tuple<std::string, std::string, std::string, double>;
  std::vector<Key> order;
  std::map<Key, std::vector<const TrialRecord*>> groups;
  for (const auto& t : trials) {
    Key key{t.scene, t.robot, t.sampler, t.step_a};
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(&t);
  }
  std::vector<CellSummary> out;
  for (const auto& key : order) {
    const auto& rows = groups[key];
    std::vector<double> gamma, teps, quality, samples;
    std::size_t complete = 0;
    for (const auto* r : rows) {
      gamma.push_back(static_cast<double>(r->metrics.gamma_c));
      teps.push_back(r->metrics.t_eps);
      quality.push_back(r->metrics.quality);
      samples.push_back(static_cast<double>(r->metrics.samples_returned));
      complete += r->metrics.complete ? 1 : 0;
    }
    CellSummary c;
    std::tie(c.scene, c.robot, c.sampler, c.step_a) = key;
    c.trials = rows.size();
    c.median_gamma_c = median(gamma);
    c.mean_gamma_c = mean(gamma);
    c.median_t_eps = median(teps);
    c.mean_t_eps = mean(teps);
    c.median_quality = median(quality);
    c.mean_quality = mean(quality);
    c.median_samples = median(samples);
    c.completion_rate = static_cast<double>(complete) / static_cast<double>(rows.size());
    out.push_back(c);
  }
  return out;
}

BenchmarkResults run_benchmark(const BenchmarkConfig& cfg) {
  cfg.validate();
  struct Task {
    SamplerKind sampler;
    double step;
    std::size_t trial;
  };
  std::vector<Task> tasks;
  for (auto s : cfg.samplers) {
    for (double a : cfg.steps) {
      for (std::size_t t = 0; t < cfg.trials; ++t) tasks.push_back({s, a, t});
    }
  }

  BenchmarkResults results;
  results.trials.resize(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1)) {
      const auto& task = tasks[i];
      const auto seed = trial_seed(cfg.base_seed, task.trial);
      auto outcome = run_trial(cfg, task.sampler, task.step, seed);
      results.trials[i] = TrialRecord{cfg.scene.name, cfg.robot.name(),
                                      std::string(sampler_name(task.sampler)),
                                      task.step, seed, outcome.metrics};
    }
  };
  const std::size_t n_threads = std::min(cfg.threads, std::max<std::size_t>(tasks.size(), 1));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  }
  results.cells = aggregate(results.trials);
  return results;
}

std::string format_agg_row(const CellSummary& c) {
  std::string row = c.scene + ',' + c.robot + ',' + c.sampler + ',' + format_double(c.step_a) +
                    ",AGG," + format_double(c.median_gamma_c) + ',' +
                    format_fixed(c.median_t_eps, 6) + ',' + format_double(c.median_quality) +
                    ',' + format_double(c.median_samples) + ',' +
                    format_double(c.completion_rate);
  return row;
}

void write_csv(const BenchmarkResults& results, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& t : results.trials) {
    out << t.scene << ',' << t.robot << ',' << t.sampler << ',' << format_double(t.step_a) << ','
        << t.seed << ',' << t.metrics.gamma_c << ',' << format_fixed(t.metrics.t_eps, 6) << ','
        << format_double(t.metrics.quality) << ',' << t.metrics.samples_returned << ','
        << (t.metrics.complete ? 1 : 0) << '\n';
  }
  for (const auto& c : results.cells) out << format_agg_row(c) << '\n';
}

void emit_csv(const BenchmarkResults& results, const std::string& path) {
  std::ostringstream out;
  write_csv(results, out);
  write_file(path, out.str());
}

ParsedCsv parse_csv(std::string_view text) {
  ParsedCsv parsed;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line != kCsvHeader) throw ParseError(1, 1, "unexpected CSV header");
      continue;
    }
    const auto f = split_commas(line);
    if (f.size() != 10) throw ParseError(line_no, 1, "expected 10 fields");
    if (f[4] == "AGG") {
      parsed.agg_rows.emplace_back(line);
      continue;
    }
    auto num = [&](const std::string& s) {
      auto v = parse_double(s);
      if (!v) throw ParseError(line_no, 1, "bad number '" + s + "'");
      return *v;
    };
    TrialRecord r;
    r.scene = f[0];
    r.robot = f[1];
    r.sampler = f[2];
    r.step_a = num(f[3]);
    r.seed = static_cast<std::uint64_t>(std::stoull(f[4]));
    r.metrics.gamma_c = static_cast<std::uint64_t>(std::stoull(f[5]));
    r.metrics.t_eps = num(f[6]);
    r.metrics.quality = num(f[7]);
    r.metrics.samples_returned = static_cast<std::size_t>(std::stoull(f[8]));
    r.metrics.complete = f[9] == "1";
    parsed.trials.push_back(std::move(r));
  }
  return parsed;
}

SvgTransform SvgTransform::for_scene(const Scene& scene, std::size_t axis_u,
                                     std::size_t axis_v) {
  if (axis_u >= scene.dims || axis_v >= scene.dims || axis_u == axis_v) {
    throw ContractError("invalid projection plane for this scene");
  }
  const auto& bu = scene.bounds[axis_u];
  const auto& bv = scene.bounds[axis_v];
  SvgTransform t;
  t.lo_u = bu.lo;
  t.hi_v = bv.hi;
  t.scale = kDrawable / std::max(bu.extent(), bv.extent());
  t.width = 2 * kMargin + bu.extent() * t.scale;
  t.height = 2 * kMargin + bv.extent() * t.scale;
  return t;
}

std::string render_svg_scatter(const Scene& scene, const Robot& robot,
                               const SampleBatch& batch, const SvgOptions& opts) {
  const auto tf = SvgTransform::for_scene(scene, opts.axis_u, opts.axis_v);
  const std::size_t u = opts.axis_u;
  const std::size_t v = opts.axis_v;
  auto f = [](double x) { return format_fixed(x, 3); };
  auto rect = [&](const AlignedBox& b, std::string_view style) {
    const double x0 = tf.px(b.axes[u].lo);
    const double y0 = tf.py(b.axes[v].hi);
    return "<rect x=\"" + f(x0) + "\" y=\"" + f(y0) + "\" width=\"" +
           f(b.axes[u].extent() * tf.scale) + "\" height=\"" +
           f(b.axes[v].extent() * tf.scale) + "\" " + std::string(style) + "/>\n";
  };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f(tf.width) << "\" height=\""
      << f(tf.height) << "\" viewBox=\"0 0 " << f(tf.width) << ' ' << f(tf.height) << "\">\n";
  out << "<title>" << scene.name << " " << sampler_name(batch.kind) << " ("
      << batch.samples.size() << " samples)</title>\n";
  out << rect(scene.bounds_box(), "fill=\"white\" stroke=\"black\" stroke-width=\"1\"");
  out << "<g id=\"obstacles\" fill=\"#808080\">\n";
  for (const auto& poly : scene.polygons) {
    out << "<polygon points=\"";
    for (std::size_t i = 0; i < poly.vertices.size(); ++i) {
      const double xy[2] = {poly.vertices[i].x, poly.vertices[i].y};
      out << (i ? " " : "") << f(tf.px(xy[u])) << ',' << f(tf.py(xy[v]));
    }
    out << "\"/>\n";
  }
  for (const auto& b : scene.boxes) out << rect(b, "fill-opacity=\"0.5\"");
  out << "</g>\n";
  if (scene.passage) {
    out << rect(*scene.passage,
                "id=\"passage\" fill=\"none\" stroke=\"#d04000\" stroke-width=\"1.5\" "
                "stroke-dasharray=\"4 2\"");
  }
  if (opts.draw_witnesses) {
    out << "<g id=\"witnesses\" stroke=\"#4060c0\" stroke-width=\"0.5\">\n";
    for (const auto& w : batch.witnesses) {
      const auto a = reference_point(robot, w.first);
      const auto b = reference_point(robot, w.second);
      out << "<line x1=\"" << f(tf.px(a[u])) << "\" y1=\"" << f(tf.py(a[v])) << "\" x2=\""
          << f(tf.px(b[u])) << "\" y2=\"" << f(tf.py(b[v])) << "\"/>\n";
    }
    out << "</g>\n";
  }
  out << "<g id=\"samples\" fill=\"#c00000\">\n";
  for (const auto& q : batch.samples) {
    const auto p = reference_point(robot, q);
    out << "<circle cx=\"" << f(tf.px(p[u])) << "\" cy=\"" << f(tf.py(p[v]))
        << "\" r=\"2\"/>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

void emit_svg_scatter(const Scene& scene, const Robot& robot, const SampleBatch& batch,
                      const std::string& path, const SvgOptions& opts) {
  write_file(path, render_svg_scatter(scene, robot, batch, opts));
}

Configuration lift_to_space(const SpaceSpec& space, const std::vector<double>& position) {
  if (position.size() != space.trans_dims()) {
    throw ParameterError("position has " + std::to_string(position.size()) +
                        " coordinates, space expects " + std::to_string(space.trans_dims()));
  }
  return Configuration(position, std::vector<double>(space.angle_dims(), 0.0));
}

PlanOutcome run_plan(const PlanConfig& cfg) {
  cfg.scene.validate();
  cfg.prm.validate();
  const Robot robot = make_robot(cfg.robot, cfg.scene);
  const SpaceSpec space = make_space(cfg.scene, robot);
  const SamplingProblem problem{cfg.scene, robot, space};

  Configuration start, goal;
  if (cfg.start && cfg.goal) {
    start = *cfg.start;
    goal = *cfg.goal;
  } else {
    const auto q = default_query(cfg.scene.name);
    start = cfg.start ? *cfg.start : lift_to_space(space, q.start);
    goal = cfg.goal ? *cfg.goal : lift_to_space(space, q.goal);
  }
  space.check(start);
  space.check(goal);

  SamplerConfig sc = cfg.sampler_defaults;
  sc.step_a = cfg.step_a;
  sc.k_target = cfg.bridge_samples;

  CollisionCounter counter;
  Rng bridge_rng = make_rng(cfg.seed);
  Rng prm_rng = make_rng(splitmix64(cfg.seed) ^ 0x5052'4d00ULL);

  const auto t0 = Clock::now();
  SampleBatch batch;
  batch.kind = cfg.bridge;
  if (cfg.bridge_samples > 0) batch = run_sampler(cfg.bridge, problem, sc, bridge_rng, counter);
  const double t_eps = elapsed_micro_rounded(t0);
  const auto bridge_calls = counter.calls();

  const auto t1 = Clock::now();
  Roadmap roadmap = build_roadmap(problem, cfg.prm_samples, batch, cfg.prm, prm_rng, counter);
  const double build_s = elapsed_micro_rounded(t1);

  PlanResult result = query(roadmap, start, goal, problem, cfg.prm, counter);
  result.stats.build_seconds = build_s;
  result.stats.collision_calls = counter.calls();
  return PlanOutcome{std::move(batch), std::move(roadmap), std::move(result), t_eps,
                     bridge_calls, counter.calls()};
}

void write_path(const std::vector<Configuration>& path, std::ostream& out) {
  out << "# narrow-pass path: one configuration per line, trans then angles\n";
  for (const auto& q : path) {
    bool first = true;
    for (double v : q.trans()) {
      out << (first ? "" : " ") << format_double(v);
      first = false;
    }
    for (double v : q.angles()) out << ' ' << format_double(v);
    out << '\n';
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path + "'");
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw IoError("error while writing '" + path + "'");
}

}  // namespace narrowpass
