#include "narrowpass/prm.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>
#include <unordered_set>

#include "narrowpass/error.hpp"
#include "narrowpass/format.hpp"

namespace narrowpass {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::uint64_t pair_key(std::size_t a, std::size_t b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
}

// Indices of the k nearest entries of `pool` to q, nearest first, ties broken
// by index.
std::vector<std::size_t> k_nearest(const SpaceSpec& space,
                                   const std::vector<Configuration>& pool,
                                   const Configuration& q, std::size_t k,
                                   std::size_t skip = std::numeric_limits<std::size_t>::max()) {
  std::vector<std::pair<double, std::size_t>> d;
  d.reserve(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (i == skip) continue;
    d.emplace_back(distance(space, pool[i], q), i);
  }
  const std::size_t m = std::min(k, d.size());
  std::partial_sort(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(m), d.end());
  std::vector<std::size_t> out(m);
  for (std::size_t i = 0; i < m; ++i) out[i] = d[i].second;
  return out;
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

std::size_t Roadmap::add_node(Configuration q, std::string origin) {
  space_.check(q);
  nodes_.push_back(std::move(q));
  origins_.push_back(std::move(origin));
  adjacency_.emplace_back();
  return nodes_.size() - 1;
}

bool Roadmap::has_edge(std::size_t a, std::size_t b) const {
  for (std::size_t e : adjacency_.at(a)) {
    if ((edges_[e].a == a && edges_[e].b == b) ||
        (edges_[e].a == b && edges_[e].b == a)) {
      return true;
    }
  }
  return false;
}

bool Roadmap::add_edge(std::size_t a, std::size_t b) {
  return add_edge(a, b, distance(space_, nodes_.at(a), nodes_.at(b)));
}

bool Roadmap::add_edge(std::size_t a, std::size_t b, double length) {
  if (a >= nodes_.size() || b >= nodes_.size()) {
    throw ContractError("edge endpoint out of range");
  }
  if (a == b || has_edge(a, b)) return false;
  const double d = distance(space_, nodes_[a], nodes_[b]);
  if (!(std::abs(d - length) <= 1e-9)) {
    throw ContractError("edge length disagrees with the metric distance");
  }
  edges_.push_back({a, b, length});
  adjacency_[a].push_back(edges_.size() - 1);
  adjacency_[b].push_back(edges_.size() - 1);
  return true;
}

std::vector<std::size_t> Roadmap::components() const {
  UnionFind uf(nodes_.size());
  for (const auto& e : edges_) uf.unite(e.a, e.b);
  std::vector<std::size_t> label(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) label[i] = uf.find(i);
  return label;
}

void PrmParams::validate() const {
  if (k < 1) throw ParameterError("k must be >= 1");
  if (!(resolution > 0.0)) throw ParameterError("resolution must be > 0");
  if (uniform_attempts_per_node < 1) {
    throw ParameterError("uniform_attempts_per_node must be >= 1");
  }
}

bool local_path_valid(const SamplingProblem& p, const Configuration& q1,
                      const Configuration& q2, double resolution,
                      CollisionCounter& counter) {
  if (!(resolution > 0.0)) throw ParameterError("resolution must be > 0");
  const double d = distance(p.space, q1, q2);
  const auto n = static_cast<std::size_t>(std::ceil(d / resolution));
  for (std::size_t i = 0; i <= n; ++i) {
    const double t = n == 0 ? 0.0 : static_cast<double>(i) / static_cast<double>(n);
    if (is_colliding(p.scene, p.robot, interpolate(p.space, q1, q2, t), counter)) {
      return false;
    }
  }
  return true;
}

Roadmap build_roadmap(const SamplingProblem& p, std::size_t n_uniform,
                      const SampleBatch& bridge, const PrmParams& params,
                      Rng& rng, CollisionCounter& counter) {
  params.validate();
  validate_robot(p.robot, p.space);
  Roadmap roadmap(p.space);

  const std::size_t budget = params.uniform_attempts_per_node * std::max<std::size_t>(n_uniform, 1);
  std::size_t attempts = 0;
  while (roadmap.node_count() < n_uniform) {
    if (attempts++ >= budget) {
      throw BudgetError("uniform node budget exhausted after " +
                            std::to_string(roadmap.node_count()) + " of " +
                            std::to_string(n_uniform) + " nodes",
                        roadmap.node_count());
    }
    Configuration q = sample_uniform(p.space, rng);
    if (!is_colliding(p.scene, p.robot, q, counter)) roadmap.add_node(std::move(q), "uniform");
  }
  const std::string bridge_origin(sampler_name(bridge.kind));
  for (const auto& q : bridge.samples) roadmap.add_node(q, bridge_origin);

  std::vector<Configuration> nodes;
  nodes.reserve(roadmap.node_count());
  for (std::size_t i = 0; i < roadmap.node_count(); ++i) nodes.push_back(roadmap.node(i));

  std::unordered_set<std::uint64_t> tried;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j : k_nearest(p.space, nodes, nodes[i], params.k, i)) {
      if (!tried.insert(pair_key(i, j)).second) continue;
      if (local_path_valid(p, nodes[i], nodes[j], params.resolution, counter)) {
        roadmap.add_edge(i, j);
      }
    }
  }
  return roadmap;
}

PlanResult query(const Roadmap& roadmap, const Configuration& start,
                 const Configuration& goal, const SamplingProblem& p,
                 const PrmParams& params, CollisionCounter& counter) {
  params.validate();
  const auto t0 = Clock::now();
  const auto calls_before = counter.calls();
  if (is_colliding(p.scene, p.robot, start, counter)) {
    throw ContractError("query start configuration is in collision");
  }
  if (is_colliding(p.scene, p.robot, goal, counter)) {
    throw ContractError("query goal configuration is in collision");
  }

  PlanResult result;
  result.stats.nodes = roadmap.node_count();
  result.stats.edges = roadmap.edge_count();

  if (distance(p.space, start, goal) == 0.0) {
    result.found = true;
    result.path = {start};
  } else {
    // Search graph: roadmap nodes, then start (n) and goal (n + 1).
    const std::size_t n = roadmap.node_count();
    const std::size_t s_id = n;
    const std::size_t g_id = n + 1;
    std::vector<Configuration> nodes;
    nodes.reserve(n + 2);
    for (std::size_t i = 0; i < n; ++i) nodes.push_back(roadmap.node(i));
    nodes.push_back(start);
    nodes.push_back(goal);

    std::vector<std::vector<std::pair<std::size_t, double>>> extra(n + 2);
    auto link = [&](std::size_t a, std::size_t b) {
      const double len = distance(p.space, nodes[a], nodes[b]);
      extra[a].emplace_back(b, len);
      extra[b].emplace_back(a, len);
    };
    std::vector<Configuration> start_pool(nodes.begin(), nodes.begin() + static_cast<std::ptrdiff_t>(n));
    start_pool.push_back(goal);
    for (std::size_t j : k_nearest(p.space, start_pool, start, params.k)) {
      const std::size_t target = j == n ? g_id : j;
      if (local_path_valid(p, start, nodes[target], params.resolution, counter)) link(s_id, target);
    }
    std::vector<Configuration> goal_pool(nodes.begin(), nodes.begin() + static_cast<std::ptrdiff_t>(n));
    for (std::size_t j : k_nearest(p.space, goal_pool, goal, params.k)) {
      if (local_path_valid(p, goal, nodes[j], params.resolution, counter)) link(g_id, j);
    }

    // Edges on a found path are re-checked at half resolution; an edge that
    // fails is dropped and the search repeats.
    std::unordered_set<std::uint64_t> banned, confirmed;
    std::vector<double> dist(n + 2);
    std::vector<std::size_t> prev(n + 2);
    using Item = std::pair<double, std::size_t>;
    for (;;) {
      std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
      std::fill(prev.begin(), prev.end(), std::numeric_limits<std::size_t>::max());
      std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
      dist[s_id] = 0.0;
      open.emplace(0.0, s_id);
      auto relax = [&](std::size_t u, std::size_t v, double w) {
        if (dist[u] + w < dist[v] && !banned.count(pair_key(u, v))) {
          dist[v] = dist[u] + w;
          prev[v] = u;
          open.emplace(dist[v], v);
        }
      };
      while (!open.empty()) {
        const auto [du, u] = open.top();
        open.pop();
        if (du > dist[u]) continue;
        if (u == g_id) break;
        if (u < n) {
          for (std::size_t e : roadmap.incident(u)) {
            const auto& edge = roadmap.edges()[e];
            relax(u, edge.a == u ? edge.b : edge.a, edge.length);
          }
        }
        for (const auto& [v, w] : extra[u]) relax(u, v, w);
      }
      if (!std::isfinite(dist[g_id])) break;

      std::vector<std::size_t> ids;
      for (std::size_t v = g_id; v != s_id; v = prev[v]) ids.push_back(v);
      ids.push_back(s_id);
      std::reverse(ids.begin(), ids.end());
      bool clean = true;
      for (std::size_t i = 0; i + 1 < ids.size(); ++i) {
        const auto key = pair_key(ids[i], ids[i + 1]);
        if (confirmed.count(key)) continue;
        if (!local_path_valid(p, nodes[ids[i]], nodes[ids[i + 1]], params.resolution / 2,
                              counter)) {
          banned.insert(key);
          clean = false;
          break;
        }
        confirmed.insert(key);
      }
      if (!clean) continue;
      result.found = true;
      result.path_length = dist[g_id];
      for (std::size_t id : ids) result.path.push_back(nodes[id]);
      break;
    }
  }
  result.stats.collision_calls = counter.calls() - calls_before;
  result.stats.query_seconds = seconds_since(t0);
  return result;
}

std::string serialize_roadmap(const Roadmap& roadmap) {
  const auto& space = roadmap.space();
  std::ostringstream out;
  out << "# narrow-pass roadmap v1\n";
  out << "# space <trans_dims> <angle_dims> <angle_weight> <lo hi per trans axis>\n";
  out << "# node <id> <origin> <trans...> <angles...>\n";
  out << "# edge <id1> <id2> <length>\n";
  out << "space " << space.trans_dims() << ' ' << space.angle_dims() << ' '
      << format_double(space.angle_weight());
  for (const auto& b : space.trans_bounds()) {
    out << ' ' << format_double(b.lo) << ' ' << format_double(b.hi);
  }
  out << '\n';
  for (std::size_t i = 0; i < roadmap.node_count(); ++i) {
    out << "node " << i << ' ' << roadmap.origin(i);
    for (double v : roadmap.node(i).trans()) out << ' ' << format_double(v);
    for (double v : roadmap.node(i).angles()) out << ' ' << format_double(v);
    out << '\n';
  }
  for (const auto& e : roadmap.edges()) {
    out << "edge " << e.a << ' ' << e.b << ' ' << format_double(e.length) << '\n';
  }
  return out.str();
}

Roadmap load_roadmap(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  std::optional<Roadmap> roadmap;

  auto fail = [&](const std::string& what) -> ParseError {
    return ParseError(line_no, 1, what);
  };
  auto number = [&](const std::string& tok) {
    auto v = parse_double(tok);
    if (!v) throw fail("expected a number, got '" + tok + "'");
    return *v;
  };
  auto index = [&](const std::string& tok) -> std::size_t {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(tok, &used);
      if (used != tok.size()) throw fail("bad index '" + tok + "'");
      return static_cast<std::size_t>(v);
    } catch (const std::logic_error&) {
      throw fail("bad index '" + tok + "'");
    }
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;

    if (tok[0] == "space") {
      if (roadmap) throw fail("duplicate 'space' line");
      if (tok.size() < 4) throw fail("'space' line is too short");
      const std::size_t nt = index(tok[1]);
      const std::size_t na = index(tok[2]);
      if (tok.size() != 4 + 2 * nt) throw fail("'space' needs lo hi per translation axis");
      std::vector<Interval> bounds;
      for (std::size_t i = 0; i < nt; ++i) {
        bounds.push_back({number(tok[4 + 2 * i]), number(tok[5 + 2 * i])});
      }
      try {
        roadmap.emplace(SpaceSpec(std::move(bounds), na, number(tok[3])));
      } catch (const ParameterError& e) {
        throw fail(e.what());
      }
    } else if (tok[0] == "node") {
      if (!roadmap) throw fail("'node' before 'space'");
      const auto& sp = roadmap->space();
      if (tok.size() != 3 + sp.dim()) throw fail("'node' has the wrong number of values");
      if (index(tok[1]) != roadmap->node_count()) throw fail("node ids must be consecutive from 0");
      std::vector<double> trans, angles;
      for (std::size_t i = 0; i < sp.trans_dims(); ++i) trans.push_back(number(tok[3 + i]));
      for (std::size_t i = 0; i < sp.angle_dims(); ++i) {
        angles.push_back(number(tok[3 + sp.trans_dims() + i]));
      }
      roadmap->add_node(Configuration(std::move(trans), std::move(angles)), tok[2]);
    } else if (tok[0] == "edge") {
      if (!roadmap) throw fail("'edge' before 'space'");
      if (tok.size() != 4) throw fail("'edge' takes <id1> <id2> <length>");
      try {
        if (!roadmap->add_edge(index(tok[1]), index(tok[2]), number(tok[3]))) {
          throw fail("duplicate or self-loop edge");
        }
      } catch (const ContractError& e) {
        throw fail(e.what());
      }
    } else {
      throw fail("unknown record '" + tok[0] + "'");
    }
  }
  if (!roadmap) throw ParseError(line_no, 1, "missing 'space' line");
  return std::move(*roadmap);
}

}  // namespace narrowpass
