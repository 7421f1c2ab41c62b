#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "narrowpass/cspace.hpp"
#include "narrowpass/geometry.hpp"
#include "narrowpass/samplers.hpp"

namespace narrowpass {

struct RoadmapEdge {
  std::size_t a = 0;
  std::size_t b = 0;
  double length = 0.0;
  friend bool operator==(const RoadmapEdge&, const RoadmapEdge&) = default;
};

// Undirected graph of free configurations. Node origins are "uniform" or a
// sampler name.
class Roadmap {
 public:
  explicit Roadmap(SpaceSpec space) : space_(std::move(space)) {}

  const SpaceSpec& space() const noexcept { return space_; }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const Configuration& node(std::size_t i) const { return nodes_.at(i); }
  const std::string& origin(std::size_t i) const { return origins_.at(i); }
  const std::vector<RoadmapEdge>& edges() const noexcept { return edges_; }
  // Edge indices incident to node i.
  const std::vector<std::size_t>& incident(std::size_t i) const { return adjacency_.at(i); }

  std::size_t add_node(Configuration q, std::string origin);
  // Stores the metric distance as the edge length. Ignores duplicates and
  // self loops; returns whether an edge was inserted.
  bool add_edge(std::size_t a, std::size_t b);
  // As above with a caller-provided length, which must agree with the metric
  // distance to within 1e-9 (ContractError otherwise).
  bool add_edge(std::size_t a, std::size_t b, double length);
  bool has_edge(std::size_t a, std::size_t b) const;

  // Component label per node (labels are the smallest node index).
  std::vector<std::size_t> components() const;

  friend bool operator==(const Roadmap& x, const Roadmap& y) {
    return x.space_ == y.space_ && x.nodes_ == y.nodes_ &&
           x.origins_ == y.origins_ && x.edges_ == y.edges_;
  }

 private:
  SpaceSpec space_;
  std::vector<Configuration> nodes_;
  std::vector<std::string> origins_;
  std::vector<RoadmapEdge> edges_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

struct PrmParams {
  std::size_t k = 10;
  double resolution = 0.5;
  std::size_t uniform_attempts_per_node = 1000;

  void validate() const;
};

// Checks interpolate(q1, q2, i/N) for i = 0..N, N = ceil(distance/resolution).
bool local_path_valid(const SamplingProblem& p, const Configuration& q1,
                      const Configuration& q2, double resolution,
                      CollisionCounter& counter);

// n_uniform free uniform nodes plus every sample of `bridge`, each connected
// to its k nearest neighbours through validated local paths. Throws
// BudgetError when the uniform nodes cannot be found within budget.
Roadmap build_roadmap(const SamplingProblem& p, std::size_t n_uniform,
                      const SampleBatch& bridge, const PrmParams& params,
                      Rng& rng, CollisionCounter& counter);

struct RoadmapStats {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::uint64_t collision_calls = 0;
  double build_seconds = 0.0;
  double query_seconds = 0.0;
};

struct PlanResult {
  bool found = false;
  std::vector<Configuration> path;
  double path_length = 0.0;
  RoadmapStats stats;
};

// Connects start and goal to their k nearest roadmap nodes and runs a
// uniform-cost search over edge lengths. Edges on the returned path are
// re-checked at half the resolution; failing edges are skipped and the search
// repeats. The roadmap is not modified.
// Throws ContractError when start or goal collides.
PlanResult query(const Roadmap& roadmap, const Configuration& start,
                 const Configuration& goal, const SamplingProblem& p,
                 const PrmParams& params, CollisionCounter& counter);

// Plain-text graph:
//   # narrow-pass roadmap v1
//   space <trans_dims> <angle_dims> <angle_weight> <lo hi per trans axis>
//   node <id> <origin> <trans...> <angles...>
//   edge <id1> <id2> <length>
std::string serialize_roadmap(const Roadmap& roadmap);
Roadmap load_roadmap(std::string_view text);

}  // namespace narrowpass
