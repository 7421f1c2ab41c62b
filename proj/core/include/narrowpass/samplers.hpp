#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "narrowpass/cspace.hpp"
#include "narrowpass/geometry.hpp"
#include "narrowpass/heavytail.hpp"

namespace narrowpass {

enum class SamplerKind { kLfs, kLfbs, kRwbs, kRbbs, kGaussian, kRws };

std::string_view sampler_name(SamplerKind kind) noexcept;
// Accepts lfs, lfbs, rwbs, rbbs, gauss (or gaussian), rws.
std::optional<SamplerKind> parse_sampler(std::string_view name) noexcept;
bool is_bridge_sampler(SamplerKind kind) noexcept;

// What the Levy/random-walk bridge samplers do when the reflection of a
// free exit point is itself free.
enum class BridgeFailure {
  kRestart,      // drop the walk; the next attempt draws a fresh start
  kContinueWalk  // keep walking from the free point until it re-enters C_obs
};

struct SamplerConfig {
  double step_a = 2.0;  // base step size; bridge length scale for RBBS
  HeavyTailParams heavy{};
  std::size_t max_walk_steps = 1000;
  std::size_t k_target = 30;
  std::size_t attempts_per_sample = 200;  // outer budget = this * k_target
  BridgeFailure on_bridge_failure = BridgeFailure::kRestart;
  // Bridge ends (LFBS/RWBS reflection, RBBS endpoints) must have their
  // translation inside the bounds; otherwise a wall alone can certify a bridge.
  bool bridge_ends_inside = true;

  void validate() const;
};

// Evidence recorded next to each sample so its acceptance can be replayed.
//   LFBS / RWBS: first = last colliding walk point, second = reflection.
//   RBBS:        first, second = the two colliding bridge ends.
//   LFS / RWS:   first = colliding predecessor, second = first.
//   Gaussian:    first = colliding partner, second = first.
struct BridgeWitness {
  Configuration first;
  Configuration second;
};

struct SampleBatch {
  SamplerKind kind = SamplerKind::kLfs;
  std::vector<Configuration> samples;
  std::vector<BridgeWitness> witnesses;  // parallel to samples
  std::size_t attempts = 0;              // outer iterations consumed
  std::uint64_t collision_calls = 0;     // queries issued by this call
  std::size_t walk_steps = 0;            // total walk steps taken
  bool complete = false;                 // reached k_target
};

// Everything a sampler reads. All references must outlive the call.
struct SamplingProblem {
  const Scene& scene;
  const Robot& robot;
  const SpaceSpec& space;
};

// Reflection of q through q2: q2 is the midpoint of q and the result.
// Angles are doubled along the shortest arc from q to q2.
Configuration extend(const SpaceSpec& spec, const Configuration& q,
                     const Configuration& q2);

// One heavy-tailed flight from q: a uniform direction over the full
// configuration, translation advanced by levy_step_length (capped at
// `cap`), each angle offset by an orientation draw scaled by the
// direction's angular component.
Configuration levy_flight(const SpaceSpec& spec, const Configuration& q,
                          const HeavyTailParams& params, double cap, Rng& rng);

SampleBatch lfs_sample(const SamplingProblem& p, const SamplerConfig& cfg,
                       Rng& rng, CollisionCounter& counter);
SampleBatch lfbs_sample(const SamplingProblem& p, const SamplerConfig& cfg,
                        Rng& rng, CollisionCounter& counter);
SampleBatch rwbs_sample(const SamplingProblem& p, const SamplerConfig& cfg,
                        Rng& rng, CollisionCounter& counter);
SampleBatch rbbs_sample(const SamplingProblem& p, const SamplerConfig& cfg,
                        Rng& rng, CollisionCounter& counter);
SampleBatch gaussian_sample(const SamplingProblem& p, const SamplerConfig& cfg,
                            Rng& rng, CollisionCounter& counter);
SampleBatch rws_sample(const SamplingProblem& p, const SamplerConfig& cfg,
                       Rng& rng, CollisionCounter& counter);

SampleBatch run_sampler(SamplerKind kind, const SamplingProblem& p,
                        const SamplerConfig& cfg, Rng& rng,
                        CollisionCounter& counter);

}  // namespace narrowpass
