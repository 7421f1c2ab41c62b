#include "narrowpass/samplers.hpp"

#include <cmath>
#include <random>

#include "narrowpass/error.hpp"

namespace narrowpass {

namespace {

struct Checker {
  const SamplingProblem& p;
  CollisionCounter& counter;
  bool operator()(const Configuration& q) const {
    return is_colliding(p.scene, p.robot, q, counter);
  }
};

void prepare(const SamplingProblem& p, const SamplerConfig& cfg) {
  cfg.validate();
  validate_robot(p.robot, p.space);
  if (p.space.trans_dims() != p.scene.dims) {
    throw ContractError("space and scene dimensions disagree");
  }
}

bool inside(const SpaceSpec& space, const Configuration& q) {
  const auto& b = space.trans_bounds();
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (q.trans()[i] < b[i].lo || q.trans()[i] > b[i].hi) return false;
  }
  return true;
}

// Bridge end test; the bounds check runs first and costs no collision call.
bool bridge_end(const SamplingProblem& p, const SamplerConfig& cfg,
                const Checker& colliding, const Configuration& q) {
  if (cfg.bridge_ends_inside && !inside(p.space, q)) return false;
  return colliding(q);
}

std::size_t outer_budget(const SamplerConfig& cfg) {
  return cfg.attempts_per_sample * cfg.k_target;
}

void accept(SampleBatch& batch, Configuration sample, Configuration first,
            Configuration second) {
  batch.samples.push_back(std::move(sample));
  batch.witnesses.push_back({std::move(first), std::move(second)});
}

// Shared loop of the four walk-based samplers. `next` proposes the walker's
// next position; with `bridge` set, a free proposal is only kept when its
// reflection through the current (colliding) walker position collides.
template <class NextFn>
SampleBatch walk_sampler(SamplerKind kind, const SamplingProblem& p,
                         const SamplerConfig& cfg, Rng& rng,
                         CollisionCounter& counter, bool bridge, NextFn next) {
  prepare(p, cfg);
  Checker colliding{p, counter};
  SampleBatch batch;
  batch.kind = kind;
  const auto calls_before = counter.calls();
  const std::size_t budget = outer_budget(cfg);

  while (batch.samples.size() < cfg.k_target && batch.attempts < budget) {
    ++batch.attempts;
    Configuration q = sample_uniform(p.space, rng);
    if (!colliding(q)) continue;

    // Only false in continue-walk mode after a failed bridge test.
    bool anchored = true;
    for (std::size_t s = 0; s < cfg.max_walk_steps; ++s) {
      Configuration q_next = next(q);
      ++batch.walk_steps;
      if (colliding(q_next)) {
        // Leaving the arena ends the walk; the exterior is unbounded C_obs.
        if (!inside(p.space, q_next)) break;
        q = std::move(q_next);
        anchored = true;
        continue;
      }
      if (!anchored) {
        q = std::move(q_next);
        continue;
      }
      if (!bridge) {
        Configuration pred = q;
        accept(batch, std::move(q_next), std::move(pred), std::move(q));
        break;
      }
      Configuration reflected = extend(p.space, q, q_next);
      if (bridge_end(p, cfg, colliding, reflected)) {
        accept(batch, std::move(q_next), std::move(q), std::move(reflected));
        break;
      }
      if (cfg.on_bridge_failure == BridgeFailure::kRestart) break;
      q = std::move(q_next);
      anchored = false;
    }
  }
  batch.collision_calls = counter.calls() - calls_before;
  batch.complete = batch.samples.size() >= cfg.k_target;
  return batch;
}

HeavyTailParams flight_params(const SamplerConfig& cfg) {
  HeavyTailParams h = cfg.heavy;
  h.base_step_a = cfg.step_a;
  return h;
}

}  // namespace

std::string_view sampler_name(SamplerKind kind) noexcept {
  switch (kind) {
    case SamplerKind::kLfs: return "lfs";
    case SamplerKind::kLfbs: return "lfbs";
    case SamplerKind::kRwbs: return "rwbs";
    case SamplerKind::kRbbs: return "rbbs";
    case SamplerKind::kGaussian: return "gauss";
    case SamplerKind::kRws: return "rws";
  }
  return "?";
}

std::optional<SamplerKind> parse_sampler(std::string_view name) noexcept {
  if (name == "lfs") return SamplerKind::kLfs;
  if (name == "lfbs") return SamplerKind::kLfbs;
  if (name == "rwbs") return SamplerKind::kRwbs;
  if (name == "rbbs") return SamplerKind::kRbbs;
  if (name == "gauss" || name == "gaussian") return SamplerKind::kGaussian;
  if (name == "rws") return SamplerKind::kRws;
  return std::nullopt;
}

bool is_bridge_sampler(SamplerKind kind) noexcept {
  return kind == SamplerKind::kLfbs || kind == SamplerKind::kRwbs ||
         kind == SamplerKind::kRbbs;
}

void SamplerConfig::validate() const {
  if (!(step_a > 0.0)) throw ParameterError("step_a must be > 0");
  if (max_walk_steps < 1) throw ParameterError("max_walk_steps must be >= 1");
  if (k_target < 1) throw ParameterError("k_target must be >= 1");
  if (attempts_per_sample < 1) {
    throw ParameterError("attempts_per_sample must be >= 1");
  }
  heavy.validate();
}

Configuration extend(const SpaceSpec& spec, const Configuration& q,
                     const Configuration& q2) {
  spec.check(q);
  spec.check(q2);
  std::vector<double> trans(q.trans().size());
  for (std::size_t i = 0; i < trans.size(); ++i) {
    trans[i] = 2.0 * q2.trans()[i] - q.trans()[i];
  }
  std::vector<double> angles(q.angles().size());
  for (std::size_t i = 0; i < angles.size(); ++i) {
    angles[i] = q.angles()[i] + 2.0 * shortest_arc(q.angles()[i], q2.angles()[i]);
  }
  return Configuration(std::move(trans), std::move(angles));
}

Configuration levy_flight(const SpaceSpec& spec, const Configuration& q,
                          const HeavyTailParams& params, double cap, Rng& rng) {
  spec.check(q);
  const auto dir = sample_unit_direction(spec.dim(), rng);
  const double length = std::min(levy_step_length(params, rng), cap);
  const std::size_t nt = spec.trans_dims();
  std::vector<double> trans(q.trans());
  for (std::size_t i = 0; i < nt; ++i) trans[i] += length * dir[i];
  std::vector<double> angles(q.angles());
  for (std::size_t i = 0; i < angles.size(); ++i) {
    angles[i] += levy_orientation_offset(params, rng) * dir[nt + i];
  }
  return Configuration(std::move(trans), std::move(angles));
}

SampleBatch lfs_sample(const SamplingProblem& p, const SamplerConfig& cfg,
                       Rng& rng, CollisionCounter& counter) {
  const auto h = flight_params(cfg);
  const double cap = p.space.diagonal();
  return walk_sampler(SamplerKind::kLfs, p, cfg, rng, counter, false,
                      [&](const Configuration& q) {
                        return levy_flight(p.space, q, h, cap, rng);
                      });
}

SampleBatch lfbs_sample(const SamplingProblem& p, const SamplerConfig& cfg,
                        Rng& rng, CollisionCounter& counter) {
  const auto h = flight_params(cfg);
  const double cap = p.space.diagonal();
  return walk_sampler(SamplerKind::kLfbs, p, cfg, rng, counter, true,
                      [&](const Configuration& q) {
                        return levy_flight(p.space, q, h, cap, rng);
                      });
}

SampleBatch rwbs_sample(const SamplingProblem& p, const SamplerConfig& cfg,
                        Rng& rng, CollisionCounter& counter) {
  return walk_sampler(SamplerKind::kRwbs, p, cfg, rng, counter, true,
                      [&](const Configuration& q) {
                        const auto dir = sample_unit_direction(p.space.dim(), rng);
                        return step(p.space, q, dir, cfg.step_a);
                      });
}

SampleBatch rws_sample(const SamplingProblem& p, const SamplerConfig& cfg,
                       Rng& rng, CollisionCounter& counter) {
  return walk_sampler(SamplerKind::kRws, p, cfg, rng, counter, false,
                      [&](const Configuration& q) {
                        const auto dir = sample_unit_direction(p.space.dim(), rng);
                        return step(p.space, q, dir, cfg.step_a);
                      });
}

SampleBatch rbbs_sample(const SamplingProblem& p, const SamplerConfig& cfg,
                        Rng& rng, CollisionCounter& counter) {
  prepare(p, cfg);
  Checker colliding{p, counter};
  SampleBatch batch;
  batch.kind = SamplerKind::kRbbs;
  const auto calls_before = counter.calls();
  const std::size_t budget = outer_budget(cfg);
  std::normal_distribution<double> bridge_length(0.0, cfg.step_a);

  while (batch.samples.size() < cfg.k_target && batch.attempts < budget) {
    ++batch.attempts;
    Configuration q1 = sample_uniform(p.space, rng);
    if (!colliding(q1)) continue;
    const auto dir = sample_unit_direction(p.space.dim(), rng);
    Configuration q2 = step(p.space, q1, dir, std::abs(bridge_length(rng)));
    if (!bridge_end(p, cfg, colliding, q2)) continue;
    Configuration mid = interpolate(p.space, q1, q2, 0.5);
    if (colliding(mid)) continue;
    accept(batch, std::move(mid), std::move(q1), std::move(q2));
  }
  batch.collision_calls = counter.calls() - calls_before;
  batch.complete = batch.samples.size() >= cfg.k_target;
  return batch;
}

SampleBatch gaussian_sample(const SamplingProblem& p, const SamplerConfig& cfg,
                            Rng& rng, CollisionCounter& counter) {
  prepare(p, cfg);
  Checker colliding{p, counter};
  SampleBatch batch;
  batch.kind = SamplerKind::kGaussian;
  const auto calls_before = counter.calls();
  const std::size_t budget = outer_budget(cfg);
  std::normal_distribution<double> offset(0.0, cfg.step_a);

  while (batch.samples.size() < cfg.k_target && batch.attempts < budget) {
    ++batch.attempts;
    Configuration q1 = sample_uniform(p.space, rng);
    std::vector<double> trans(q1.trans());
    for (double& x : trans) x += offset(rng);
    std::vector<double> angles(q1.angles().size());
    for (double& a : angles) a = uniform01(rng) * kTwoPi;
    Configuration q2(std::move(trans), std::move(angles));

    const bool c1 = colliding(q1);
    const bool c2 = colliding(q2);
    if (c1 == c2) continue;
    if (c1) {
      Configuration partner = q1;
      accept(batch, std::move(q2), std::move(partner), std::move(q1));
    } else {
      Configuration partner = q2;
      accept(batch, std::move(q1), std::move(partner), std::move(q2));
    }
  }
  batch.collision_calls = counter.calls() - calls_before;
  batch.complete = batch.samples.size() >= cfg.k_target;
  return batch;
}

SampleBatch run_sampler(SamplerKind kind, const SamplingProblem& p,
                        const SamplerConfig& cfg, Rng& rng,
                        CollisionCounter& counter) {
  switch (kind) {
    case SamplerKind::kLfs: return lfs_sample(p, cfg, rng, counter);
    case SamplerKind::kLfbs: return lfbs_sample(p, cfg, rng, counter);
    case SamplerKind::kRwbs: return rwbs_sample(p, cfg, rng, counter);
    case SamplerKind::kRbbs: return rbbs_sample(p, cfg, rng, counter);
    case SamplerKind::kGaussian: return gaussian_sample(p, cfg, rng, counter);
    case SamplerKind::kRws: return rws_sample(p, cfg, rng, counter);
  }
  throw ContractError("unknown sampler kind");
}

}  // namespace narrowpass
