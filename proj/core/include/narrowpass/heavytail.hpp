#pragma once

#include <cstddef>
#include <vector>

#include "narrowpass/random.hpp"

namespace narrowpass {

// Parameters of the heavy-tailed step law f(x) ~ x^-alpha on [x_min, inf).
struct HeavyTailParams {
  double alpha = 1.9;        // tail exponent for step lengths
  double x_min = 1.0;        // smallest power-law increment (units)
  double base_step_a = 0.0;  // constant added to every step (units)
  double alpha_theta = 1.1;  // tail exponent for orientation offsets

  void validate() const;
};

// Inverse CDF of the Pareto law with density proportional to x^-alpha on
// [x_min, inf): x_min * (1 - u)^(-1 / (alpha - 1)).
double power_law_quantile(double alpha, double x_min, double u);

double sample_power_law(double alpha, double x_min, Rng& rng);

// base_step_a + a power-law increment.
double levy_step_length(const HeavyTailParams& params, Rng& rng);

// Maps a power-law draw s >= 1 (tail alpha_theta) to 2*pi*(1 - exp(-s)),
// which always falls inside (0, 2*pi).
double levy_orientation_offset(const HeavyTailParams& params, Rng& rng);

// Uniform direction on the unit sphere in `dim` dimensions.
std::vector<double> sample_unit_direction(std::size_t dim, Rng& rng);

}  // namespace narrowpass
