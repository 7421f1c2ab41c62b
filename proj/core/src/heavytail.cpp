#include "narrowpass/heavytail.hpp"

#include <cmath>
#include <random>

#include "narrowpass/cspace.hpp"
#include "narrowpass/error.hpp"

namespace narrowpass {

namespace {

void check_power_law(double alpha, double x_min) {
  if (!(alpha > 1.0)) {
    throw ParameterError("power-law tail exponent must be > 1");
  }
  if (!(x_min > 0.0)) throw ParameterError("power-law x_min must be > 0");
}

}  // namespace

void HeavyTailParams::validate() const {
  check_power_law(alpha, x_min);
  check_power_law(alpha_theta, 1.0);
  if (!(base_step_a >= 0.0)) throw ParameterError("base step must be >= 0");
}

double power_law_quantile(double alpha, double x_min, double u) {
  check_power_law(alpha, x_min);
  if (!(u >= 0.0 && u < 1.0)) throw ParameterError("quantile u must be in [0,1)");
  return x_min * std::pow(1.0 - u, -1.0 / (alpha - 1.0));
}

double sample_power_law(double alpha, double x_min, Rng& rng) {
  return power_law_quantile(alpha, x_min, uniform01(rng));
}

double levy_step_length(const HeavyTailParams& params, Rng& rng) {
  params.validate();
  return params.base_step_a + sample_power_law(params.alpha, params.x_min, rng);
}

double levy_orientation_offset(const HeavyTailParams& params, Rng& rng) {
  params.validate();
  const double s = sample_power_law(params.alpha_theta, 1.0, rng);
  return wrap_angle(kTwoPi * (1.0 - std::exp(-s)));
}

std::vector<double> sample_unit_direction(std::size_t dim, Rng& rng) {
  if (dim == 0) throw ParameterError("direction dimension must be >= 1");
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> v(dim);
  for (;;) {
    double n2 = 0.0;
    for (double& x : v) {
      x = normal(rng);
      n2 += x * x;
    }
    if (n2 > 1e-300) {
      const double inv = 1.0 / std::sqrt(n2);
      for (double& x : v) x *= inv;
      return v;
    }
  }
}

}  // namespace narrowpass
