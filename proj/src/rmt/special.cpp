#include "ffm/rmt/special.hpp"

#include <cmath>
#include <numbers>

#include "ffm/core/errors.hpp"

namespace ffm::rmt {

double log_barnes_g(double z) {
  if (!(z > 0)) throw Refusal("Barnes G is only evaluated for z > 0");
  // shift up with log G(z+1) = log Gamma(z) + log G(z)
  double shift = 0;
  while (z < 12.0) {
    shift -= std::lgamma(z);
    z += 1.0;
  }
  // asymptotic series for log G(w+1), w = z - 1
  const double w = z - 1.0;
  const double lw = std::log(w);
  const double zeta_prime_m1 = 1.0 / 12.0 - std::log(kGlaisher);
  double s = 0.5 * w * w * lw - 0.75 * w * w + 0.5 * w * std::log(2.0 * std::numbers::pi) - lw / 12.0 + zeta_prime_m1;
  // B_{2k+2} / (4k(k+1) w^{2k})
  static constexpr double bern[] = {-1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0};
  double wp = 1.0;
  for (int k = 1; k <= 6; ++k) {
    wp *= w * w;
    s += bern[k - 1] / (4.0 * k * (k + 1) * wp);
  }
  return s + shift;
}

double barnes_g(double z) {
  if (!(z > 0)) throw Refusal("Barnes G is only evaluated for z > 0");
  if (z == std::floor(z) && z <= 30) {
    // G(n) = prod_{k=1}^{n-2} k!
    double g = 1, fact = 1;
    for (int k = 1; k <= static_cast<int>(z) - 2; ++k) {
      fact *= k;
      g *= fact;
    }
    return g;
  }
  return std::exp(log_barnes_g(z));
}

double beta_fn(double x, double y) {
  if (!(x > 0 && y > 0)) throw InvalidArgument("beta function needs positive arguments");
  return std::exp(std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y));
}

double phi_average_constant() {
  const double g = barnes_g(0.5);
  return std::sqrt(2.0) * g * g * beta_fn(0.625, 0.5);
}

}  // namespace ffm::rmt
