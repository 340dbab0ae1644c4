#pragma once

#include <complex>
#include <vector>

#include "ffm/mertens/residue.hpp"
#include "ffm/mertens/series.hpp"

namespace ffm::mertens {

struct GrowthReport {
  double B_hat_plus = 0;
  double B_hat_minus = 0;
  double D = 0;
  long X_start = 0;
  long X_end = 0;
  long argmax_X = 0;
  bool window_too_small = false;  // start below the default, o(1) may not be negligible
  bool sharp = false;             // B_hat_plus within rel_tol of D
  bool strictly_below = false;    // B_hat_plus < D beyond rel_tol
};

inline constexpr long kDefaultWindowStart = 50;
inline constexpr long kDefaultWindowEnd = 2000;

// Normalization M(X) / (X^{r-1} q^{(X+1)/2}).
GrowthReport growth_report(const zeta::LPolynomial& P, const zeta::ZeroData& zd, long X_start = kDefaultWindowStart,
                           long X_end = kDefaultWindowEnd, double rel_tol = 0.02);

// M(X) / (X^{r-1} q^{X/2}) for X = 1..Y.
std::vector<double> normalized_mertens(const zeta::LPolynomial& P, const zeta::ZeroData& zd, long Y);

struct Histogram {
  double lo = 0, hi = 0;
  std::vector<std::uint64_t> counts;
  std::vector<double> values;  // the samples themselves, X = 1..Y
};

Histogram limiting_histogram(const zeta::LPolynomial& P, const zeta::ZeroData& zd, long Y, std::size_t bins = 50);

// (1/Y) sum_X exp(i xi v_X).
std::complex<double> empirical_cf(const std::vector<double>& values, double xi);

double bessel_j0(double z);

// prod over conjugate pairs of J_0(2 |amplitude| xi). Throws Refusal on repeated zeros.
double bessel_mu_hat(const zeta::LPolynomial& P, const zeta::ZeroData& zd, double xi);

// (sum_{N=1}^{X} N^k beta^N) / (X^k beta^X). Throws Refusal when |beta| <= 1.
std::complex<double> lemma_series_ratio(std::complex<double> beta, int k, long X);

}  // namespace ffm::mertens
