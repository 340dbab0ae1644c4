#include "ffm/mertens/growth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ffm/core/errors.hpp"

namespace ffm::mertens {

namespace {

int top_order(const zeta::ZeroData& zd) { return std::max(zd.r_max, 1); }

}  // namespace

GrowthReport growth_report(const zeta::LPolynomial& P, const zeta::ZeroData& zd, long X_start, long X_end,
                           double rel_tol) {
  if (X_start < 0 || X_end < X_start) throw InvalidArgument("bad growth window");
  GrowthReport rep;
  rep.X_start = X_start;
  rep.X_end = X_end;
  rep.window_too_small = X_start < kDefaultWindowStart;
  rep.D = bound_D(P, zd);
  const int r = top_order(zd);
  const double lq = std::log(static_cast<double>(P.q));
  MoebiusStream st(P);
  rep.B_hat_plus = -std::numeric_limits<double>::infinity();
  rep.B_hat_minus = std::numeric_limits<double>::infinity();
  while (st.index() < X_end) {
    st.advance();
    const long X = st.index();
    if (X < X_start) continue;
    double lx = X > 0 ? std::log(static_cast<double>(X)) : 0.0;
    double v = scaled(st.M(), (r - 1) * lx + 0.5 * (X + 1) * lq);
    if (v > rep.B_hat_plus) {
      rep.B_hat_plus = v;
      rep.argmax_X = X;
    }
    rep.B_hat_minus = std::min(rep.B_hat_minus, v);
  }
  if (X_start == 0) {
    // X = 0 row: M(0) = 1
    double v = 1.0 / std::sqrt(static_cast<double>(P.q));
    if (v > rep.B_hat_plus) {
      rep.B_hat_plus = v;
      rep.argmax_X = 0;
    }
    rep.B_hat_minus = std::min(rep.B_hat_minus, v);
  }
  const double tol = rel_tol * std::max(rep.D, 1e-300);
  rep.sharp = std::abs(rep.B_hat_plus - rep.D) <= tol;
  rep.strictly_below = rep.B_hat_plus < rep.D - tol;
  return rep;
}

std::vector<double> normalized_mertens(const zeta::LPolynomial& P, const zeta::ZeroData& zd, long Y) {
  const int r = top_order(zd);
  const double lq = std::log(static_cast<double>(P.q));
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(std::max(Y, 0L)));
  MoebiusStream st(P);
  while (st.index() < Y) {
    st.advance();
    const long X = st.index();
    out.push_back(scaled(st.M(), (r - 1) * std::log(static_cast<double>(X)) + 0.5 * X * lq));
  }
  return out;
}

Histogram limiting_histogram(const zeta::LPolynomial& P, const zeta::ZeroData& zd, long Y, std::size_t bins) {
  if (bins == 0) throw InvalidArgument("histogram needs at least one bin");
  Histogram h;
  h.values = normalized_mertens(P, zd, Y);
  h.counts.assign(bins, 0);
  if (h.values.empty()) return h;
  auto [mn, mx] = std::minmax_element(h.values.begin(), h.values.end());
  h.lo = *mn;
  h.hi = *mx;
  if (h.hi <= h.lo) {
    h.lo -= 0.5;
    h.hi += 0.5;
  }
  const double w = (h.hi - h.lo) / static_cast<double>(bins);
  for (double v : h.values) {
    auto b = static_cast<std::size_t>((v - h.lo) / w);
    h.counts[std::min(b, bins - 1)]++;
  }
  return h;
}

std::complex<double> empirical_cf(const std::vector<double>& values, double xi) {
  double re = 0, im = 0;
  for (double v : values) {
    re += std::cos(xi * v);
    im += std::sin(xi * v);
  }
  const double n = static_cast<double>(std::max<std::size_t>(values.size(), 1));
  return {re / n, im / n};
}

double bessel_j0(double z) {
  z = std::abs(z);
  if (z <= 12.0) {
    const double h = 0.25 * z * z;
    double term = 1, sum = 1;
    for (int k = 1; k < 200; ++k) {
      term *= -h / (static_cast<double>(k) * k);
      sum += term;
      if (std::abs(term) < 1e-18) break;
    }
    return sum;
  }
  // asymptotic expansion, summed until terms stop shrinking
  double P = 0, Q = 0;
  double a = 1;  // a_k / z^k
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 60; ++k) {
    if (k > 0) a *= -((2.0 * k - 1) * (2.0 * k - 1)) / (8.0 * k * z);
    if (std::abs(a) >= prev) break;
    prev = std::abs(a);
    switch (k % 4) {
      case 0: P += a; break;
      case 1: Q += a; break;
      case 2: P -= a; break;
      case 3: Q -= a; break;
    }
  }
  const double chi = z - 0.25 * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * z)) * (P * std::cos(chi) - Q * std::sin(chi));
}

double bessel_mu_hat(const zeta::LPolynomial& P, const zeta::ZeroData& zd, double xi) {
  if (!zd.all_simple()) throw Refusal("Bessel product needs simple zeros");
  double prod = 1;
  for (const auto& t : cosine_terms(P, zd)) prod *= bessel_j0(2.0 * t.amplitude * xi);
  return prod;
}

std::complex<double> lemma_series_ratio(std::complex<double> beta, int k, long X) {
  if (!(std::abs(beta) > 1.0)) throw Refusal("series ratio needs |beta| > 1");
  if (k < 0 || X < 1) throw InvalidArgument("series ratio needs k >= 0 and X >= 1");
  std::complex<double> sum = 0, w = 1;
  const std::complex<double> ib = 1.0 / beta;
  for (long N = X; N >= 1; --N) {
    sum += std::pow(static_cast<double>(N) / static_cast<double>(X), k) * w;
    w *= ib;
    if (std::abs(w) < 1e-22) break;
  }
  return sum;
}

}  // namespace ffm::mertens
