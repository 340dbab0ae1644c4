#pragma once

#include <cmath>
#include <vector>

#include "ffm/rmt/quadrature.hpp"

namespace ffm::rmt {

enum class DeterminantBasis { chebyshev, monomial };

struct HankelOptions {
  double tol_double = 1e-11;    // successive log-determinants, double route
  double tol_extended = 1e-20;  // same, extended route
  int max_nodes = 1024;         // per panel
  int extended_above = 10;      // N above this uses 50-digit arithmetic
};

template <class R>
struct HankelDet {
  R logdet{0};
  double condition = 1;  // largest / smallest Cholesky pivot
};

// log det of the N x N matrix of moments int x^{j+k} dm(x).
// The Chebyshev route factors the Gram matrix of U_0..U_{N-1}; U_j = 2^j * (monic),
// so the monic-basis determinant (equal to the Hankel one) is recovered by an
// exact power of two.
template <class R>
HankelDet<R> hankel_logdet(int N, const DiscreteMeasure<R>& m, DeterminantBasis basis) {
  using std::log;
  using std::sqrt;
  HankelDet<R> out;
  if (N <= 0) return out;
  std::vector<R> G(static_cast<std::size_t>(N) * N, R(0));
  std::vector<R> phi(N);
  for (std::size_t i = 0; i < m.x.size(); ++i) {
    const R& x = m.x[i];
    phi[0] = 1;
    if (N > 1) phi[1] = basis == DeterminantBasis::chebyshev ? R(2 * x) : x;
    for (int j = 2; j < N; ++j)
      phi[j] = basis == DeterminantBasis::chebyshev ? R(2 * x * phi[j - 1] - phi[j - 2]) : R(x * phi[j - 1]);
    for (int j = 0; j < N; ++j) {
      const R wj = m.w[i] * phi[j];
      for (int k = 0; k <= j; ++k) G[j * N + k] += wj * phi[k];
    }
  }
  // Cholesky on the lower triangle
  double pmax = 0, pmin = INFINITY;
  for (int j = 0; j < N; ++j) {
    R d = G[j * N + j];
    for (int k = 0; k < j; ++k) d -= G[j * N + k] * G[j * N + k];
    if (!(d > 0)) throw Refusal("Hankel determinant lost positivity; more precision required than " +
                                std::to_string(digits_of<R>()) + " digits");
    const double dd = static_cast<double>(d);
    pmax = std::max(pmax, dd);
    pmin = std::min(pmin, dd);
    out.logdet += log(d);
    const R l = sqrt(d);
    G[j * N + j] = l;
    for (int i = j + 1; i < N; ++i) {
      R v = G[i * N + j];
      for (int k = 0; k < j; ++k) v -= G[i * N + k] * G[j * N + k];
      G[i * N + j] = v / l;
    }
  }
  out.condition = pmax / pmin;
  if (basis == DeterminantBasis::chebyshev) out.logdet -= R(N) * R(N - 1) * log(R(2));
  return out;
}

template <class R>
struct ConvergedLogDet {
  R logdet{0};
  int nodes = 0;  // per panel
  double condition = 1;
};

// Doubles the per-panel node count until successive log-determinants agree to tol.
template <class R>
ConvergedLogDet<R> converged_logdet(int N, const SingularWeight<R>& wt, DeterminantBasis basis, double tol,
                                    int max_nodes) {
  using std::abs;
  int n = 16;
  while (n < N + 8) n *= 2;
  HankelDet<R> prev = hankel_logdet<R>(N, build_measure<R>(wt, n), basis);
  for (;;) {
    const int next = 2 * n;
    if (next > max_nodes)
      throw Refusal("quadrature did not settle within " + std::to_string(max_nodes) + " nodes per panel");
    HankelDet<R> cur = hankel_logdet<R>(N, build_measure<R>(wt, next), basis);
    const double diff = static_cast<double>(abs(cur.logdet - prev.logdet));
    n = next;
    if (diff <= tol) {
      const double need = std::log10(std::max(cur.condition, 1.0)) + 6.0;
      if (need > digits_of<R>())
        throw Refusal("determinant condition estimate " + std::to_string(cur.condition) + " requires about " +
                      std::to_string(static_cast<int>(std::ceil(need))) + " digits");
      return {cur.logdet, n, cur.condition};
    }
    prev = cur;
  }
}

// |x - y|^{2s} sqrt(1 - x^2)
template <class R>
SingularWeight<R> moment_weight(double s, const R& y) {
  return {{R(-1), y, R(1)}, {0.5, 2 * s, 0.5}};
}

// y = 1: the two singularities at x = 1 merge, (1-x)^{2s+1/2} (1+x)^{1/2}.
template <class R>
SingularWeight<R> endpoint_weight(double s) {
  return {{R(-1), R(1)}, {0.5, 2 * s + 0.5}};
}

struct MomentResult {
  int N = 0;
  double s = 0;
  double theta = 0;
  double exact = 0;
  double log_exact = 0;
  double asymptotic = 0;
  double ratio = 0;
  int nodes = 0;
  unsigned digits = 0;
  double condition = 1;
};

// <|Z_U(theta)|^{2s}> over USp(2N), 0 < theta < pi.
MomentResult hankel_moment(int N, double s, double theta, const HankelOptions& opts = {});

// Same quantity from y = cos(theta) directly (|y| < 1).
double hankel_moment_y(int N, double s, double y, const HankelOptions& opts = {});

// theta = 0, through the merged endpoint weight.
double hankel_moment_endpoint(int N, double s, const HankelOptions& opts = {});

// Log-determinant of the raw moment matrix, in both bases, at 50 digits.
struct BasisComparison {
  double log_monomial = 0;
  double log_chebyshev = 0;
  double relative_difference = 0;
};
BasisComparison compare_bases(int N, double s, double theta);

double dik_asymptotic(int N, double s, double theta);

}  // namespace ffm::rmt
