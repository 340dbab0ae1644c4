#pragma once

#include <complex>
#include <vector>

#include "ffm/core/precision.hpp"
#include "ffm/zeta/curve.hpp"
#include "ffm/zeta/zeros.hpp"

namespace ffm::mertens {

// Taylor coefficients p_m = P^{(m)}(u0)/m! for m = 0..m_max.
template <class R>
std::vector<Cx<R>> taylor_at(const zeta::LPolynomial& P, const Cx<R>& u0, int m_max) {
  const int deg = static_cast<int>(P.a.size()) - 1;
  std::vector<Cx<R>> out(m_max + 1);
  // synthetic division, repeated: coefficients of P(u0 + t)
  std::vector<Cx<R>> c(deg + 1);
  for (int j = 0; j <= deg; ++j) c[j] = Cx<R>(to_real<R>(P.a[j]));
  for (int m = 0; m <= m_max && m <= deg; ++m) {
    for (int j = deg - 1; j >= m; --j) c[j] += c[j + 1] * u0;
    out[m] = c[m];
  }
  return out;
}

// Residue of Z_mu(u) u^{-N-1} at u = 1/gamma, where gamma has exact order r.
template <class R>
Cx<R> residue_term(const zeta::LPolynomial& P, const Cx<R>& gamma, int r, long N) {
  const Cx<R> one(R(1));
  const Cx<R> u0 = one / gamma;
  const R q(static_cast<double>(P.q));
  auto p = taylor_at<R>(P, u0, 2 * r - 1);
  // e(u0 + t) = (1 - u)(1 - qu) expanded in t
  std::vector<Cx<R>> e(r, Cx<R>(R(0)));
  e[0] = (one - u0) * (one - Cx<R>(q) * u0);
  if (r > 1) e[1] = Cx<R>(-(q + 1)) + Cx<R>(2 * q) * u0;
  if (r > 2) e[2] = Cx<R>(q);
  // 1 / Q(t) with Q_k = p_{r+k}
  std::vector<Cx<R>> inv(r);
  inv[0] = one / p[r];
  for (int k = 1; k < r; ++k) {
    Cx<R> acc(R(0));
    for (int i = 1; i <= k; ++i) acc += p[r + i] * inv[k - i];
    inv[k] = -(acc * inv[0]);
  }
  // u^{-N-1} = gamma^{N+1} sum_k (-1)^k C(N+k, k) gamma^k t^k
  std::vector<Cx<R>> U(r);
  Cx<R> g = pow_int(gamma, N + 1);
  R binom(1);
  for (int k = 0; k < r; ++k) {
    if (k > 0) binom = binom * R(N + k) / R(k);
    U[k] = g * Cx<R>((k % 2 == 0) ? binom : R(-binom));
    g *= gamma;
  }
  // coefficient of t^{r-1} in e * inv * U
  std::vector<Cx<R>> ei(r, Cx<R>(R(0)));
  for (int i = 0; i < r; ++i)
    for (int j = 0; i + j < r; ++j) ei[i + j] += e[i] * inv[j];
  Cx<R> out(R(0));
  for (int i = 0; i < r; ++i) out += ei[i] * U[r - 1 - i];
  return out;
}

template <class R>
Cx<R> residue_sum_at(const zeta::LPolynomial& P, const zeta::ZeroData& zd, long N) {
  auto zs = zeta::polish_zeros<R>(zd);
  Cx<R> acc(R(0));
  for (std::size_t i = 0; i < zs.size(); ++i) acc += residue_term<R>(P, zs[i], zd.zeros[i].order, N);
  return acc;
}

// Decimal digits required to evaluate the residue sum at N with absolute error
// far below the O(1) remainder.
unsigned residue_digits(const zeta::ZeroData& zd, long N);

// Sum over all inverse zeros of R(N, gamma).
std::complex<double> residue_sum(const zeta::LPolynomial& P, const zeta::ZeroData& zd, long N);

// |c + sum R(N, gamma)|, evaluated at enough precision that cancellation is harmless.
double residue_defect(const zeta::LPolynomial& P, const zeta::ZeroData& zd, const BigInt& c_N, long N);

// 2(1+q)/(sqrt q - 1)^{2g}.
double residue_bound(const zeta::LPolynomial& P);

struct CosineTerm {
  double amplitude;  // |gamma/Z'(1/gamma) * gamma/(gamma-1)|
  double phase;      // its argument
  double theta;      // arg gamma
};

// Complex amplitude of each top-order zero in the main term:
// (-gamma)^r r / Z^{(r)}(1/gamma) * gamma/(gamma-1). Same order as zd.zeros; zero for lower orders.
std::vector<std::complex<double>> main_term_amplitudes(const zeta::LPolynomial& P, const zeta::ZeroData& zd);

// Oscillatory main term of M(X) / (X^{r-1} q^{X/2}).
double asymptotic_main_term(const zeta::LPolynomial& P, const zeta::ZeroData& zd, long X);

// Terms of the cosine form M(X)/q^{X/2} ~ -sum |a| cos(omega + X theta), one per
// zero with positive imaginary part. Requires simple zeros.
std::vector<CosineTerm> cosine_terms(const zeta::LPolynomial& P, const zeta::ZeroData& zd);

// q^{-1/2} sum over top-order zeros of |amplitude|.
double bound_D(const zeta::LPolynomial& P, const zeta::ZeroData& zd);

}  // namespace ffm::mertens
