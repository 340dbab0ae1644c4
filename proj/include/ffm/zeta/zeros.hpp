#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "ffm/core/errors.hpp"
#include "ffm/core/precision.hpp"
#include "ffm/zeta/curve.hpp"
#include "ffm/zeta/intpoly.hpp"

namespace ffm::zeta {

struct InverseZero {
  std::complex<double> gamma;
  int order = 1;
  std::size_t factor = 0;  // index into ZeroData::factors
  int real_sign = 0;       // +1 for gamma = sqrt(q), -1 for -sqrt(q), 0 if not real
};

struct ZeroData {
  std::uint64_t q = 0;
  int genus = 0;
  std::vector<InverseZero> zeros;      // each distinct zero once, ascending arg in (-pi, pi]
  std::vector<double> eigenangles;     // in [0, pi], with multiplicity, ascending
  int r_max = 0;
  std::vector<SquarefreeFactor> factors;  // of P(u), exact

  bool has_real_zero() const;
  bool all_simple() const { return r_max <= 1; }
};

struct RootFinderOptions {
  double residual_tolerance = 1e-12;
  int iteration_cap = 200;
};

ZeroData zero_data(const LPolynomial& P, const RootFinderOptions& opts = {});

std::vector<double> frobenius_eigenangles(const ZeroData& zd);
std::vector<double> frobenius_eigenangles(const HyperellipticCurve& curve);

// Roots of a monic complex polynomial (coeffs constant first) by Aberth iteration.
// Throws InternalError on non-convergence.
std::vector<std::complex<double>> aberth_roots(const std::vector<std::complex<double>>& coeffs,
                                               const RootFinderOptions& opts, double radius_hint);

// Zeros of zd refined to the precision of R by Newton's method on the exact
// squarefree factor. Same order as zd.zeros.
template <class R>
std::vector<Cx<R>> polish_zeros(const ZeroData& zd) {
  using std::abs;
  using std::pow;
  using std::sqrt;
  std::vector<Cx<R>> out(zd.zeros.size());
  const R sq = sqrt(R(zd.q));
  const R tol = pow(R(10), -static_cast<int>(digits_of<R>()) + 4);
  for (std::size_t i = 0; i < zd.zeros.size(); ++i) {
    const auto& z = zd.zeros[i];
    if (z.real_sign != 0) {
      out[i] = Cx<R>(z.real_sign > 0 ? sq : R(-sq));
      continue;
    }
    if (z.gamma.imag() < 0) continue;  // filled from its conjugate below
    // reversed factor: Q(T) = T^d f(1/T), roots are the inverse zeros
    const IntPoly& f = zd.factors[z.factor].poly;
    const std::size_t d = f.size() - 1;
    std::vector<R> rev(d + 1);
    for (std::size_t j = 0; j <= d; ++j) rev[j] = to_real<R>(f[d - j]);
    Cx<R> x(R(z.gamma.real()), R(z.gamma.imag()));
    bool converged = false;
    R step_size(0);
    for (int it = 0; it < 100; ++it) {
      Cx<R> val(rev[d]), der(R(0));
      for (std::size_t j = d; j-- > 0;) {
        der = der * x + val;
        val = val * x + Cx<R>(rev[j]);
      }
      Cx<R> step = val / der;
      x -= step;
      step_size = step.abs();
      if (step_size <= tol * sq) {
        converged = true;
        break;
      }
    }
    if (!converged)
      throw Refusal("precision unavailable: root polishing stalled with step " +
                    std::to_string(static_cast<double>(step_size)));
    out[i] = x;
  }
  for (std::size_t i = 0; i < zd.zeros.size(); ++i) {
    const auto& z = zd.zeros[i];
    if (z.real_sign == 0 && z.gamma.imag() < 0) {
      for (std::size_t j = 0; j < zd.zeros.size(); ++j) {
        if (zd.zeros[j].real_sign == 0 && zd.zeros[j].gamma == std::conj(z.gamma)) {
          out[i] = out[j].conj();
          break;
        }
      }
    }
  }
  return out;
}

}  // namespace ffm::zeta
