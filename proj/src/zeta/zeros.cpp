#include "ffm/zeta/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ffm::zeta {

bool ZeroData::has_real_zero() const {
  return std::any_of(zeros.begin(), zeros.end(), [](const InverseZero& z) { return z.real_sign != 0; });
}

std::vector<std::complex<double>> aberth_roots(const std::vector<std::complex<double>>& c,
                                               const RootFinderOptions& opts, double radius_hint) {
  using C = std::complex<double>;
  const std::size_t d = c.size() - 1;
  std::vector<C> z(d);
  if (d == 0) return z;
  for (std::size_t k = 0; k < d; ++k)
    z[k] = std::polar(radius_hint, 2.0 * std::numbers::pi * (k + 0.25) / static_cast<double>(d) + 0.4);
  auto eval = [&](C x, C& val, C& der, double& scale) {
    val = c[d];
    der = 0;
    scale = std::abs(c[d]);
    const double ax = std::abs(x);
    double axp = 1;
    for (std::size_t j = d; j-- > 0;) {
      der = der * x + val;
      val = val * x + c[j];
    }
    scale = 0;
    for (std::size_t j = 0; j <= d; ++j) {
      scale += std::abs(c[j]) * axp;
      axp *= ax;
    }
  };
  double worst = 0;
  for (int it = 0; it < opts.iteration_cap; ++it) {
    worst = 0;
    bool all_ok = true;
    for (std::size_t k = 0; k < d; ++k) {
      C val, der;
      double scale;
      eval(z[k], val, der, scale);
      double rel = std::abs(val) / scale;
      worst = std::max(worst, rel);
      if (rel <= opts.residual_tolerance) continue;
      all_ok = false;
      C ratio = val / der;
      C sum = 0;
      for (std::size_t j = 0; j < d; ++j)
        if (j != k) sum += 1.0 / (z[k] - z[j]);
      z[k] -= ratio / (1.0 - ratio * sum);
    }
    if (all_ok) {
      // two Newton steps to settle the last bits
      for (auto& x : z) {
        for (int s = 0; s < 2; ++s) {
          C val, der;
          double scale;
          eval(x, val, der, scale);
          if (std::abs(der) > 0) x -= val / der;
        }
      }
      return z;
    }
  }
  throw InternalError("root finder did not converge in " + std::to_string(opts.iteration_cap) +
                      " iterations; worst relative residual " + std::to_string(worst));
}

ZeroData zero_data(const LPolynomial& P, const RootFinderOptions& opts) {
  validate(P);
  ZeroData zd;
  zd.q = P.q;
  zd.genus = P.genus();
  if (zd.genus == 0) return zd;
  zd.factors = squarefree_decomposition(P.a);
  const double sq = std::sqrt(static_cast<double>(P.q));
  int total = 0;
  for (std::size_t fi = 0; fi < zd.factors.size(); ++fi) {
    const auto& fac = zd.factors[fi];
    const IntPoly& f = fac.poly;
    const std::size_t d = f.size() - 1;
    total += static_cast<int>(d) * fac.multiplicity;
    // roots of Q(T) = T^d f(1/T), made monic
    std::vector<std::complex<double>> rev(d + 1);
    const double lead = to_double(f[0]);
    for (std::size_t j = 0; j <= d; ++j) rev[j] = to_double(f[d - j]) / lead;
    auto roots = aberth_roots(rev, opts, sq);

    std::vector<int> real_signs;
    for (int s : {+1, -1})
      if (vanishes_at_inverse_sqrt(f, P.q, s)) real_signs.push_back(s);
    // the real roots are the ones closest to the real axis
    std::sort(roots.begin(), roots.end(),
              [](auto a, auto b) { return std::abs(a.imag()) < std::abs(b.imag()); });
    for (std::size_t i = 0; i < real_signs.size(); ++i) {
      InverseZero z;
      z.gamma = real_signs[i] * sq;
      z.order = fac.multiplicity;
      z.factor = fi;
      z.real_sign = real_signs[i];
      zd.zeros.push_back(z);
    }
    std::size_t upper = 0;
    for (std::size_t i = real_signs.size(); i < roots.size(); ++i) {
      if (roots[i].imag() > 0) {
        ++upper;
        for (int conj : {+1, -1}) {
          InverseZero z;
          z.gamma = std::complex<double>(roots[i].real(), conj * roots[i].imag());
          z.order = fac.multiplicity;
          z.factor = fi;
          zd.zeros.push_back(z);
        }
      }
    }
    if (real_signs.size() + 2 * upper != d)
      throw InternalError("could not pair the complex roots of a squarefree factor into conjugates");
  }
  if (total != 2 * zd.genus) throw InternalError("zero orders do not sum to 2g");
  for (const auto& z : zd.zeros) {
    if (std::abs(std::abs(z.gamma) - sq) >= 1e-9 * sq)
      throw InternalError("inverse zero violates |gamma| = sqrt(q)");
    zd.r_max = std::max(zd.r_max, z.order);
  }
  std::sort(zd.zeros.begin(), zd.zeros.end(),
            [](const InverseZero& a, const InverseZero& b) { return std::arg(a.gamma) < std::arg(b.gamma); });
  for (const auto& z : zd.zeros) {
    if (z.real_sign != 0) {
      if (z.order % 2 != 0)
        throw InvalidArgument("real inverse zero of odd order does not come from a symplectic class");
      double a = z.real_sign > 0 ? 0.0 : std::numbers::pi;
      for (int m = 0; m < z.order / 2; ++m) zd.eigenangles.push_back(a);
    } else if (z.gamma.imag() > 0) {
      for (int m = 0; m < z.order; ++m) zd.eigenangles.push_back(std::arg(z.gamma));
    }
  }
  std::sort(zd.eigenangles.begin(), zd.eigenangles.end());
  return zd;
}

std::vector<double> frobenius_eigenangles(const ZeroData& zd) { return zd.eigenangles; }

std::vector<double> frobenius_eigenangles(const HyperellipticCurve& curve) {
  return zero_data(l_polynomial(curve)).eigenangles;
}

}  // namespace ffm::zeta
