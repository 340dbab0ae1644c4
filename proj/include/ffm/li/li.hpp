#pragma once

#include <optional>
#include <string>
#include <vector>

#include <mpfr.h>

#include "ffm/core/precision.hpp"
#include "ffm/li/lll.hpp"
#include "ffm/zeta/zeros.hpp"

namespace ffm::li {

enum class Verdict { fails_structural, relation_found, no_relation_found };

std::string to_string(Verdict v);

struct StructuralFlags {
  bool repeated_zero = false;
  bool angle_zero_or_pi = false;
  bool trace_zero = false;  // a_1 = 0; an obstruction to one sufficient criterion, not a disproof

  bool fails() const { return repeated_zero || angle_zero_or_pi; }
};

struct Relation {
  std::vector<long> coeffs;  // c_1..c_m, c_pi
  double residual = 0;        // at working precision
  double verify_residual = 0; // at twice the working precision
};

struct LIReport {
  Verdict verdict = Verdict::no_relation_found;
  std::optional<Relation> certificate;
  long H = 100;
  unsigned d = 40;
  StructuralFlags flags;
  std::string label;
};

inline constexpr long kDefaultHeight = 100;
inline constexpr unsigned kDefaultDigits = 40;

StructuralFlags structural_li_screen(const zeta::LPolynomial& P, const zeta::ZeroData& zd);

// Angle sources supply the angles at any precision R.
struct CurveAngles {
  const zeta::ZeroData* zd;
  template <class R>
  std::vector<R> angles() const {
    auto zs = zeta::polish_zeros<R>(*zd);
    std::vector<R> out;
    for (std::size_t i = 0; i < zs.size(); ++i) {
      const auto& z = zd->zeros[i];
      if (z.real_sign == 0 && z.gamma.imag() > 0)
        for (int m = 0; m < z.order; ++m) out.push_back(zs[i].arg());
    }
    return out;
  }
};

// Rational multiples num/den * pi, for tests and controls.
struct PiMultiples {
  std::vector<std::pair<long, long>> fractions;
  template <class R>
  std::vector<R> angles() const {
    std::vector<R> out;
    for (auto [n, d] : fractions) out.push_back(pi_v<R>() * R(n) / R(d));
    return out;
  }
};

namespace detail {

template <class R>
BigInt round_to_int(const R& x) {
  BigInt z;
  mpfr_get_z(z.backend().data(), x.backend().data(), MPFR_RNDN);
  return z;
}

template <class R>
R relation_residual(const std::vector<R>& theta, const std::vector<long>& c) {
  using std::abs;
  R acc = R(c.back()) * pi_v<R>();
  for (std::size_t i = 0; i < theta.size(); ++i) acc += R(c[i]) * theta[i];
  return abs(acc);
}

inline unsigned working_digits(unsigned d) { return std::max(2 * d, d + 10); }

}  // namespace detail

// Searches for an integer relation sum c_j theta_j + c_pi pi = 0 with max|c| <= H
// using lattice reduction at scale 10^d. Certificates are re-verified at twice the precision.
template <class Source>
std::optional<Relation> find_relation(const Source& src, long H, unsigned d) {
  if (H < 1) throw InvalidArgument("height bound must be positive");
  if (d < 8) throw InvalidArgument("relation search needs at least 8 digits");
  const unsigned work = detail::working_digits(d);
  std::vector<std::pair<std::vector<long>, double>> candidates;
  with_digits(work, [&]<class R>() {
    using std::pow;
    auto theta = src.template angles<R>();
    const std::size_t m = theta.size();
    if (m == 0) return 0;
    BigInt scale = boost::multiprecision::pow(BigInt(10), d);
    const R rscale = pow(R(10), static_cast<int>(d));
    IntMatrix basis(m + 1, std::vector<BigInt>(m + 2, BigInt(0)));
    for (std::size_t i = 0; i < m; ++i) {
      basis[i][i] = 1;
      basis[i][m + 1] = detail::round_to_int<R>(theta[i] / pi_v<R>() * rscale);
    }
    basis[m][m] = 1;
    basis[m][m + 1] = scale;
    auto reduced = lll_reduce(std::move(basis));
    const R threshold = pow(R(10), -static_cast<int>(d) + 4);
    for (const auto& row : reduced) {
      std::vector<long> c(m + 1);
      bool nonzero = false, bounded = true;
      for (std::size_t i = 0; i <= m; ++i) {
        if (boost::multiprecision::abs(row[i]) > H) {
          bounded = false;
          break;
        }
        c[i] = row[i].convert_to<long>();
        nonzero |= c[i] != 0;
      }
      if (!nonzero || !bounded) continue;
      for (long v : c) {
        if (v == 0) continue;
        if (v < 0)
          for (auto& x : c) x = -x;
        break;
      }
      R res = detail::relation_residual<R>(theta, c);
      if (res < threshold) candidates.emplace_back(c, static_cast<double>(res));
    }
    return 0;
  });
  for (auto& [c, res] : candidates) {
    double vres = with_digits(2 * work, [&]<class R>() {
      auto theta = src.template angles<R>();
      return static_cast<double>(detail::relation_residual<R>(theta, c));
    });
    // a genuine relation keeps shrinking with the precision
    if (vres < std::pow(10.0, -2.0 * (static_cast<double>(d) - 4.0))) return Relation{c, res, vres};
  }
  return std::nullopt;
}

LIReport li_report(const zeta::LPolynomial& P, const zeta::ZeroData& zd, long H = kDefaultHeight,
                   unsigned d = kDefaultDigits);

// Structural screen only, no relation search.
LIReport li_screen_report(const zeta::LPolynomial& P, const zeta::ZeroData& zd);

}  // namespace ffm::li
