#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ffm/ff/field.hpp"
#include "ffm/zeta/intpoly.hpp"

namespace ffm::zeta {

// y^2 = f(x), f monic squarefree of degree 2g+1 (one point at infinity).
struct HyperellipticCurve {
  ff::FieldSpec base;
  int genus = 0;
  ff::Poly f;
};

// Validates degree, monicity and squarefreeness. Throws InvalidArgument.
HyperellipticCurve make_curve(const ff::FieldSpec& base, ff::Poly f);

// Prime-field convenience: coefficients a_0..a_{2g+1} as integers.
HyperellipticCurve make_curve(std::uint32_t p, const std::vector<std::int64_t>& coeffs);

// #C(F_{q^n}) by enumeration of x.
std::uint64_t count_points(const HyperellipticCurve& curve, unsigned n,
                           std::uint64_t budget = ff::kDefaultEnumerationBudget);

// Same, reusing cached extension fields (the tower's base must be curve.base).
std::uint64_t count_points(const HyperellipticCurve& curve, unsigned n, ff::Tower& tower,
                           std::uint64_t budget = ff::kDefaultEnumerationBudget);

// Same, for a curve whose coefficients already live in `field` (degree-1 case, no embedding).
std::uint64_t count_points_in(const ff::Field& field, const ff::Poly& f,
                              std::uint64_t budget = ff::kDefaultEnumerationBudget);

struct LPolynomial {
  std::vector<BigInt> a{BigInt(1)};  // a_0..a_{2g}
  std::uint64_t q = 0;

  int genus() const { return static_cast<int>(a.size() - 1) / 2; }
  friend bool operator==(const LPolynomial&, const LPolynomial&) = default;
};

// Throws InternalError when a_0 != 1, the functional equation fails, or |a_1| > 2g sqrt(q).
void validate(const LPolynomial& P);

LPolynomial l_polynomial(const HyperellipticCurve& curve,
                         std::uint64_t budget = ff::kDefaultEnumerationBudget);

// counts[n-1] = #C(F_{q^n}) for n = 1..g.
LPolynomial l_polynomial_from_counts(std::uint64_t q, int genus, const std::vector<BigInt>& counts);

// Genus 0 (projective line): P = 1.
LPolynomial genus_zero(std::uint64_t q);

// #C(F_{q^n}) for n = 1..n_max predicted from P through power sums of the inverse zeros.
std::vector<BigInt> predicted_counts(const LPolynomial& P, unsigned n_max);

std::string to_string(const LPolynomial& P);

}  // namespace ffm::zeta
