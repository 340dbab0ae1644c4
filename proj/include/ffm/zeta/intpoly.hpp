#pragma once

#include <string>
#include <type_traits>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace ffm {

using BigInt = boost::multiprecision::mpz_int;
using BigRat = boost::multiprecision::mpq_rational;

// Dense polynomial, constant term first.
using IntPoly = std::vector<BigInt>;

struct SquarefreeFactor {
  IntPoly poly;      // primitive, positive constant term, squarefree
  int multiplicity;  // exponent in the input
};

// Exact decomposition p = c * prod f_i^{m_i} over Q with pairwise coprime
// squarefree f_i (Yun's algorithm). Factors come out with increasing multiplicity.
std::vector<SquarefreeFactor> squarefree_decomposition(const IntPoly& p);

IntPoly poly_mul(const IntPoly& a, const IntPoly& b);
IntPoly poly_pow(const IntPoly& a, unsigned e);

// Value at u = sign / sqrt(q) is zero, decided exactly.
bool vanishes_at_inverse_sqrt(const IntPoly& f, std::uint64_t q, int sign);

inline double to_double(const BigInt& v) { return v.convert_to<double>(); }

template <class R>
R to_real(const BigInt& v) {
  if constexpr (std::is_same_v<R, double>) {
    return v.convert_to<double>();
  } else {
    return R(v.str());
  }
}

}  // namespace ffm
