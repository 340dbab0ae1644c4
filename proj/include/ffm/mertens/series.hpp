#pragma once

#include <cstdint>
#include <vector>

#include "ffm/zeta/curve.hpp"

namespace ffm::mertens {

enum class SeriesSource { rational_function, divisor_oracle };

struct MoebiusSeries {
  std::vector<BigInt> c;  // c_mu(0..N_max)
  std::vector<BigInt> M;  // partial sums, M(X) = sum_{N<=X} c(N)
  SeriesSource source = SeriesSource::rational_function;
};

// Expansion of (1-u)(1-qu)/P(u).
MoebiusSeries c_mu_rational(const zeta::LPolynomial& P, std::size_t n_max);

// counts[n-1] = #C(F_{q^n}), n = 1..N_max. Goes through closed points and
// effective divisors, never through P.
MoebiusSeries c_mu_from_counts(const std::vector<BigInt>& counts, std::size_t n_max);

int moebius(std::uint64_t n);

// Closed points of degree d = 1..counts.size().
std::vector<BigInt> closed_point_counts(const std::vector<BigInt>& counts);

// b_N = #{effective divisors of degree N}, N = 0..n_max.
std::vector<BigInt> effective_divisor_counts(const std::vector<BigInt>& closed_points, std::size_t n_max);

struct OracleCounts {
  std::vector<BigInt> counts;      // n = 1..N_max
  unsigned brute_force_up_to = 0;  // counts for n <= this were enumerated
};

// Enumerates #C(F_{q^n}) while q^n <= brute_budget; larger n are predicted
// from the L-polynomial of the enumerated counts. Every enumerated count with
// n > g is checked against that prediction.
OracleCounts oracle_point_counts(const zeta::HyperellipticCurve& curve, std::size_t n_max,
                                 std::uint64_t brute_budget = std::uint64_t{1} << 16);

MoebiusSeries c_mu_oracle(const zeta::HyperellipticCurve& curve, std::size_t n_max,
                          std::uint64_t brute_budget = std::uint64_t{1} << 16);

// Projective line: #P^1(F_{q^n}) = q^n + 1.
MoebiusSeries c_mu_oracle_genus_zero(std::uint64_t q, std::size_t n_max);

// v * exp(-log_scale) without overflow.
double scaled(const BigInt& v, double log_scale);

// Streams c_mu(N), M(N) for N = 0, 1, ... with O(g) memory.
class MoebiusStream {
 public:
  explicit MoebiusStream(const zeta::LPolynomial& P);
  long index() const { return n_; }  // index of the current value
  const BigInt& c() const { return c_hist_.back(); }
  const BigInt& M() const { return m_; }
  void advance();

 private:
  std::vector<BigInt> a_;
  std::vector<BigInt> c_hist_;  // last 2g+1 values, newest last
  BigInt e1_, e2_;
  BigInt m_;
  long n_ = 0;
};

}  // namespace ffm::mertens
