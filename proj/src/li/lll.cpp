#include "ffm/li/lll.hpp"

#include "ffm/core/errors.hpp"

namespace ffm::li {

namespace {

BigInt dot(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
  BigInt s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// nearest integer to a/b, b > 0
BigInt round_div(const BigInt& a, const BigInt& b) {
  BigInt num = 2 * a + b;
  BigInt den = 2 * b;
  BigInt q = num / den;
  if (num % den != 0 && num < 0) q -= 1;  // floor
  return q;
}

}  // namespace

// Cohen, integral LLL; indices are 0-based with d_[i+1] the Gram determinant of b_0..b_i.
IntMatrix lll_reduce(IntMatrix b, long delta_num, long delta_den) {
  const std::size_t n = b.size();
  if (n <= 1) return b;
  std::vector<BigInt> d(n + 1, BigInt(0));
  std::vector<std::vector<BigInt>> lam(n, std::vector<BigInt>(n, BigInt(0)));
  d[0] = 1;
  d[1] = dot(b[0], b[0]);
  if (d[1] == 0) throw InvalidArgument("lattice basis is dependent");

  auto red = [&](std::size_t k, std::size_t l) {
    if (2 * boost::multiprecision::abs(lam[k][l]) > d[l + 1]) {
      BigInt qq = round_div(lam[k][l], d[l + 1]);
      for (std::size_t i = 0; i < b[k].size(); ++i) b[k][i] -= qq * b[l][i];
      lam[k][l] -= qq * d[l + 1];
      for (std::size_t i = 0; i < l; ++i) lam[k][i] -= qq * lam[l][i];
    }
  };
  auto swap = [&](std::size_t k, std::size_t kmax) {
    std::swap(b[k], b[k - 1]);
    for (std::size_t j = 0; j + 1 < k; ++j) std::swap(lam[k][j], lam[k - 1][j]);
    BigInt L = lam[k][k - 1];
    BigInt B = (d[k - 1] * d[k + 1] + L * L) / d[k];
    for (std::size_t i = k + 1; i <= kmax; ++i) {
      BigInt t = lam[i][k];
      lam[i][k] = (d[k + 1] * lam[i][k - 1] - L * t) / d[k];
      lam[i][k - 1] = (B * t + L * lam[i][k]) / d[k + 1];
    }
    d[k] = B;
  };

  std::size_t k = 1, kmax = 0;
  while (k < n) {
    if (k > kmax) {
      kmax = k;
      for (std::size_t j = 0; j <= k; ++j) {
        BigInt u = dot(b[k], b[j]);
        for (std::size_t i = 0; i < j; ++i) u = (d[i + 1] * u - lam[k][i] * lam[j][i]) / d[i];
        if (j < k) {
          lam[k][j] = u;
        } else {
          d[k + 1] = u;
          if (u == 0) throw InvalidArgument("lattice basis is dependent");
        }
      }
    }
    red(k, k - 1);
    // Lovasz: d_{k+1} d_{k-1} >= delta d_k^2 - lambda^2
    const BigInt& L = lam[k][k - 1];
    if (delta_den * d[k + 1] * d[k - 1] < delta_num * d[k] * d[k] - delta_den * L * L) {
      swap(k, kmax);
      if (k > 1) --k;
    } else {
      for (std::size_t l = k - 1; l-- > 0;) red(k, l);
      ++k;
    }
  }
  return b;
}

}  // namespace ffm::li
