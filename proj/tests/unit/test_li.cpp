#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ffm/core/rng.hpp"
#include "ffm/li/li.hpp"
#include "ffm/li/lll.hpp"
#include "ffm/zeta/curve.hpp"
#include "ffm/zeta/zeros.hpp"

using namespace ffm;
using namespace ffm::li;

namespace {

zeta::LPolynomial lp(std::uint64_t q, std::vector<long> a) {
  zeta::LPolynomial P;
  P.q = q;
  P.a.clear();
  for (long v : a) P.a.push_back(BigInt(v));
  return P;
}

BigRat dot(const std::vector<BigRat>& a, const std::vector<BigRat>& b) {
  BigRat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Exact Gram-Schmidt check of the LLL conditions.
bool is_lll_reduced(const IntMatrix& B, const BigRat& delta) {
  const std::size_t n = B.size();
  std::vector<std::vector<BigRat>> bs(n);
  std::vector<std::vector<BigRat>> mu(n, std::vector<BigRat>(n));
  std::vector<BigRat> norm(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<BigRat> v(B[i].begin(), B[i].end());
    bs[i] = v;
    for (std::size_t j = 0; j < i; ++j) {
      mu[i][j] = dot(v, bs[j]) / norm[j];
      for (std::size_t t = 0; t < v.size(); ++t) bs[i][t] -= mu[i][j] * bs[j][t];
      if (abs(mu[i][j]) > BigRat(1, 2)) return false;
    }
    norm[i] = dot(bs[i], bs[i]);
  }
  for (std::size_t i = 1; i < n; ++i)
    if (norm[i] < (delta - mu[i][i - 1] * mu[i][i - 1]) * norm[i - 1]) return false;
  return true;
}

// x with x B = v over Q, B square and invertible.
std::vector<BigRat> solve_left(const IntMatrix& B, const std::vector<BigInt>& v) {
  const std::size_t n = B.size();
  std::vector<std::vector<BigRat>> a(n, std::vector<BigRat>(n + 1));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) a[r][c] = B[c][r];
    a[r][n] = v[r];
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (a[piv][c] == 0) ++piv;
    std::swap(a[piv], a[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      BigRat f = a[r][c] / a[c][c];
      for (std::size_t t = c; t <= n; ++t) a[r][t] -= f * a[c][t];
    }
  }
  std::vector<BigRat> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n] / a[i][i];
  return x;
}

}  // namespace

TEST_SUITE("li") {
  TEST_CASE("LLL output is reduced and spans the same lattice") {
    auto gen = substream(5, 0);
    for (int trial = 0; trial < 10; ++trial) {
      IntMatrix B(4, std::vector<BigInt>(4));
      for (auto& row : B)
        for (auto& x : row) x = BigInt(static_cast<long>(uniform_below(gen, 2001)) - 1000);
      auto R = lll_reduce(B);
      CHECK(is_lll_reduced(R, BigRat(99, 100)));
      for (const auto& row : R)
        for (const auto& x : solve_left(B, row)) CHECK(denominator(x) == 1);
      for (const auto& row : B)
        for (const auto& x : solve_left(R, row)) CHECK(denominator(x) == 1);
    }
  }

  TEST_CASE("structural screen") {
    auto P1 = lp(3, {1, 0, 6, 0, 9});
    auto f1 = structural_li_screen(P1, zeta::zero_data(P1));
    CHECK(f1.repeated_zero);
    CHECK(f1.fails());
    auto P2 = lp(3, {1, 0, 3});
    auto f2 = structural_li_screen(P2, zeta::zero_data(P2));
    CHECK_FALSE(f2.fails());
    CHECK(f2.trace_zero);
    auto P3 = lp(5, {1, 3, 5});
    auto f3 = structural_li_screen(P3, zeta::zero_data(P3));
    CHECK_FALSE(f3.repeated_zero);
    CHECK_FALSE(f3.angle_zero_or_pi);
    CHECK_FALSE(f3.trace_zero);
    auto P4 = lp(9, {1, -6, 9});
    CHECK(structural_li_screen(P4, zeta::zero_data(P4)).angle_zero_or_pi);
  }

  TEST_CASE("relation search") {
    auto r1 = find_relation(PiMultiples{{{1, 2}}}, 100, 40);
    REQUIRE(r1);
    CHECK(r1->coeffs == std::vector<long>{2, -1});
    CHECK(r1->verify_residual < 1e-72);

    auto P = lp(5, {1, 3, 5});
    auto zd = zeta::zero_data(P);
    CHECK_FALSE(find_relation(CurveAngles{&zd}, 50, 30));

    auto r3 = find_relation(PiMultiples{{{1, 3}, {1, 2}}}, 10, 40);
    REQUIRE(r3);
    long check = 0;  // c1/3 + c2/2 + c_pi = 0 in units of pi
    check = 2 * r3->coeffs[0] + 3 * r3->coeffs[1] + 6 * r3->coeffs[2];
    CHECK(check == 0);
    for (long c : r3->coeffs) CHECK(std::abs(c) <= 10);
    CHECK_THROWS_AS(find_relation(PiMultiples{{{1, 2}}}, 0, 40), InvalidArgument);
  }

  TEST_CASE("monotone in the height bound") {
    for (long H : {2L, 5L, 50L, 100L}) CHECK(find_relation(PiMultiples{{{1, 2}}}, H, 30));
    for (long H : {3L, 10L, 100L}) CHECK(find_relation(PiMultiples{{{2, 3}, {1, 5}}}, H, 30));
  }

  TEST_CASE("li_report verdicts") {
    auto P1 = zeta::l_polynomial(zeta::make_curve(3, {0, 1, 0, 1}));
    auto r1 = li_report(P1, zeta::zero_data(P1));
    CHECK(r1.verdict == Verdict::relation_found);
    REQUIRE(r1.certificate);
    CHECK(r1.certificate->coeffs == std::vector<long>{2, -1});
    CHECK(to_string(r1.verdict) == "relation-found");

    auto P2 = zeta::l_polynomial(zeta::make_curve(5, {1, 1, 0, 1}));
    auto r2 = li_report(P2, zeta::zero_data(P2), 100, 40);
    CHECK(r2.verdict == Verdict::no_relation_found);
    CHECK(r2.label == "LI plausible up to (H=100, d=40)");

    auto P3 = lp(3, {1, 0, 6, 0, 9});
    CHECK(li_report(P3, zeta::zero_data(P3)).verdict == Verdict::fails_structural);
  }

  TEST_CASE("supersingular family y^2 = x^3 + a x, p = 3 mod 4") {
    for (std::uint32_t p : {3u, 7u, 11u}) {
      for (std::int64_t a = 1; a < p; ++a) {
        auto P = zeta::l_polynomial(zeta::make_curve(p, {0, a, 0, 1}));
        auto zd = zeta::zero_data(P);
        CHECK(zd.eigenangles[0] == doctest::Approx(std::numbers::pi / 2));
        auto rep = li_report(P, zd);
        CHECK(rep.verdict == Verdict::relation_found);
        REQUIRE(rep.certificate);
        CHECK(rep.certificate->verify_residual <= rep.certificate->residual);
      }
    }
  }
}
