#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "ffm/core/errors.hpp"
#include "ffm/ff/field.hpp"
#include "ffm/mertens/growth.hpp"
#include "ffm/mertens/residue.hpp"
#include "ffm/mertens/series.hpp"
#include "ffm/zeta/curve.hpp"
#include "ffm/zeta/zeros.hpp"

using namespace ffm;
using namespace ffm::mertens;

namespace {

zeta::LPolynomial lp(std::uint64_t q, std::vector<long> a) {
  zeta::LPolynomial P;
  P.q = q;
  P.a.clear();
  for (long v : a) P.a.push_back(BigInt(v));
  return P;
}

std::vector<long> as_long(const std::vector<BigInt>& v, std::size_t n) {
  std::vector<long> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(v[i].convert_to<long>());
  return out;
}

// gamma^{N+1} / Z'(1/gamma), Z = P / ((1-u)(1-qu)), by the quotient rule.
std::complex<double> simple_residue(const zeta::LPolynomial& P, std::complex<double> g, long N) {
  using C = std::complex<double>;
  const C u = 1.0 / g;
  C p = 0, dp = 0;
  for (std::size_t j = P.a.size(); j-- > 0;) {
    dp = dp * u + p;
    p = p * u + to_double(P.a[j]);
  }
  const double q = double(P.q);
  const C den = (1.0 - u) * (1.0 - q * u);
  const C dden = -(1.0 - q * u) - q * (1.0 - u);
  const C dz = (dp * den - p * dden) / (den * den);
  return std::pow(g, double(N + 1)) / dz;
}

}  // namespace

TEST_SUITE("mertens") {
  TEST_CASE("rational route examples") {
    for (std::uint64_t q : {3u, 5u, 9u}) {
      auto s = c_mu_rational(zeta::genus_zero(q), 8);
      CHECK(as_long(s.c, 9) == std::vector<long>{1, -long(q) - 1, long(q), 0, 0, 0, 0, 0, 0});
    }
    auto s1 = c_mu_rational(lp(3, {1, 0, 3}), 6);
    CHECK(as_long(s1.c, 6) == std::vector<long>{1, -4, 0, 12, 0, -36});
    CHECK(as_long(s1.M, 6) == std::vector<long>{1, -3, -3, 9, 9, -27});
    auto s2 = c_mu_rational(lp(5, {1, 3, 5}), 4);
    CHECK(as_long(s2.c, 5) == std::vector<long>{1, -9, 27, -36, -27});
    CHECK(s2.source == SeriesSource::rational_function);
  }

  TEST_CASE("divisor oracle") {
    // P^1 over F_3: b_N = (3^{N+1} - 1)/2
    std::vector<BigInt> counts;
    for (int n = 1; n <= 6; ++n) counts.push_back(BigInt(std::pow(3, n) + 1));
    auto cp = closed_point_counts(counts);
    // independent: monic irreducibles of each degree, plus the point at infinity in degree 1
    for (std::uint32_t d = 1; d <= 6; ++d) {
      std::uint64_t total = 1;
      for (std::uint32_t i = 0; i < d; ++i) total *= 3;
      long irr = 0;
      for (std::uint64_t j = 0; j < total; ++j) {
        std::vector<std::uint32_t> poly(d + 1);
        std::uint64_t t = j;
        for (std::uint32_t i = 0; i < d; ++i) {
          poly[i] = static_cast<std::uint32_t>(t % 3);
          t /= 3;
        }
        poly[d] = 1;
        irr += ff::is_irreducible(3, poly);
      }
      CHECK(cp[d - 1] == irr + (d == 1 ? 1 : 0));
    }
    auto b = effective_divisor_counts(cp, 3);
    CHECK(as_long(b, 4) == std::vector<long>{1, 4, 13, 40});
    auto o = c_mu_oracle_genus_zero(3, 5);
    CHECK(as_long(o.c, 4) == std::vector<long>{1, -4, 3, 0});
    CHECK(o.source == SeriesSource::divisor_oracle);

    auto curve = zeta::make_curve(5, {1, 1, 0, 1});
    auto rat = c_mu_rational(zeta::l_polynomial(curve), 12);
    auto orc = c_mu_oracle(curve, 12);
    CHECK(rat.c == orc.c);
    CHECK(rat.M == orc.M);
    auto zero = c_mu_oracle(curve, 0);
    CHECK(as_long(zero.c, 1) == std::vector<long>{1});
  }

  TEST_CASE("oracle counts cross-checked beyond the genus") {
    auto curve = zeta::make_curve(3, {1, 0, 1, 0, 0, 1});
    auto oc = oracle_point_counts(curve, 10, 1 << 12);
    CHECK(oc.brute_force_up_to >= 3);
    auto pred = zeta::predicted_counts(zeta::l_polynomial(curve), 10);
    CHECK(oc.counts == pred);
  }

  TEST_CASE("first coefficients count closed points") {
    ff::Field f(ff::make_field(5));
    for (std::uint64_t i = 0; i < 125; i += 3) {
      ff::Poly g{f.from_index(i % 5), f.from_index(i / 5 % 5), f.from_index(i / 25), f.one()};
      if (!ff::is_squarefree(f, g)) continue;
      auto curve = zeta::make_curve(f.spec(), g);
      const BigInt n1(zeta::count_points(curve, 1)), n2(zeta::count_points(curve, 2));
      auto s = c_mu_rational(zeta::l_polynomial(curve), 2);
      CHECK(s.c[1] == -n1);
      const BigInt deg2 = (n2 - n1) / 2;
      CHECK(s.c[2] == n1 * (n1 - 1) / 2 - deg2);
    }
  }

  TEST_CASE("simple residues match gamma^{N+1}/Z'(1/gamma)") {
    auto P = lp(5, {1, 3, 5});
    auto zd = zeta::zero_data(P);
    for (long N : {1L, 5L, 17L}) {
      for (const auto& z : zd.zeros) {
        auto r = residue_term<double>(P, Cx<double>(z.gamma.real(), z.gamma.imag()), 1, N);
        auto ref = simple_residue(P, z.gamma, N);
        CHECK(std::abs(r.to_complex() - ref) < 1e-9 * std::abs(ref));
      }
    }
  }

  TEST_CASE("residue bound") {
    auto P = lp(3, {1, 0, 3});
    auto zd = zeta::zero_data(P);
    auto s = c_mu_rational(P, 200);
    const double bound = residue_bound(P);
    CHECK(bound == doctest::Approx(2 * 4 / std::pow(std::sqrt(3.0) - 1, 2)));
    for (long N = 2; N <= 200; N += 2) {
      CHECK(std::abs(residue_sum(P, zd, N).imag()) < 1e-6 * std::abs(residue_sum(P, zd, N).real()) + 1e-9);
      CHECK(residue_defect(P, zd, s.c[N], N) <= bound);
    }
    auto P2 = lp(5, {1, 3, 5});
    auto s2 = c_mu_rational(P2, 10);
    CHECK(residue_defect(P2, zeta::zero_data(P2), s2.c[10], 10) <= residue_bound(P2));
    // genus 0: empty sum
    auto z0 = zeta::zero_data(zeta::genus_zero(3));
    CHECK(residue_sum(zeta::genus_zero(3), z0, 5) == std::complex<double>(0, 0));
    // repeated zeros, (1 + 3u^2)^2
    auto P3 = lp(3, {1, 0, 6, 0, 9});
    auto z3 = zeta::zero_data(P3);
    auto s3 = c_mu_rational(P3, 200);
    for (long N = 1; N <= 200; ++N) CHECK(residue_defect(P3, z3, s3.c[N], N) <= residue_bound(P3));
  }

  TEST_CASE("main term") {
    auto P = lp(3, {1, 0, 3});
    auto zd = zeta::zero_data(P);
    auto s = c_mu_rational(P, 60);
    for (long X = 3; X <= 59; X += 4) {
      CHECK(s.M[X] == boost::multiprecision::pow(BigInt(3), (X + 1) / 2));
      CHECK(asymptotic_main_term(P, zd, X) == doctest::Approx(asymptotic_main_term(P, zd, X + 4)).epsilon(1e-9));
    }
    CHECK(asymptotic_main_term(zeta::genus_zero(5), zeta::zero_data(zeta::genus_zero(5)), 10) == 0.0);

    auto P2 = lp(5, {1, 3, 5});
    auto z2 = zeta::zero_data(P2);
    auto s2 = c_mu_rational(P2, 100);
    double worst = 0;
    for (long X = 50; X <= 100; ++X)
      worst = std::max(worst, std::abs(scaled(s2.M[X], 0.5 * X * std::log(5.0)) - asymptotic_main_term(P2, z2, X)));
    CHECK(worst < 0.01);
    auto ct = cosine_terms(P2, z2);
    REQUIRE(ct.size() == 1);
    CHECK(2 * ct[0].amplitude / std::sqrt(5.0) == doctest::Approx(bound_D(P2, z2)));
  }

  TEST_CASE("growth report") {
    auto P = lp(3, {1, 0, 3});
    auto rep = growth_report(P, zeta::zero_data(P));
    CHECK(rep.B_hat_plus == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.D == doctest::Approx(2 / std::sqrt(3.0)).epsilon(1e-12));
    CHECK(rep.strictly_below);
    CHECK(rep.argmax_X % 4 == 3);
    auto g0 = growth_report(zeta::genus_zero(3), zeta::zero_data(zeta::genus_zero(3)));
    CHECK(g0.B_hat_plus == 0.0);
    CHECK(g0.D == 0.0);
    CHECK(growth_report(P, zeta::zero_data(P), 10, 100).window_too_small);

    // B_hat_plus <= D on simple-zero curves
    ff::Field f(ff::make_field(5));
    int tested = 0;
    for (std::uint64_t i = 1; i < 3125 && tested < 25; i += 37) {
      ff::Poly g;
      std::uint64_t t = i;
      for (int j = 0; j < 5; ++j) {
        g.push_back(f.from_index(t % 5));
        t /= 5;
      }
      g.push_back(f.one());
      if (!ff::is_squarefree(f, g)) continue;
      auto P2 = zeta::l_polynomial(zeta::make_curve(f.spec(), g));
      auto zd = zeta::zero_data(P2);
      if (!zd.all_simple() || zd.has_real_zero()) continue;
      auto r = growth_report(P2, zd, 50, 600);
      CHECK(r.B_hat_plus <= r.D + 1e-6);
      ++tested;
    }
    CHECK(tested >= 20);
  }

  TEST_CASE("limiting distribution") {
    auto P = lp(3, {1, 0, 3});
    auto h = limiting_histogram(P, zeta::zero_data(P), 1000);
    const double r3 = std::sqrt(3.0);
    for (double v : h.values) {
      double d = std::min({std::abs(v - r3), std::abs(v + r3), std::abs(v - 1), std::abs(v + 1)});
      CHECK(d < 1e-9);
    }
    auto h0 = limiting_histogram(zeta::genus_zero(3), zeta::zero_data(zeta::genus_zero(3)), 1000);
    for (std::size_t i = 1; i < h0.values.size(); ++i) CHECK(h0.values[i] == 0.0);

    auto P2 = lp(5, {1, 3, 5});
    auto z2 = zeta::zero_data(P2);
    auto h2 = limiting_histogram(P2, z2, 10000);
    for (double xi : {0.5, 1.0, 2.0, 4.0, 8.0})
      CHECK(std::abs(empirical_cf(h2.values, xi) - bessel_mu_hat(P2, z2, xi)) < 5.0 / std::sqrt(10000.0));
  }

  TEST_CASE("Bessel J0") {
    for (double z0 : {2.404825557695773, 5.520078110286311, 8.653727912911013, 11.791534439014281,
                      14.930917708487787, 18.071063967910923})
      CHECK(std::abs(bessel_j0(z0)) < 1e-10);
    for (double z = 0; z <= 40; z += 0.37) CHECK(std::abs(bessel_j0(z) - std::cyl_bessel_j(0.0, z)) < 1e-10);
    CHECK(bessel_j0(0) == 1.0);
  }

  TEST_CASE("Bessel product") {
    auto P = lp(5, {1, 3, 5});
    auto zd = zeta::zero_data(P);
    CHECK(bessel_mu_hat(P, zd, 0) == 1.0);
    const double a = cosine_terms(P, zd)[0].amplitude;
    CHECK(std::abs(bessel_mu_hat(P, zd, 2.404825557695773 / (2 * a))) < 1e-9);
    auto P3 = lp(3, {1, 0, 6, 0, 9});
    CHECK_THROWS_AS(bessel_mu_hat(P3, zeta::zero_data(P3), 1.0), Refusal);
  }

  TEST_CASE("weighted geometric series ratio") {
    CHECK(std::abs(lemma_series_ratio(2.0, 0, 30) - 2.0) < 1e-8);
    const std::complex<double> b(0, std::sqrt(3.0));
    CHECK(std::abs(lemma_series_ratio(b, 1, 10000) - b / (b - 1.0)) < 1e-3);
    CHECK_THROWS_AS(lemma_series_ratio(1.0, 0, 10), Refusal);
  }
}
