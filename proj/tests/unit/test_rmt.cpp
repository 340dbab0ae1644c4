#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "ffm/core/errors.hpp"
#include "ffm/core/rng.hpp"
#include "ffm/rmt/hankel.hpp"
#include "ffm/rmt/probe.hpp"
#include "ffm/rmt/quadrature.hpp"
#include "ffm/rmt/special.hpp"
#include "ffm/rmt/weyl.hpp"

using namespace ffm;
using namespace ffm::rmt;

namespace {

constexpr double kPi = std::numbers::pi;

// Composite 30-point Gauss-Legendre on [a, b] split at the given interior cuts.
template <class F>
double composite(F&& f, double a, double b, std::vector<double> cuts = {}, int pieces = 4) {
  cuts.push_back(a);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  double s = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double h = (cuts[i + 1] - cuts[i]) / pieces;
    for (int k = 0; k < pieces; ++k)
      s += boost::math::quadrature::gauss<double, 30>::integrate(f, cuts[i] + k * h, cuts[i] + (k + 1) * h);
  }
  return s;
}

// Weyl density written out directly.
double density(const std::vector<double>& t) {
  const int N = static_cast<int>(t.size());
  double v = std::pow(2.0, N * N) / (std::tgamma(N + 1.0) * std::pow(kPi, N));
  for (int j = 0; j < N; ++j) {
    v *= std::sin(t[j]) * std::sin(t[j]);
    for (int k = j + 1; k < N; ++k) v *= std::pow(std::cos(t[j]) - std::cos(t[k]), 2);
  }
  return v;
}

// <|Z_U(theta)|^{2s}> by brute-force quadrature over the Weyl measure, N <= 2.
double weyl_average(int N, double s, double theta) {
  auto g = [&](const std::vector<double>& t) { return std::pow(zchar_abs_direct(t, theta), 2 * s) * density(t); };
  if (N == 1) return composite([&](double a) { return g({a}); }, 0, kPi, {theta});
  return composite(
      [&](double a) { return composite([&](double b) { return g({a, b}); }, 0, kPi, {theta}); }, 0, kPi, {theta});
}

std::vector<double> random_config(std::mt19937_64& gen, int N) {
  std::vector<double> t(N);
  for (auto& x : t) x = kPi * uniform01(gen);
  std::sort(t.begin(), t.end());
  return t;
}

}  // namespace

TEST_SUITE("rmt") {
  TEST_CASE("Weyl density") {
    CHECK(composite([](double a) { return std::exp(weyl_log_density({a})); }, 0, kPi) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::exp(weyl_log_density({1.0})) == doctest::Approx(2 / kPi * std::sin(1.0) * std::sin(1.0)));
    CHECK(weyl_log_density({1.0, 1.0}) == -INFINITY);
    const double two = composite(
        [](double a) { return composite([&](double b) { return std::exp(weyl_log_density({a, b})); }, 0, kPi); }, 0,
        kPi);
    CHECK(std::abs(two - 1.0) < 1e-6);
    auto gen = substream(1, 1);
    for (int i = 0; i < 20; ++i) {
      auto t = random_config(gen, 3);
      CHECK(std::exp(weyl_log_density(t)) == doctest::Approx(density(t)).epsilon(1e-12));
    }
  }

  TEST_CASE("characteristic polynomial modulus") {
    CHECK(zchar_abs({kPi / 2}, kPi / 2) == doctest::Approx(0.0));
    CHECK(zchar_abs({kPi / 2}, 0) == doctest::Approx(2.0));
    auto gen = substream(2, 0);
    for (int i = 0; i < 100; ++i) {
      auto t = random_config(gen, 1 + i % 6);
      const double th = kPi * uniform01(gen);
      const double a = zchar_abs(t, th), b = zchar_abs_direct(t, th);
      CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, b));
    }
  }

  TEST_CASE("phi") {
    CHECK(*phi_rmt({kPi / 2}) == doctest::Approx(1.0));
    CHECK(*phi_rmt({kPi / 6}) == doctest::Approx(2.0));
    CHECK_FALSE(phi_rmt({0.5, 0.5}));
    auto gen = substream(3, 0);
    for (int i = 0; i < 100; ++i) {
      auto t = random_config(gen, 1 + i % 5);
      auto a = phi_rmt(t), b = phi_rmt_derivative(t);
      REQUIRE(a);
      REQUIRE(b);
      CHECK(std::abs(*a - *b) <= 1e-10 * std::max(1.0, *a));
    }
  }

  TEST_CASE("Gauss-Jacobi rules") {
    for (auto [al, be] : {std::pair{0.5, 0.5}, {0.5, 2.0}, {1.0, 0.5}, {0.0, 0.0}, {4.5, 0.5}}) {
      const int n = 12;
      auto r = compute_gauss_jacobi<double>(n, al, be);
      for (int m = 0; m < 2 * n; ++m) {
        double s = 0;
        for (int i = 0; i < n; ++i) s += r.w[i] * std::pow(1 + r.x[i], m);
        const double exact = std::pow(2.0, al + be + m + 1) * beta_fn(al + 1, be + m + 1);
        CHECK(s == doctest::Approx(exact).epsilon(1e-12));
      }
    }
    auto r50 = compute_gauss_jacobi<Real50>(20, 0.5, 1.0);
    Real50 s = 0;
    for (std::size_t i = 0; i < r50.x.size(); ++i) s += r50.w[i];
    // 2^{5/2} B(3/2, 2) = 2^{5/2} * 4/15
    CHECK(static_cast<double>(abs(s - pow(Real50(2), Real50(2.5)) * 4 / 15)) < 1e-45);
  }

  TEST_CASE("graded panels tile the interval") {
    SingularWeight<double> w{{-1.0, 0.999, 1.0}, {0.5, 1.0, 0.5}};
    auto pn = graded_panels(w);
    CHECK(pn.front().lo == -1.0);
    CHECK(pn.back().hi == 1.0);
    for (std::size_t i = 1; i < pn.size(); ++i) CHECK(pn[i].lo == pn[i - 1].hi);
  }

  TEST_CASE("Hankel moment closed forms") {
    for (int i = 0; i < 50; ++i) {
      const double th = kPi * (i + 0.5) / 50;
      CHECK(std::abs(hankel_moment(1, 1, th).exact - (1 + 4 * std::cos(th) * std::cos(th))) < 1e-10);
    }
    CHECK(std::abs(hankel_moment(1, 0.5, kPi / 2).exact - 8 / (3 * kPi)) < 1e-9);
    CHECK(std::abs(hankel_moment(2, 1, kPi / 2).exact - weyl_average(2, 1, kPi / 2)) < 1e-8);
    CHECK_THROWS_AS(hankel_moment(1, 1, 0.0), InvalidArgument);
    CHECK_THROWS_AS(hankel_moment(25, 1, 1.0), Refusal);
  }

  TEST_CASE("Hankel moment against brute-force Weyl quadrature") {
    for (int N : {1, 2})
      for (double s : {0.5, 1.0, 2.0})
        for (double th : {kPi / 4, kPi / 2, 3 * kPi / 4}) {
          const double a = hankel_moment(N, s, th).exact, b = weyl_average(N, s, th);
          CHECK(std::abs(a - b) < 1e-7 * std::max(1.0, b));
        }
  }

  TEST_CASE("determinant basis invariance") {
    for (int N = 1; N <= 8; ++N)
      for (double th : {0.7, kPi / 2, 2.9}) CHECK(compare_bases(N, 0.5, th).relative_difference < 1e-30);
  }

  TEST_CASE("extended and double routes agree") {
    HankelOptions wide;
    wide.extended_above = 0;
    for (int N : {3, 6, 10}) {
      const double a = hankel_moment(N, 0.5, 1.1).exact;
      const double b = hankel_moment(N, 0.5, 1.1, wide).exact;
      CHECK(b == doctest::Approx(a).epsilon(1e-10));
    }
  }

  TEST_CASE("DIK closed form") {
    for (int N : {1, 4, 9}) {
      CHECK(dik_asymptotic(N, 1, kPi / 2) == doctest::Approx(N / 2.0).epsilon(1e-12));
      CHECK(dik_asymptotic(N, 1, kPi / 4) == doctest::Approx(double(N)).epsilon(1e-12));
      const double g12 = std::pow(2, 1 / 24.0) * std::exp(0.125) * std::pow(kPi, -0.25) * std::pow(kGlaisher, -1.5);
      const double g32 = std::tgamma(0.5) * g12;
      CHECK(dik_asymptotic(N, 0.5, kPi / 2) == doctest::Approx(std::pow(N, 0.25) / std::sqrt(2.0) * g32 * g32).epsilon(1e-10));
    }
  }

  TEST_CASE("Barnes G and Beta") {
    CHECK(barnes_g(1) == 1.0);
    CHECK(barnes_g(2) == 1.0);
    CHECK(barnes_g(3) == 1.0);
    CHECK(barnes_g(5) == 12.0);
    const double glaisher_form =
        std::pow(2, 1 / 24.0) * std::exp(0.125) * std::pow(kPi, -0.25) * std::pow(kGlaisher, -1.5);
    CHECK(std::abs(barnes_g(0.5) - glaisher_form) < 1e-10);
    // log G(1+z) = z/2 log(2 pi) - z(z+1)/2 + z log Gamma(1+z) - int_0^z log Gamma(1+x) dx, at z = -1/2
    const double integral =
        -boost::math::quadrature::gauss_kronrod<double, 31>::integrate([](double x) { return std::lgamma(1 + x); }, -0.5, 0.0);
    const double z = -0.5;
    const double lg = z / 2 * std::log(2 * kPi) - z * (z + 1) / 2 + z * std::lgamma(1 + z) - integral;
    CHECK(std::abs(barnes_g(0.5) - std::exp(lg)) < 1e-10);
    for (double x : {0.5, 1.5, 2.5, 3.7})
      CHECK(std::abs(barnes_g(x + 1) / barnes_g(x) - std::tgamma(x)) < 1e-10 * std::tgamma(x));
    CHECK_THROWS_AS(barnes_g(0.0), Refusal);
    CHECK(beta_fn(0.3, 1.7) == doctest::Approx(beta_fn(1.7, 0.3)).epsilon(1e-14));
    boost::math::quadrature::tanh_sinh<double> ts;
    // two-argument form: on the right half tc = 1 - t without cancellation
    const double b = ts.integrate(
        [](double t, double tc) { return std::pow(t, -0.375) * std::pow(t <= 0.5 ? 1 - t : tc, -0.5); }, 0.0, 1.0,
        1e-15);
    CHECK(beta_fn(0.625, 0.5) == doctest::Approx(b).epsilon(1e-10));
  }

  TEST_CASE("moment ratio approaches one") {
    for (double s : {0.5, 1.0}) {
      const double r4 = hankel_moment(4, s, kPi / 2).ratio, r16 = hankel_moment(16, s, kPi / 2).ratio;
      CHECK(r16 >= 0.8);
      CHECK(r16 <= 1.25);
      CHECK(std::abs(r16 - 1) < std::abs(r4 - 1));
    }
  }

  TEST_CASE("Weyl sampler") {
    ChainParams cp;
    cp.samples = 100000;
    std::vector<double> th;
    auto diag = mc_sample_weyl(1, cp, 11, [&](const std::vector<double>& a) { th.push_back(a[0]); });
    // Kolmogorov-Smirnov against F(t) = (t - sin t cos t) / pi
    std::sort(th.begin(), th.end());
    double Dn = 0;
    const double n = double(th.size());
    for (std::size_t i = 0; i < th.size(); ++i) {
      const double F = (th[i] - std::sin(th[i]) * std::cos(th[i])) / kPi;
      Dn = std::max({Dn, F - i / n, (i + 1) / n - F});
    }
    const double lam = (std::sqrt(n) + 0.12 + 0.11 / std::sqrt(n)) * Dn;
    double pval = 0;
    for (int k = 1; k <= 100; ++k) pval += 2 * (k % 2 ? 1 : -1) * std::exp(-2.0 * k * k * lam * lam);
    CHECK(pval > 0.01);
    CHECK(std::abs(diag.mean_trace) < 3 * diag.se_trace);
    CHECK(diag.warnings.empty());

    ChainParams small;
    small.samples = 200;
    auto a = mc_sample_weyl(3, small, 5), b = mc_sample_weyl(3, small, 5);
    CHECK(a == b);
    for (const auto& cfg : a) CHECK(std::is_sorted(cfg.begin(), cfg.end()));
    ChainParams mid;
    mid.samples = 20000;
    auto d4 = mc_sample_weyl(4, mid, 3, nullptr);
    CHECK(d4.warnings.empty());
    CHECK_THROWS_AS(mc_sample_weyl(13, small, 1), Refusal);
  }

  TEST_CASE("truncated phi by Monte Carlo") {
    auto e = mc_phi_truncated(1, 4, 100000, 21);
    CHECK(std::abs(e.mean - haar_truncated_phi_usp2(4)) < 3 * e.standard_error);
    CHECK(haar_truncated_phi_usp2(4) == doctest::Approx(1.2328).epsilon(1e-4));
    auto inf = mc_phi_truncated(1, INFINITY, 100000, 22);
    CHECK(std::abs(inf.mean - 4 / kPi) < 3 * inf.standard_error);
    CHECK(mc_phi_truncated(1, 0, 1000, 1).mean == 0.0);
  }

  TEST_CASE("I(N)") {
    CHECK(std::abs(i_of_n(1) - 4 / kPi) < 1e-9);
    auto e = mc_phi_truncated(2, INFINITY, 100000, 23);
    CHECK(std::abs(i_of_n(2) - e.mean) < 3 * e.standard_error);
    // the reduction by direct quadrature at N = 2: (2/pi) int sin(t) <|Z(t)|>_{USp(2)} dt
    const double direct = 2 / kPi * composite([](double t) { return std::sin(t) * weyl_average(1, 0.5, t); }, 0, kPi);
    CHECK(i_of_n(2) == doctest::Approx(direct).epsilon(1e-8));
  }

  TEST_CASE("error probe") {
    std::vector<double> e;
    for (int N : {4, 8, 16}) e.push_back(std::abs(error_probe(N, {kPi / 2}).rows[0].epsilon));
    CHECK(e[1] < e[0]);
    CHECK(e[2] < e[1]);
    auto pr = error_probe(8, {1 / 64.0, 0.5, kPi / 2});
    CHECK(std::abs(pr.rows[0].epsilon) > std::abs(pr.rows[2].epsilon));
    // endpoint value by brute force at N = 1: (2/pi) int 2(1 - cos t) sin^2 t dt = 2
    CHECK(hankel_moment_endpoint(1, 0.5) == doctest::Approx(composite([](double t) {
                                              return std::pow(zchar_abs_direct({t}, 0), 1) * density({t});
                                            }, 0, kPi)).epsilon(1e-12));
    CHECK(hankel_moment_endpoint(2, 0.5) == doctest::Approx(weyl_average(2, 0.5, 0.0)).epsilon(1e-9));
  }

  TEST_CASE("Andreief identity") {
    CHECK(andreief_check(1, {1, 0}) < 1e-14);
    CHECK(andreief_check(2, {1, 0}) < 1e-8);
    CHECK(andreief_check(3, {0, 0}) < 1e-7);
    CHECK(andreief_check(2, {0.5, 0.3}) < 1e-8);
    CHECK_THROWS_AS(andreief_check(4, {1, 0}), InvalidArgument);
  }
}
