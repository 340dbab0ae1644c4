#include "ffm/rmt/probe.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "ffm/core/parallel.hpp"

namespace ffm::rmt {

double i_of_n(int N, const HankelOptions& opts) {
  if (N < 1) throw InvalidArgument("N must be positive");
  if (N == 1) return 4.0 / std::numbers::pi;
  // t = cos(theta); the integrand is symmetric under t -> -t
  const int M = N - 1;
  const double f0 = hankel_moment_endpoint(M, 0.5, opts);
  auto F = [&](double t) {
    if (1.0 - t < 1e-12) return f0;
    return hankel_moment_y(M, 0.5, t, opts);
  };
  boost::math::quadrature::tanh_sinh<double> ts;
  double err = 0;
  const double v = ts.integrate(F, 0.0, 1.0, 1e-10, &err);
  return 4.0 / std::numbers::pi * v;
}

ErrorProbe error_probe(int N, const std::vector<double>& thetas, unsigned workers, const HankelOptions& opts) {
  ErrorProbe out;
  out.N = N;
  out.rows = parallel_map<ProbeRow>(thetas.size(), workers, [&](std::size_t i) {
    const MomentResult m = hankel_moment(N, 0.5, thetas[i], opts);
    return ProbeRow{thetas[i], m.exact, m.asymptotic, m.ratio - 1.0};
  });
  out.f0 = hankel_moment_endpoint(N, 0.5, opts);
  out.f0_over_N = out.f0 / N;
  return out;
}

double andreief_check(int N, const AndreiefWeight& wt) {
  if (N < 1 || N > 3) throw InvalidArgument("andreief_check is limited to N <= 3");
  if (!(wt.y > -1 && wt.y < 1)) throw InvalidArgument("y must lie in (-1, 1)");
  // N-fold side: x = sin(phi), so sqrt(1 - x^2) dx = cos^2(phi) dphi; Gauss-Legendre
  // panels in phi split where the |x - y| factor is not smooth.
  const auto& gl = gauss_jacobi<double>(48, 0.0, 0.0);
  std::vector<double> cuts{-std::numbers::pi / 2};
  if (wt.s != 0) cuts.push_back(std::asin(wt.y));
  cuts.push_back(std::numbers::pi / 2);
  std::vector<double> xs, ws;
  for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
    const double h = (cuts[p + 1] - cuts[p]) / 2, mid = (cuts[p + 1] + cuts[p]) / 2;
    for (std::size_t i = 0; i < gl.x.size(); ++i) {
      const double phi = mid + h * gl.x[i];
      const double x = std::sin(phi);
      const double c = std::cos(phi);
      xs.push_back(x);
      ws.push_back(gl.w[i] * h * c * c * std::pow(std::abs(x - wt.y), 2 * wt.s));
    }
  }
  const std::size_t m = xs.size();
  double lhs = 0;
  std::vector<std::size_t> idx(N, 0);
  for (;;) {
    double v = 1;
    for (int a = 0; a < N; ++a) {
      v *= ws[idx[a]];
      for (int b = a + 1; b < N; ++b) {
        const double d = xs[idx[b]] - xs[idx[a]];
        v *= d * d;
      }
    }
    lhs += v;
    int a = 0;
    while (a < N && ++idx[a] == m) idx[a++] = 0;
    if (a == N) break;
  }
  lhs /= std::tgamma(N + 1.0);

  // 1-D side: Jacobi-matched measure and the moment determinant
  SingularWeight<double> w1 = wt.s == 0 ? SingularWeight<double>{{-1.0, 1.0}, {0.5, 0.5}}
                                        : moment_weight<double>(wt.s, wt.y);
  const auto meas = build_measure<double>(w1, 32);
  const double rhs = std::exp(hankel_logdet<double>(N, meas, DeterminantBasis::monomial).logdet);
  return std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
}

}  // namespace ffm::rmt
