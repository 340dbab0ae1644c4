#include "ffm/rmt/hankel.hpp"

#include <cmath>
#include <numbers>

#include "ffm/rmt/special.hpp"

namespace ffm::rmt {

namespace {

void check_args(int N, double s) {
  if (N < 0) throw InvalidArgument("N must be nonnegative");
  if (!(s > 0)) throw InvalidArgument("s must be positive");
  if (N > 24) throw Refusal("N = " + std::to_string(N) + " exceeds the precision budget (N <= 24)");
}

double log_prefactor(int N, double s) {
  return (double(N) * N + 2 * s * N) * std::numbers::ln2 - N * std::log(std::numbers::pi);
}

template <class R>
ConvergedLogDet<R> logdet_for(int N, const SingularWeight<R>& wt, const HankelOptions& opts) {
  const double tol = std::is_same_v<R, double> ? opts.tol_double : opts.tol_extended;
  return converged_logdet<R>(N, wt, DeterminantBasis::chebyshev, tol, opts.max_nodes);
}

struct Raw {
  double log_value;
  int nodes;
  unsigned digits;
  double condition;
};

template <class R>
Raw moment_at(int N, double s, const R& y, const HankelOptions& opts) {
  auto c = logdet_for<R>(N, moment_weight<R>(s, y), opts);
  return {log_prefactor(N, s) + static_cast<double>(c.logdet), c.nodes, digits_of<R>(), c.condition};
}

Raw moment_y(int N, double s, double y, double theta, const HankelOptions& opts) {
  if (N > opts.extended_above) {
    // y from theta in extended precision when theta is known
    Real50 yy = std::isnan(theta) ? Real50(y) : Real50(cos(Real50(theta)));
    return moment_at<Real50>(N, s, yy, opts);
  }
  return moment_at<double>(N, s, y, opts);
}

}  // namespace

MomentResult hankel_moment(int N, double s, double theta, const HankelOptions& opts) {
  check_args(N, s);
  if (!(theta > 0 && theta < std::numbers::pi)) throw InvalidArgument("theta must lie in (0, pi)");
  MomentResult r;
  r.N = N;
  r.s = s;
  r.theta = theta;
  if (N == 0) {
    r.exact = 1;
  } else {
    Raw raw = moment_y(N, s, std::cos(theta), theta, opts);
    r.log_exact = raw.log_value;
    r.exact = std::exp(raw.log_value);
    r.nodes = raw.nodes;
    r.digits = raw.digits;
    r.condition = raw.condition;
  }
  r.asymptotic = N > 0 ? dik_asymptotic(N, s, theta) : 0.0;
  r.ratio = N > 0 ? r.exact / r.asymptotic : 0.0;
  return r;
}

double hankel_moment_y(int N, double s, double y, const HankelOptions& opts) {
  check_args(N, s);
  if (!(y > -1 && y < 1)) throw InvalidArgument("y must lie in (-1, 1)");
  if (N == 0) return 1;
  return std::exp(moment_y(N, s, y, NAN, opts).log_value);
}

double hankel_moment_endpoint(int N, double s, const HankelOptions& opts) {
  check_args(N, s);
  if (N == 0) return 1;
  if (N > opts.extended_above) {
    auto c = logdet_for<Real50>(N, endpoint_weight<Real50>(s), opts);
    return std::exp(log_prefactor(N, s) + static_cast<double>(c.logdet));
  }
  auto c = logdet_for<double>(N, endpoint_weight<double>(s), opts);
  return std::exp(log_prefactor(N, s) + c.logdet);
}

BasisComparison compare_bases(int N, double s, double theta) {
  check_args(N, s);
  using R = Real50;
  const auto wt = moment_weight<R>(s, R(cos(R(theta))));
  int n = 16;
  while (n < N + 8) n *= 2;
  const auto m = build_measure<R>(wt, 2 * n);
  const R a = hankel_logdet<R>(N, m, DeterminantBasis::monomial).logdet;
  const R b = hankel_logdet<R>(N, m, DeterminantBasis::chebyshev).logdet;
  BasisComparison out;
  out.log_monomial = static_cast<double>(a);
  out.log_chebyshev = static_cast<double>(b);
  // relative difference of the determinants themselves
  out.relative_difference = static_cast<double>(abs(expm1(a - b)));
  return out;
}

double dik_asymptotic(int N, double s, double theta) {
  if (!(s > 0)) throw InvalidArgument("s must be positive");
  if (!(theta > 0 && theta < std::numbers::pi)) throw InvalidArgument("theta must lie in (0, pi)");
  const double lg = s * s * std::log(double(N)) - s * std::numbers::ln2 - s * (s + 1) * std::log(std::sin(theta)) +
                    2 * std::log(barnes_g(1 + s)) - std::log(barnes_g(1 + 2 * s));
  return std::exp(lg);
}

}  // namespace ffm::rmt
