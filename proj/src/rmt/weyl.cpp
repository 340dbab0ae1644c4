#include "ffm/rmt/weyl.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "ffm/core/errors.hpp"
#include "ffm/core/rng.hpp"

namespace ffm::rmt {

double weyl_log_density(const std::vector<double>& angles) {
  const int N = static_cast<int>(angles.size());
  double lg = double(N) * N * std::numbers::ln2 - std::lgamma(N + 1.0) - N * std::log(std::numbers::pi);
  for (int j = 0; j < N; ++j) {
    const double sj = std::sin(angles[j]);
    if (sj == 0.0) return -INFINITY;
    lg += 2 * std::log(std::abs(sj));
    for (int k = j + 1; k < N; ++k) {
      const double d = std::cos(angles[j]) - std::cos(angles[k]);
      if (d == 0.0) return -INFINITY;
      lg += 2 * std::log(std::abs(d));
    }
  }
  return lg;
}

double zchar_abs(const std::vector<double>& angles, double theta) {
  double v = std::ldexp(1.0, static_cast<int>(angles.size()));
  const double c = std::cos(theta);
  for (double a : angles) v *= std::abs(std::cos(a) - c);
  return v;
}

double zchar_abs_direct(const std::vector<double>& angles, double theta) {
  std::complex<double> z = 1;
  const std::complex<double> e = std::polar(1.0, -theta);
  for (double a : angles) {
    z *= 1.0 - std::polar(1.0, a) * e;
    z *= 1.0 - std::polar(1.0, -a) * e;
  }
  return std::abs(z);
}

std::optional<double> phi_rmt(const std::vector<double>& angles) {
  const std::size_t N = angles.size();
  if (N == 0) return std::nullopt;
  double sum = 0;
  for (std::size_t j = 0; j < N; ++j) {
    if (angles[j] == 0.0 || angles[j] == std::numbers::pi) return std::nullopt;
    double prod = std::abs(std::sin(angles[j]));
    for (std::size_t k = 0; k < N; ++k) {
      if (k == j) continue;
      if (angles[k] == angles[j]) return std::nullopt;
      prod *= std::abs(std::cos(angles[j]) - std::cos(angles[k]));
    }
    if (prod == 0.0) return std::nullopt;
    sum += 1.0 / prod;
  }
  return std::ldexp(sum, 1 - static_cast<int>(N));
}

std::optional<double> phi_rmt_derivative(const std::vector<double>& angles) {
  const std::size_t N = angles.size();
  if (N == 0) return std::nullopt;
  auto one_minus = [](double t) { return std::abs(1.0 - std::polar(1.0, t)); };
  double sum = 0;
  for (std::size_t j = 0; j < N; ++j) {
    // |Z'(theta_j)| = |1 - e^{2i theta_j}| prod_{k != j} |1 - e^{i(theta_j - theta_k)}| |1 - e^{i(theta_j + theta_k)}|;
    // the conjugate eigenangle -theta_j gives the same modulus
    double d = one_minus(2 * angles[j]);
    for (std::size_t k = 0; k < N; ++k) {
      if (k == j) continue;
      d *= one_minus(angles[j] - angles[k]) * one_minus(angles[j] + angles[k]);
    }
    if (d == 0.0) return std::nullopt;
    sum += 2.0 / d;
  }
  return sum;
}

double haar_truncated_phi_usp2(double T) {
  if (T < 1) return 0;
  return 4.0 / std::numbers::pi * std::sqrt(1.0 - 1.0 / (T * T));
}

double batch_means_se(const std::vector<double>& xs, std::size_t batches) {
  const std::size_t n = xs.size();
  if (n < 2) return 0;
  batches = std::min(batches, n);
  const std::size_t len = n / batches;
  std::vector<double> means(batches, 0.0);
  for (std::size_t b = 0; b < batches; ++b) {
    for (std::size_t i = b * len; i < (b + 1) * len; ++i) means[b] += xs[i];
    means[b] /= double(len);
  }
  double mu = 0;
  for (double m : means) mu += m;
  mu /= double(batches);
  double var = 0;
  for (double m : means) var += (m - mu) * (m - mu);
  var /= double(batches - 1);
  return std::sqrt(var / double(batches));
}

namespace {

double mean_of(const std::vector<double>& xs) {
  double s = 0;
  for (double x : xs) s += x;
  return xs.empty() ? 0.0 : s / double(xs.size());
}

}  // namespace

ChainDiagnostics mc_sample_weyl(int N, const ChainParams& params, std::uint64_t seed,
                                const std::function<void(const std::vector<double>&)>& sink) {
  if (N < 1) throw InvalidArgument("N must be positive");
  if (N > kMaxChainN) throw Refusal("Weyl sampler is capped at N = " + std::to_string(kMaxChainN));
  if (params.thin == 0) throw InvalidArgument("thinning must be positive");
  auto gen = substream(seed, 0);
  std::vector<double> th(N), c(N);
  for (int j = 0; j < N; ++j) {
    th[j] = std::numbers::pi * (j + 0.5) / N;
    c[j] = std::cos(th[j]);
  }
  std::uint64_t proposed = 0, accepted = 0;
  auto sweep = [&] {
    for (int j = 0; j < N; ++j) {
      const double t = std::numbers::pi * uniform01(gen);
      const double ct = std::cos(t);
      double lr = 2 * (std::log(std::abs(std::sin(t))) - std::log(std::abs(std::sin(th[j]))));
      for (int k = 0; k < N; ++k) {
        if (k == j) continue;
        lr += 2 * (std::log(std::abs(ct - c[k])) - std::log(std::abs(c[j] - c[k])));
      }
      ++proposed;
      const double u = uniform01(gen);
      if (std::isfinite(lr) && (lr >= 0 || std::log(u) < lr)) {
        th[j] = t;
        c[j] = ct;
        ++accepted;
      }
    }
  };
  for (std::uint64_t b = 0; b < params.burn_in; ++b) sweep();
  std::vector<double> tr, tr2, tru2;
  tr.reserve(params.samples);
  tr2.reserve(params.samples);
  tru2.reserve(params.samples);
  std::vector<double> sorted(N);
  for (std::uint64_t i = 0; i < params.samples; ++i) {
    for (std::uint64_t t = 0; t < params.thin; ++t) sweep();
    double a = 0, b = 0;
    for (int j = 0; j < N; ++j) {
      a += 2 * c[j];
      b += 2 * std::cos(2 * th[j]);
    }
    tr.push_back(a);
    tr2.push_back(a * a);
    tru2.push_back(b);
    sorted = th;
    std::sort(sorted.begin(), sorted.end());
    if (sink) sink(sorted);
  }
  ChainDiagnostics d;
  d.mean_trace = mean_of(tr);
  d.se_trace = batch_means_se(tr);
  d.mean_trace_sq = mean_of(tr2);
  d.se_trace_sq = batch_means_se(tr2);
  d.mean_trace_u2 = mean_of(tru2);
  d.se_trace_u2 = batch_means_se(tru2);
  d.acceptance = proposed ? double(accepted) / double(proposed) : 0.0;
  auto check = [&](const char* name, double mean, double se, double target) {
    if (params.samples > 1 && std::abs(mean - target) > 5 * se)
      d.warnings.push_back(std::string(name) + " = " + std::to_string(mean) + " is more than 5 standard errors from " +
                           std::to_string(target));
  };
  check("E[Tr U]", d.mean_trace, d.se_trace, 0.0);
  check("E[(Tr U)^2]", d.mean_trace_sq, d.se_trace_sq, 1.0);
  check("E[Tr U^2]", d.mean_trace_u2, d.se_trace_u2, -1.0);
  return d;
}

std::vector<std::vector<double>> mc_sample_weyl(int N, const ChainParams& params, std::uint64_t seed) {
  std::vector<std::vector<double>> out;
  out.reserve(params.samples);
  mc_sample_weyl(N, params, seed, [&](const std::vector<double>& a) { out.push_back(a); });
  return out;
}

McEstimate mc_phi_truncated(int N, double T, std::uint64_t samples, std::uint64_t seed, ChainParams params) {
  params.samples = samples;
  std::vector<double> vals;
  vals.reserve(samples);
  McEstimate e;
  e.diagnostics = mc_sample_weyl(N, params, seed, [&](const std::vector<double>& a) {
    auto p = phi_rmt(a);
    vals.push_back(p && *p <= T ? *p : 0.0);
  });
  e.mean = mean_of(vals);
  e.standard_error = batch_means_se(vals);
  e.samples = samples;
  return e;
}

}  // namespace ffm::rmt
