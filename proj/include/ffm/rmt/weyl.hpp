#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace ffm::rmt {

double weyl_log_density(const std::vector<double>& angles);

// |Z_U(theta)| = 2^N prod |cos theta_j - cos theta|
double zchar_abs(const std::vector<double>& angles, double theta);

// Same, from the 2N eigenvalues e^{+-i theta_j} directly.
double zchar_abs_direct(const std::vector<double>& angles, double theta);

// 2^{1-N} sum_j |sin theta_j|^{-1} prod_{k != j} |cos theta_j - cos theta_k|^{-1};
// nullopt on coincident angles or an angle at 0 or pi.
std::optional<double> phi_rmt(const std::vector<double>& angles);

// sum over the 2N eigenangles of 1/|Z'(theta_m)|, Z' from the exponential product form.
std::optional<double> phi_rmt_derivative(const std::vector<double>& angles);

// (4/pi) sqrt(1 - 1/T^2) for T >= 1, 0 below.
double haar_truncated_phi_usp2(double T);

inline constexpr int kMaxChainN = 12;

struct ChainParams {
  std::uint64_t burn_in = 2000;  // sweeps
  std::uint64_t thin = 5;        // sweeps between samples
  std::uint64_t samples = 100000;
};

struct ChainDiagnostics {
  double mean_trace = 0, se_trace = 0;
  double mean_trace_sq = 0, se_trace_sq = 0;
  double mean_trace_u2 = 0, se_trace_u2 = 0;
  double acceptance = 0;
  std::vector<std::string> warnings;
};

// Metropolis-within-coordinates on the Weyl density, independent uniform
// proposal per coordinate. Each retained configuration is passed to sink sorted.
ChainDiagnostics mc_sample_weyl(int N, const ChainParams& params, std::uint64_t seed,
                                const std::function<void(const std::vector<double>&)>& sink);

std::vector<std::vector<double>> mc_sample_weyl(int N, const ChainParams& params, std::uint64_t seed);

struct McEstimate {
  double mean = 0;
  double standard_error = 0;  // batch means
  std::uint64_t samples = 0;
  ChainDiagnostics diagnostics;
};

McEstimate mc_phi_truncated(int N, double T, std::uint64_t samples, std::uint64_t seed, ChainParams params = {});

// Batch-means standard error of the mean.
double batch_means_se(const std::vector<double>& xs, std::size_t batches = 50);

}  // namespace ffm::rmt
