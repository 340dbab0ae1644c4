#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ffm/ff/field.hpp"
#include "ffm/li/li.hpp"
#include "ffm/zeta/curve.hpp"
#include "ffm/zeta/zeros.hpp"

namespace ffm::family {

enum class Mode { exhaustive, sample };
enum class LiMode { full, structural, none };

std::string to_string(Mode m);
std::string to_string(LiMode m);

inline constexpr std::uint64_t kDefaultExhaustiveCap = std::uint64_t{1} << 24;
inline constexpr std::uint64_t kDefaultSamples = 100000;

struct FamilySweepConfig {
  int genus = 1;
  std::uint32_t p = 5;
  std::uint32_t k = 1;  // base field F_q, q = p^k
  std::uint32_t n = 1;  // sweep over F_{q^n}
  Mode mode = Mode::exhaustive;
  std::uint64_t samples = kDefaultSamples;
  std::uint64_t seed = 1;
  double T = 4.0;
  std::uint64_t exhaustive_cap = kDefaultExhaustiveCap;
  long window_start = 50;
  long window_end = 2000;
  LiMode li = LiMode::full;
  long H = li::kDefaultHeight;
  unsigned d = li::kDefaultDigits;
  unsigned workers = 1;
};

// Member source for H_{2g+1}(F_{q^n}).
class FamilyEnumerator {
 public:
  explicit FamilyEnumerator(const FamilySweepConfig& cfg);

  const ff::Field& field() const { return field_; }
  // Exhaustive: all monic polynomials (Q^{2g+1}); sample: the sample count.
  std::uint64_t raw_size() const { return raw_size_; }
  // nullopt for non-squarefree polynomials in exhaustive mode.
  std::optional<ff::Poly> member(std::uint64_t raw_index) const;
  // Inverse of member() in exhaustive mode.
  std::uint64_t raw_index_of(const std::vector<std::uint64_t>& packed) const;

 private:
  FamilySweepConfig cfg_;
  ff::Field field_;
  std::uint64_t raw_size_;
};

// All squarefree members, materialized. Intended for small families.
std::vector<ff::Poly> enumerate_family(const FamilySweepConfig& cfg);

// Both curves and the matrix sampler use this product form; nullopt when two
// angles coincide or an angle is exactly 0 or pi.
std::optional<double> phi_of_class(const std::vector<double>& angles);

// phi for a curve, undefined on repeated or real zeros.
std::optional<double> phi_of_curve(const zeta::ZeroData& zd);

struct SweepRecord {
  std::vector<std::uint64_t> f;  // packed element indices a_0..a_{2g+1}
  std::uint64_t q = 0;           // size of the base field
  std::uint32_t n = 1;
  std::vector<BigInt> L;
  std::vector<double> theta;
  double D = 0;
  std::optional<double> phi;
  std::string li;

  // D when phi is defined and <= T, else 0
  double truncated_D(double T) const { return (phi && *phi <= T) ? D : 0.0; }
};

SweepRecord process_member(const FamilySweepConfig& cfg, const ff::Field& field, const ff::Poly& f);

// Reducer over records; order-independent up to floating-point summation order,
// which is fixed by feeding records in index order.
class SweepAccumulator {
 public:
  explicit SweepAccumulator(double T, std::uint32_t p) : T_(T), p_(p) {}
  void add(const SweepRecord& r);

  std::uint64_t count() const { return count_; }
  double mean_truncated_D() const;
  double standard_error() const;  // of the mean, iid estimate
  double truncated_D_at(double T) const;
  const std::map<std::string, std::uint64_t>& li_counts() const { return li_counts_; }
  std::uint64_t supersingular() const { return supersingular_; }
  std::uint64_t relation_found_ordinary() const { return relation_ordinary_; }
  double relation_fraction() const;
  double relation_fraction_ordinary() const;  // supersingular curves excluded

 private:
  double T_;
  std::uint32_t p_;
  std::uint64_t count_ = 0;
  double sum_ = 0, sum_sq_ = 0;
  std::vector<std::pair<double, double>> phi_D_;  // for re-truncation
  std::map<std::string, std::uint64_t> li_counts_;
  std::uint64_t supersingular_ = 0;
  std::uint64_t relation_ordinary_ = 0;
};

struct SweepSummary {
  std::uint64_t raw_seen = 0;
  std::uint64_t members = 0;
  double mean_truncated_D = 0;
  double standard_error = 0;  // zero in exhaustive mode
  std::map<std::string, std::uint64_t> li_counts;
  std::uint64_t supersingular = 0;
  double relation_fraction = 0;
  double relation_fraction_ordinary = 0;
};

SweepSummary summarize(const FamilySweepConfig& cfg, const SweepAccumulator& acc, std::uint64_t raw_seen);

// Processes raw indices [start_raw, raw_size) in order and hands each record to sink.
// acc may already hold records from an earlier run (resume).
std::uint64_t run_sweep(const FamilySweepConfig& cfg, SweepAccumulator& acc,
                        const std::function<void(const SweepRecord&)>& sink, std::uint64_t start_raw = 0);

struct TruncatedAverage {
  double value = 0;
  double standard_error = 0;
  std::uint64_t count = 0;
};

TruncatedAverage truncated_average(const FamilySweepConfig& cfg);

struct RewriteCheck {
  double rewrite_deviation = 0;  // max_j |LHS - RHS|
  double zandp_deviation = 0;    // on a theta grid
  double zandp_at_zero = 0;      // both sides at theta_1
};

RewriteCheck rewrite_identity_check(const zeta::LPolynomial& P, const zeta::ZeroData& zd, std::size_t grid = 100);

}  // namespace ffm::family
