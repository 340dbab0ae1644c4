#include "ffm/family/family.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "ffm/core/errors.hpp"
#include "ffm/core/parallel.hpp"
#include "ffm/core/rng.hpp"
#include "ffm/mertens/residue.hpp"
#include "ffm/rmt/weyl.hpp"

namespace ffm::family {

std::string to_string(Mode m) { return m == Mode::exhaustive ? "exhaustive" : "sample"; }

std::string to_string(LiMode m) {
  switch (m) {
    case LiMode::full: return "full";
    case LiMode::structural: return "structural";
    case LiMode::none: return "none";
  }
  return "unknown";
}

namespace {

ff::FieldSpec sweep_field(const FamilySweepConfig& cfg) {
  ff::FieldSpec base = ff::make_field(cfg.p, cfg.k);
  return ff::build_extension(base, cfg.n).spec;
}

}  // namespace

FamilyEnumerator::FamilyEnumerator(const FamilySweepConfig& cfg) : cfg_(cfg), field_(sweep_field(cfg)) {
  if (cfg.genus < 0) throw InvalidArgument("genus must be nonnegative");
  if (cfg.mode == Mode::exhaustive) {
    long double raw = std::pow(static_cast<long double>(field_.order()), 2.0L * cfg.genus + 1.0L);
    if (raw > static_cast<long double>(cfg.exhaustive_cap))
      throw Refusal("exhaustive family of " + std::to_string(static_cast<double>(raw)) +
                    " polynomials exceeds the cap of " + std::to_string(cfg.exhaustive_cap) + "; use sample mode");
    raw_size_ = static_cast<std::uint64_t>(raw);
  } else {
    raw_size_ = cfg.samples;
  }
}

std::optional<ff::Poly> FamilyEnumerator::member(std::uint64_t raw_index) const {
  const std::uint64_t Q = field_.order();
  const int deg = 2 * cfg_.genus + 1;
  ff::Poly f(deg + 1);
  f[deg] = field_.one();
  if (cfg_.mode == Mode::exhaustive) {
    if (raw_index >= raw_size_) throw InvalidArgument("family index out of range");
    for (int i = 0; i < deg; ++i) {
      f[i] = field_.from_index(raw_index % Q);
      raw_index /= Q;
    }
    if (!ff::is_squarefree(field_, f)) return std::nullopt;
    return f;
  }
  auto gen = substream(cfg_.seed, raw_index);
  for (;;) {
    for (int i = 0; i < deg; ++i) f[i] = field_.from_index(uniform_below(gen, Q));
    if (ff::is_squarefree(field_, f)) return f;
  }
}

std::uint64_t FamilyEnumerator::raw_index_of(const std::vector<std::uint64_t>& packed) const {
  const std::uint64_t Q = field_.order();
  std::uint64_t idx = 0;
  for (std::size_t i = packed.size() - 1; i-- > 0;) idx = idx * Q + packed[i];
  return idx;
}

std::vector<ff::Poly> enumerate_family(const FamilySweepConfig& cfg) {
  FamilyEnumerator en(cfg);
  std::vector<ff::Poly> out;
  for (std::uint64_t i = 0; i < en.raw_size(); ++i)
    if (auto f = en.member(i)) out.push_back(std::move(*f));
  return out;
}

std::optional<double> phi_of_class(const std::vector<double>& angles) {
  return rmt::phi_rmt(angles);
}

std::optional<double> phi_of_curve(const zeta::ZeroData& zd) {
  if (!zd.all_simple() || zd.has_real_zero()) return std::nullopt;
  return phi_of_class(zd.eigenangles);
}

SweepRecord process_member(const FamilySweepConfig& cfg, const ff::Field& field, const ff::Poly& f) {
  zeta::HyperellipticCurve curve{field.spec(), cfg.genus, f};
  zeta::LPolynomial P;
  if (cfg.genus == 1) {
    P = zeta::l_polynomial_from_counts(field.order(), 1, {BigInt(zeta::count_points_in(field, f))});
  } else {
    P = zeta::l_polynomial(curve);
  }
  auto zd = zeta::zero_data(P);
  SweepRecord r;
  for (const auto& c : f) r.f.push_back(field.index(c));
  r.q = ff::make_field(cfg.p, cfg.k).order();
  r.n = cfg.n;
  r.L = P.a;
  r.theta = zd.eigenangles;
  r.D = mertens::bound_D(P, zd);
  r.phi = phi_of_curve(zd);
  switch (cfg.li) {
    case LiMode::full: r.li = li::to_string(li::li_report(P, zd, cfg.H, cfg.d).verdict); break;
    case LiMode::structural: r.li = li::structural_li_screen(P, zd).fails() ? "fails-structural" : "passes-structural"; break;
    case LiMode::none: r.li = "skipped"; break;
  }
  return r;
}

void SweepAccumulator::add(const SweepRecord& r) {
  ++count_;
  const double v = r.truncated_D(T_);
  sum_ += v;
  sum_sq_ += v * v;
  phi_D_.emplace_back(r.phi ? *r.phi : std::numeric_limits<double>::infinity(), r.D);
  li_counts_[r.li]++;
  const bool ss = r.L.size() > 1 && r.L[1] % p_ == 0;
  if (ss) ++supersingular_;
  if (!ss && r.li == "relation-found") ++relation_ordinary_;
}

double SweepAccumulator::mean_truncated_D() const { return count_ ? sum_ / static_cast<double>(count_) : 0.0; }

double SweepAccumulator::standard_error() const {
  if (count_ < 2) return 0.0;
  const double n = static_cast<double>(count_);
  const double mean = sum_ / n;
  const double var = std::max(0.0, (sum_sq_ - n * mean * mean) / (n - 1));
  return std::sqrt(var / n);
}

double SweepAccumulator::truncated_D_at(double T) const {
  if (!count_) return 0.0;
  double s = 0;
  for (auto [phi, D] : phi_D_)
    if (phi <= T) s += D;
  return s / static_cast<double>(count_);
}

double SweepAccumulator::relation_fraction() const {
  if (!count_) return 0.0;
  auto it = li_counts_.find("relation-found");
  return it == li_counts_.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(count_);
}

double SweepAccumulator::relation_fraction_ordinary() const {
  const std::uint64_t ordinary = count_ - supersingular_;
  return ordinary ? static_cast<double>(relation_ordinary_) / static_cast<double>(ordinary) : 0.0;
}

SweepSummary summarize(const FamilySweepConfig& cfg, const SweepAccumulator& acc, std::uint64_t raw_seen) {
  if (acc.count() == 0) throw Refusal("empty family");
  SweepSummary s;
  s.raw_seen = raw_seen;
  s.members = acc.count();
  s.mean_truncated_D = acc.mean_truncated_D();
  s.standard_error = cfg.mode == Mode::sample ? acc.standard_error() : 0.0;
  s.li_counts = acc.li_counts();
  s.supersingular = acc.supersingular();
  s.relation_fraction = acc.relation_fraction();
  s.relation_fraction_ordinary = acc.relation_fraction_ordinary();
  return s;
}

std::uint64_t run_sweep(const FamilySweepConfig& cfg, SweepAccumulator& acc,
                        const std::function<void(const SweepRecord&)>& sink, std::uint64_t start_raw) {
  FamilyEnumerator en(cfg);
  constexpr std::uint64_t kChunk = 2048;
  for (std::uint64_t lo = start_raw; lo < en.raw_size(); lo += kChunk) {
    const std::uint64_t hi = std::min(en.raw_size(), lo + kChunk);
    auto recs = parallel_map<std::optional<SweepRecord>>(hi - lo, cfg.workers, [&](std::size_t i) {
      auto f = en.member(lo + i);
      if (!f) return std::optional<SweepRecord>{};
      return std::optional<SweepRecord>{process_member(cfg, en.field(), *f)};
    });
    for (auto& r : recs) {
      if (!r) continue;
      acc.add(*r);
      if (sink) sink(*r);
    }
  }
  return en.raw_size();
}

TruncatedAverage truncated_average(const FamilySweepConfig& cfg) {
  SweepAccumulator acc(cfg.T, cfg.p);
  run_sweep(cfg, acc, nullptr);
  if (acc.count() == 0) throw Refusal("empty family");
  TruncatedAverage out;
  out.value = acc.mean_truncated_D();
  out.standard_error = cfg.mode == Mode::sample ? acc.standard_error() : 0.0;
  out.count = acc.count();
  return out;
}

RewriteCheck rewrite_identity_check(const zeta::LPolynomial& P, const zeta::ZeroData& zd, std::size_t grid) {
  if (!zd.all_simple()) throw Refusal("rewrite identity needs simple zeros");
  using C = std::complex<double>;
  const double Q = static_cast<double>(P.q);
  const int deg = static_cast<int>(P.a.size()) - 1;
  auto P_at = [&](C u, C& val, C& der) {
    val = to_double(P.a[deg]);
    der = 0;
    for (int j = deg - 1; j >= 0; --j) {
      der = der * u + val;
      val = val * u + to_double(P.a[j]);
    }
  };
  std::vector<double> th;
  for (const auto& z : zd.zeros) th.push_back(std::arg(z.gamma));
  // product form over all 2g eigenangles
  auto Zprod = [&](double theta) {
    C acc = 1;
    for (double t : th) acc *= 1.0 - std::polar(1.0, t - theta);
    return acc;
  };
  RewriteCheck out;
  for (std::size_t j = 0; j < zd.zeros.size(); ++j) {
    const C g = zd.zeros[j].gamma;
    const C u0 = 1.0 / g;
    C val, der;
    P_at(u0, val, der);
    const C e0 = (1.0 - u0) * (1.0 - Q * u0);
    const C lhs = g / (der / e0) * g / (g - 1.0);
    C dz = C(0, 1);
    for (std::size_t m = 0; m < th.size(); ++m)
      if (m != j) dz *= 1.0 - std::polar(1.0, th[m] - th[j]);
    const C rhs = (1.0 - Q / g) / (C(0, 1) * dz);
    out.rewrite_deviation = std::max(out.rewrite_deviation, std::abs(lhs - rhs));
  }
  for (std::size_t k = 0; k < grid; ++k) {
    const double theta = -std::numbers::pi + 2.0 * std::numbers::pi * (k + 0.5) / static_cast<double>(grid);
    C val, der;
    P_at(std::polar(1.0 / std::sqrt(Q), -theta), val, der);
    out.zandp_deviation = std::max(out.zandp_deviation, std::abs(val - Zprod(theta)));
  }
  if (!th.empty()) {
    C val, der;
    P_at(std::polar(1.0 / std::sqrt(Q), -th[0]), val, der);
    out.zandp_at_zero = std::max(std::abs(val), std::abs(Zprod(th[0])));
  }
  return out;
}

}  // namespace ffm::family
