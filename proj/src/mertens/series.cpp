#include "ffm/mertens/series.hpp"

#include <cmath>
#include <memory>

#include "ffm/core/errors.hpp"

namespace ffm::mertens {

namespace {

std::vector<BigInt> partial_sums(const std::vector<BigInt>& c) {
  std::vector<BigInt> M(c.size());
  BigInt acc = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    acc += c[i];
    M[i] = acc;
  }
  return M;
}

}  // namespace

MoebiusSeries c_mu_rational(const zeta::LPolynomial& P, std::size_t n_max) {
  const BigInt q(P.q);
  const BigInt e[3] = {BigInt(1), BigInt(-(q + 1)), q};
  const std::size_t deg = P.a.size() - 1;
  MoebiusSeries s;
  s.c.resize(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) {
    BigInt v = n < 3 ? e[n] : BigInt(0);
    for (std::size_t i = 1; i <= deg && i <= n; ++i) v -= P.a[i] * s.c[n - i];
    s.c[n] = v;
  }
  s.M = partial_sums(s.c);
  s.source = SeriesSource::rational_function;
  return s;
}

int moebius(std::uint64_t n) {
  int m = 1;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    n /= d;
    if (n % d == 0) return 0;
    m = -m;
  }
  if (n > 1) m = -m;
  return m;
}

std::vector<BigInt> closed_point_counts(const std::vector<BigInt>& counts) {
  std::vector<BigInt> out;
  for (std::size_t d = 1; d <= counts.size(); ++d) {
    BigInt acc = 0;
    for (std::size_t e = 1; e <= d; ++e)
      if (d % e == 0) acc += moebius(e) * counts[d / e - 1];
    if (acc % d != 0) throw InternalError("closed point count is not an integer at degree " + std::to_string(d));
    out.push_back(acc / d);
  }
  return out;
}

std::vector<BigInt> effective_divisor_counts(const std::vector<BigInt>& closed_points, std::size_t n_max) {
  // prod_d (1 - u^d)^{-P_d}
  std::vector<BigInt> b(n_max + 1, BigInt(0));
  b[0] = 1;
  for (std::size_t d = 1; d <= n_max && d <= closed_points.size(); ++d) {
    const BigInt& pd = closed_points[d - 1];
    if (pd == 0) continue;
    std::vector<BigInt> binom{BigInt(1)};  // C(pd+k-1, k)
    for (std::size_t k = 1; k * d <= n_max; ++k) binom.push_back(binom.back() * (pd + k - 1) / k);
    std::vector<BigInt> nb(n_max + 1, BigInt(0));
    for (std::size_t n = 0; n <= n_max; ++n) {
      BigInt acc = 0;
      for (std::size_t k = 0; k * d <= n; ++k) acc += binom[k] * b[n - k * d];
      nb[n] = acc;
    }
    b = std::move(nb);
  }
  return b;
}

MoebiusSeries c_mu_from_counts(const std::vector<BigInt>& counts, std::size_t n_max) {
  if (counts.size() < n_max) throw InvalidArgument("need point counts for n = 1..N_max");
  std::vector<BigInt> head(counts.begin(), counts.begin() + static_cast<std::ptrdiff_t>(n_max));
  auto b = effective_divisor_counts(closed_point_counts(head), n_max);
  MoebiusSeries s;
  s.c.resize(n_max + 1);
  s.c[0] = 1;
  for (std::size_t n = 1; n <= n_max; ++n) {
    BigInt acc = 0;
    for (std::size_t i = 1; i <= n; ++i) acc += b[i] * s.c[n - i];
    s.c[n] = -acc;
  }
  s.M = partial_sums(s.c);
  s.source = SeriesSource::divisor_oracle;
  return s;
}

namespace {

// towers are costly to build; keep the most recent few per thread
ff::Tower& cached_tower(const ff::FieldSpec& base) {
  thread_local std::vector<std::pair<ff::FieldSpec, std::unique_ptr<ff::Tower>>> cache;
  for (auto& [spec, tower] : cache)
    if (spec == base) return *tower;
  if (cache.size() >= 4) cache.erase(cache.begin());
  cache.emplace_back(base, std::make_unique<ff::Tower>(base));
  return *cache.back().second;
}

}  // namespace

OracleCounts oracle_point_counts(const zeta::HyperellipticCurve& curve, std::size_t n_max, std::uint64_t brute_budget) {
  ff::Tower& tower = cached_tower(curve.base);
  const std::uint64_t q = tower.base().order();
  OracleCounts oc;
  std::uint64_t qn = 1;
  unsigned n = 0;
  while (n < n_max && qn <= brute_budget / q) {
    qn *= q;
    ++n;
    oc.counts.emplace_back(zeta::count_points(curve, n, tower, brute_budget));
  }
  oc.brute_force_up_to = n;
  if (oc.counts.size() == n_max) {
    if (static_cast<int>(n) > curve.genus) {
      auto P = zeta::l_polynomial_from_counts(q, curve.genus, oc.counts);
      auto pred = zeta::predicted_counts(P, n);
      for (unsigned i = curve.genus; i < n; ++i)
        if (pred[i] != oc.counts[i]) throw InternalError("enumerated count disagrees with its L-polynomial prediction");
    }
    return oc;
  }
  if (static_cast<int>(n) < curve.genus)
    throw Refusal("oracle needs enumerated counts for n = 1..g; raise the budget to at least q^g");
  auto P = zeta::l_polynomial_from_counts(q, curve.genus, oc.counts);
  auto pred = zeta::predicted_counts(P, static_cast<unsigned>(n_max));
  for (unsigned i = curve.genus; i < n; ++i)
    if (pred[i] != oc.counts[i]) throw InternalError("enumerated count disagrees with its L-polynomial prediction");
  for (std::size_t i = n; i < n_max; ++i) oc.counts.push_back(pred[i]);
  return oc;
}

MoebiusSeries c_mu_oracle(const zeta::HyperellipticCurve& curve, std::size_t n_max, std::uint64_t brute_budget) {
  if (n_max == 0) {
    MoebiusSeries s;
    s.c = {BigInt(1)};
    s.M = s.c;
    s.source = SeriesSource::divisor_oracle;
    return s;
  }
  return c_mu_from_counts(oracle_point_counts(curve, n_max, brute_budget).counts, n_max);
}

MoebiusSeries c_mu_oracle_genus_zero(std::uint64_t q, std::size_t n_max) {
  std::vector<BigInt> counts;
  BigInt qn = 1;
  for (std::size_t n = 1; n <= n_max; ++n) {
    qn *= q;
    counts.push_back(qn + 1);
  }
  if (n_max == 0) {
    MoebiusSeries s;
    s.c = {BigInt(1)};
    s.M = s.c;
    s.source = SeriesSource::divisor_oracle;
    return s;
  }
  return c_mu_from_counts(counts, n_max);
}

double scaled(const BigInt& v, double log_scale) {
  if (v == 0) return 0.0;
  long exp2 = 0;
  double mant = mpz_get_d_2exp(&exp2, v.backend().data());
  return mant * std::exp(static_cast<double>(exp2) * std::log(2.0) - log_scale);
}

MoebiusStream::MoebiusStream(const zeta::LPolynomial& P) : a_(P.a) {
  e1_ = -(BigInt(P.q) + 1);
  e2_ = BigInt(P.q);
  c_hist_.assign(a_.size(), BigInt(0));
  c_hist_.back() = 1;
  m_ = 1;
}

void MoebiusStream::advance() {
  ++n_;
  BigInt v = n_ == 1 ? e1_ : (n_ == 2 ? e2_ : BigInt(0));
  const std::size_t w = c_hist_.size();
  for (std::size_t i = 1; i < a_.size(); ++i) v -= a_[i] * c_hist_[w - i];
  for (std::size_t i = 0; i + 1 < w; ++i) c_hist_[i].swap(c_hist_[i + 1]);
  c_hist_.back() = std::move(v);
  m_ += c_hist_.back();
}

}  // namespace ffm::mertens
