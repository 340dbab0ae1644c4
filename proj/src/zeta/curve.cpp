#include "ffm/zeta/curve.hpp"

#include <cmath>

#include "ffm/core/errors.hpp"

namespace ffm::zeta {

HyperellipticCurve make_curve(const ff::FieldSpec& base, ff::Poly f) {
  ff::Field field(base);
  ff::trim(f);
  const int d = ff::poly_degree(f);
  if (d < 1 || d % 2 == 0) throw InvalidArgument("f must have odd degree 2g+1, got degree " + std::to_string(d));
  if (!(f.back() == field.one())) throw InvalidArgument("f must be monic");
  if (!ff::is_squarefree(field, f)) throw InvalidArgument("f is not squarefree");
  return {base, (d - 1) / 2, std::move(f)};
}

HyperellipticCurve make_curve(std::uint32_t p, const std::vector<std::int64_t>& coeffs) {
  ff::FieldSpec base = ff::make_field(p, 1);
  ff::Field field(base);
  ff::Poly f;
  for (auto c : coeffs) f.push_back(field.from_int(c));
  return make_curve(base, std::move(f));
}

std::uint64_t count_points_in(const ff::Field& field, const ff::Poly& f, std::uint64_t budget) {
  std::uint64_t total = 1;  // point at infinity
  for (const auto& x : ff::enumerate_elements(field, budget)) total += 1 + field.chi(ff::poly_eval(field, f, x));
  return total;
}

std::uint64_t count_points(const HyperellipticCurve& curve, unsigned n, std::uint64_t budget) {
  if (n < 1) throw InvalidArgument("extension degree must be at least 1");
  ff::Field base(curve.base);
  const std::uint64_t q = base.order();
  // refuse before building the (possibly large) extension
  long double qn = std::pow(static_cast<long double>(q), static_cast<long double>(n));
  if (qn > static_cast<long double>(budget))
    throw Refusal("counting points over a field of size " + std::to_string(q) + "^" + std::to_string(n) +
                  " exceeds the enumeration budget of " + std::to_string(budget));
  if (n == 1) return count_points_in(base, curve.f, budget);
  ff::Extension ext = ff::build_extension(curve.base, n);
  ff::Field target(ext.spec);
  ff::Poly g;
  for (const auto& c : curve.f) g.push_back(ff::embed(base, target, ext, c));
  return count_points_in(target, g, budget);
}

std::uint64_t count_points(const HyperellipticCurve& curve, unsigned n, ff::Tower& tower, std::uint64_t budget) {
  if (n < 1) throw InvalidArgument("extension degree must be at least 1");
  if (!(tower.base().spec() == curve.base)) throw InvalidArgument("tower base differs from the curve's field");
  long double qn = std::pow(static_cast<long double>(tower.base().order()), static_cast<long double>(n));
  if (qn > static_cast<long double>(budget))
    throw Refusal("counting points over a field of size " + std::to_string(tower.base().order()) + "^" +
                  std::to_string(n) + " exceeds the enumeration budget of " + std::to_string(budget));
  const ff::Field& target = tower.level(n);
  ff::Poly g;
  for (const auto& c : curve.f) g.push_back(tower.embed(n, c));
  return count_points_in(target, g, budget);
}

void validate(const LPolynomial& P) {
  if (P.a.empty() || P.a.size() % 2 == 0) throw InternalError("L-polynomial must have even degree");
  if (P.a[0] != 1) throw InternalError("L-polynomial constant term must be 1");
  const int g = P.genus();
  BigInt qp = 1;
  for (int i = g; i >= 0; --i) {
    // qp = q^{g-i}
    if (P.a[2 * g - i] != qp * P.a[i]) throw InternalError("L-polynomial violates the functional equation at i=" + std::to_string(i));
    qp *= P.q;
  }
  if (g > 0) {
    double bound = 2.0 * g * std::sqrt(static_cast<double>(P.q));
    if (std::abs(to_double(P.a[1])) > bound + 1e-9) throw InternalError("|a_1| exceeds 2g sqrt(q)");
  }
}

LPolynomial genus_zero(std::uint64_t q) { return LPolynomial{{BigInt(1)}, q}; }

LPolynomial l_polynomial_from_counts(std::uint64_t q, int genus, const std::vector<BigInt>& counts) {
  if (static_cast<int>(counts.size()) < genus) throw InvalidArgument("need point counts for n = 1..g");
  LPolynomial P;
  P.q = q;
  P.a.assign(2 * genus + 1, BigInt(0));
  P.a[0] = 1;
  std::vector<BigInt> s(genus + 1, BigInt(0));
  BigInt qn = 1;
  for (int n = 1; n <= genus; ++n) {
    qn *= q;
    s[n] = qn + 1 - counts[n - 1];
  }
  for (int n = 1; n <= genus; ++n) {
    BigInt acc = 0;
    for (int i = 1; i <= n; ++i) acc += s[i] * P.a[n - i];
    acc = -acc;
    if (acc % n != 0) throw InternalError("non-integer L-polynomial coefficient at n=" + std::to_string(n));
    P.a[n] = acc / n;
  }
  BigInt qp = 1;
  for (int i = genus - 1; i >= 0; --i) {
    qp *= q;  // q^{g-i}
    P.a[2 * genus - i] = qp * P.a[i];
  }
  validate(P);
  return P;
}

LPolynomial l_polynomial(const HyperellipticCurve& curve, std::uint64_t budget) {
  std::vector<BigInt> counts;
  for (int n = 1; n <= curve.genus; ++n) counts.emplace_back(count_points(curve, n, budget));
  return l_polynomial_from_counts(curve.base.order(), curve.genus, counts);
}

std::vector<BigInt> predicted_counts(const LPolynomial& P, unsigned n_max) {
  // P(u) = prod (1 - gamma u); S_n = sum gamma^n satisfies S_n = -n a_n - sum_{i<n} a_i S_{n-i}.
  const int deg = static_cast<int>(P.a.size()) - 1;
  std::vector<BigInt> S(n_max + 1, BigInt(0)), out;
  BigInt qn = 1;
  for (unsigned n = 1; n <= n_max; ++n) {
    BigInt v = n <= static_cast<unsigned>(deg) ? BigInt(-BigInt(n) * P.a[n]) : BigInt(0);
    for (unsigned i = 1; i < n && i <= static_cast<unsigned>(deg); ++i) v -= P.a[i] * S[n - i];
    S[n] = v;
    qn *= P.q;
    out.push_back(qn + 1 - v);
  }
  return out;
}

std::string to_string(const LPolynomial& P) {
  std::string s;
  for (std::size_t i = 0; i < P.a.size(); ++i) {
    if (P.a[i] == 0) continue;
    std::string c = P.a[i].str();
    if (!s.empty()) s += (P.a[i] < 0) ? " - " : " + ";
    else if (P.a[i] < 0) s += "-";
    if (c[0] == '-') c = c.substr(1);
    if (i == 0) s += c;
    else {
      if (c != "1") s += c;
      s += i == 1 ? "u" : "u^" + std::to_string(i);
    }
  }
  return s;
}

}  // namespace ffm::zeta
