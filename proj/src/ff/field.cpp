#include "ffm/ff/field.hpp"

#include <algorithm>
#include <limits>

#include "ffm/core/errors.hpp"

namespace ffm::ff {

namespace {

using PVec = std::vector<std::uint64_t>;  // polynomial over F_p, constant first

void ptrim(PVec& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  // p prime, a != 0
  std::uint64_t r = 1, b = a % p, e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

PVec pmod(PVec a, const PVec& m, std::uint64_t p) {
  ptrim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint64_t li = inv_mod(m.back(), p);
  while (a.size() > dm) {
    std::uint64_t t = a.back() * li % p;
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = (a[shift + i] + (p - m[i]) * t) % p;
    ptrim(a);
  }
  return a;
}

PVec pmulmod(const PVec& a, const PVec& b, const PVec& m, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  PVec r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return pmod(std::move(r), m, p);
}

PVec ppowmod(PVec base, std::uint64_t e, const PVec& m, std::uint64_t p) {
  PVec r{1};
  base = pmod(std::move(base), m, p);
  while (e) {
    if (e & 1) r = pmulmod(r, base, m, p);
    base = pmulmod(base, base, m, p);
    e >>= 1;
  }
  return r;
}

PVec pgcd(PVec a, PVec b, std::uint64_t p) {
  ptrim(a);
  ptrim(b);
  while (!b.empty()) {
    a = pmod(std::move(a), b, p);
    std::swap(a, b);
  }
  return a;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t FieldSpec::order() const {
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    if (q > std::numeric_limits<std::uint64_t>::max() / p) throw Refusal("field order overflows 64 bits");
    q *= p;
  }
  return q;
}

bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> poly) {
  PVec f(poly.begin(), poly.end());
  ptrim(f);
  if (f.size() < 2) return false;
  const std::size_t deg = f.size() - 1;
  if (deg == 1) return true;
  PVec h{0, 1};
  for (std::size_t i = 1; i <= deg / 2; ++i) {
    h = ppowmod(h, p, f, p);
    PVec hx = h;
    if (hx.size() < 2) hx.resize(2, 0);
    hx[1] = (hx[1] + p - 1) % p;
    if (pgcd(hx, f, p).size() > 1) return false;
  }
  return true;
}

std::vector<std::uint32_t> smallest_irreducible(std::uint32_t p, std::uint32_t degree) {
  if (degree == 0 || degree > kMaxDegree) throw InvalidArgument("extension degree out of range");
  std::vector<std::uint32_t> c(degree + 1, 0);
  c[degree] = 1;
  constexpr std::uint64_t kRetryBudget = 50'000'000;
  for (std::uint64_t attempt = 0; attempt < kRetryBudget; ++attempt) {
    if (is_irreducible(p, c)) return c;
    std::uint32_t i = 0;
    while (i < degree && ++c[i] == p) c[i++] = 0;
    if (i == degree) break;
  }
  throw InternalError("irreducible search exhausted its retry budget at degree " + std::to_string(degree));
}

FieldSpec make_field(std::uint32_t p, std::uint32_t k) {
  if (p < 3 || p > kMaxCharacteristic || !is_prime(p))
    throw InvalidArgument("characteristic must be an odd prime below " + std::to_string(kMaxCharacteristic) +
                          ", got " + std::to_string(p));
  FieldSpec s;
  s.p = p;
  s.k = k;
  s.modulus = smallest_irreducible(p, k);
  return s;
}

void validate(const FieldSpec& spec) {
  if (spec.p < 3 || spec.p > kMaxCharacteristic || !is_prime(spec.p))
    throw InvalidArgument("characteristic must be an odd prime, got " + std::to_string(spec.p));
  if (spec.k < 1 || spec.k > kMaxDegree) throw InvalidArgument("extension degree out of range");
  if (spec.modulus.size() != spec.k + 1 || spec.modulus.back() != 1)
    throw InvalidArgument("modulus must be monic of degree k");
  for (auto c : spec.modulus)
    if (c >= spec.p) throw InvalidArgument("modulus coefficient out of range");
  if (!is_irreducible(spec.p, spec.modulus)) throw InvalidArgument("modulus is reducible");
}

Field::Field(FieldSpec spec) : spec_(std::move(spec)) {
  validate(spec_);
  order_ = spec_.order();
  fastmod_m_ = ~std::uint64_t{0} / spec_.p + 1;
  constexpr std::uint64_t kChiTableCap = std::uint64_t{1} << 24;
  if (order_ <= kChiTableCap) {
    chi_table_.assign(order_, -1);
    chi_table_[0] = 0;
    Element x = zero();
    for (std::uint64_t i = 1; i < order_; ++i) {
      // walk in index order without re-decoding
      std::uint32_t j = 0;
      while (++x.c[j] == spec_.p) x.c[j++] = 0;
      chi_table_[index(mul(x, x))] = 1;
    }
  }
}

Element Field::one() const {
  Element e;
  e.c[0] = 1;
  return e;
}

Element Field::from_int(std::int64_t v) const {
  Element e;
  std::int64_t p = spec_.p;
  e.c[0] = static_cast<std::uint32_t>(((v % p) + p) % p);
  return e;
}

Element Field::from_coeffs(std::span<const std::uint32_t> coeffs) const {
  if (coeffs.size() > spec_.k) throw InvalidArgument("too many coordinates for field element");
  Element e;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] >= spec_.p) throw InvalidArgument("coordinate out of range");
    e.c[i] = coeffs[i];
  }
  return e;
}

Element Field::from_index(std::uint64_t index) const {
  if (index >= order_) throw InvalidArgument("element index out of range");
  Element e;
  for (std::uint32_t i = 0; i < spec_.k; ++i) {
    e.c[i] = static_cast<std::uint32_t>(index % spec_.p);
    index /= spec_.p;
  }
  return e;
}

std::uint64_t Field::index(const Element& a) const {
  std::uint64_t v = 0;
  for (std::uint32_t i = spec_.k; i-- > 0;) v = v * spec_.p + a.c[i];
  return v;
}

Element Field::generator() const {
  if (spec_.k == 1) return from_int(-static_cast<std::int64_t>(spec_.modulus[0]));
  Element e;
  e.c[1] = 1;
  return e;
}

Element Field::add(const Element& a, const Element& b) const {
  Element r;
  const std::uint32_t p = spec_.p;
  for (std::uint32_t i = 0; i < spec_.k; ++i) {
    std::uint32_t s = a.c[i] + b.c[i];
    r.c[i] = s >= p ? s - p : s;
  }
  return r;
}

Element Field::sub(const Element& a, const Element& b) const {
  Element r;
  const std::uint32_t p = spec_.p;
  for (std::uint32_t i = 0; i < spec_.k; ++i) r.c[i] = a.c[i] >= b.c[i] ? a.c[i] - b.c[i] : a.c[i] + p - b.c[i];
  return r;
}

Element Field::neg(const Element& a) const { return sub(zero(), a); }

// K = 0 reads the degree at run time. All sums stay below 2k p^2 < 2^32.
template <std::uint32_t K>
void Field::mul_small(const Element& a, const Element& b, Element& r) const {
  const std::uint32_t k = K ? K : spec_.k;
  const std::uint32_t p = spec_.p;
  std::array<std::uint32_t, 2 * kMaxDegree> acc;
  std::fill_n(acc.begin(), 2 * k - 1, 0u);
  for (std::uint32_t i = 0; i < k; ++i)
    for (std::uint32_t j = 0; j < k; ++j) acc[i + j] += a.c[i] * b.c[j];
  const auto& m = spec_.modulus;
  for (std::uint32_t d = 2 * k - 2; d >= k; --d) {
    const std::uint32_t t = fastmod(acc[d]);
    for (std::uint32_t i = 0; i < k; ++i) acc[d - k + i] += t * (p - m[i]);
  }
  for (std::uint32_t i = 0; i < k; ++i) r.c[i] = fastmod(acc[i]);
}

Element Field::mul(const Element& a, const Element& b) const {
  const std::uint32_t k = spec_.k;
  const std::uint64_t p = spec_.p;
  Element r;
  if (k == 1) {
    r.c[0] = static_cast<std::uint32_t>(std::uint64_t{a.c[0]} * b.c[0] % p);
    return r;
  }
  if (p < kSmallP) {
    switch (k) {
      case 2: mul_small<2>(a, b, r); return r;
      case 3: mul_small<3>(a, b, r); return r;
      case 4: mul_small<4>(a, b, r); return r;
      case 5: mul_small<5>(a, b, r); return r;
      case 6: mul_small<6>(a, b, r); return r;
      case 7: mul_small<7>(a, b, r); return r;
      case 8: mul_small<8>(a, b, r); return r;
      default: mul_small<0>(a, b, r); return r;
    }
  }
  std::array<std::uint64_t, 2 * kMaxDegree> acc{};
  for (std::uint32_t i = 0; i < k; ++i) {
    if (!a.c[i]) continue;
    for (std::uint32_t j = 0; j < k; ++j) acc[i + j] += std::uint64_t{a.c[i]} * b.c[j];
  }
  if (p < (1u << 16)) {
    // entries stay below 2k p^2 < 2^64 without intermediate reductions
    const auto& m = spec_.modulus;
    for (std::uint32_t d = 2 * k - 2; d >= k; --d) {
      const std::uint64_t t = acc[d] % p;
      if (!t) continue;
      for (std::uint32_t i = 0; i < k; ++i) acc[d - k + i] += t * (p - m[i]);
    }
    for (std::uint32_t i = 0; i < k; ++i) r.c[i] = static_cast<std::uint32_t>(acc[i] % p);
    return r;
  }
  for (std::uint32_t d = 0; d + 1 < 2 * k; ++d) acc[d] %= p;
  const auto& m = spec_.modulus;
  for (std::uint32_t d = 2 * k - 2; d >= k; --d) {
    std::uint64_t t = acc[d] % p;
    if (!t) continue;
    for (std::uint32_t i = 0; i < k; ++i) acc[d - k + i] = (acc[d - k + i] + t * (p - m[i])) % p;
  }
  for (std::uint32_t i = 0; i < k; ++i) r.c[i] = static_cast<std::uint32_t>(acc[i] % p);
  return r;
}

Element Field::pow(Element a, std::uint64_t e) const {
  Element r = one();
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Element Field::inv(const Element& a) const {
  if (is_zero(a)) throw InvalidArgument("inverse of zero");
  return pow(a, order_ - 2);
}

int Field::chi(const Element& a) const {
  if (!chi_table_.empty()) return chi_table_[index(a)];
  if (is_zero(a)) return 0;
  return pow(a, (order_ - 1) / 2) == one() ? 1 : -1;
}

std::string Field::to_string(const Element& a) const {
  std::string s;
  for (std::uint32_t i = 0; i < spec_.k; ++i) {
    if (i) s += ':';
    s += std::to_string(a.c[i]);
  }
  return s;
}

int quadratic_character(const Field& field, const Element& a) { return field.chi(a); }

ElementRange::Iterator& ElementRange::Iterator::operator++() {
  ++index_;
  if (index_ < field_->order()) {
    std::uint32_t j = 0;
    const std::uint32_t p = field_->characteristic();
    while (++cur_.c[j] == p) cur_.c[j++] = 0;
  }
  return *this;
}

ElementRange::ElementRange(const Field& field, std::uint64_t budget) : field_(&field) {
  if (field.order() > budget)
    throw Refusal("enumerating " + std::to_string(field.order()) + " elements exceeds the budget of " +
                  std::to_string(budget) + "; raise the budget to at least " + std::to_string(field.order()));
}

ElementRange enumerate_elements(const Field& field, std::uint64_t budget) { return ElementRange(field, budget); }

Extension build_extension(const FieldSpec& base, std::uint32_t n) {
  if (n < 1) throw InvalidArgument("extension degree must be at least 1");
  validate(base);
  if (n == 1) {
    Field f(base);
    return {base, f.generator()};
  }
  if (std::uint64_t{base.k} * n > kMaxDegree) throw Refusal("absolute extension degree exceeds " + std::to_string(kMaxDegree));
  Extension ext;
  ext.spec = make_field(base.p, base.k * n);
  Field target(ext.spec);
  Field src(base);

  auto eval_modulus = [&](const Element& t) {
    Element acc = target.zero();
    for (std::size_t i = base.modulus.size(); i-- > 0;)
      acc = target.add(target.mul(acc, t), target.from_int(base.modulus[i]));
    return acc;
  };

  if (base.modulus[0] == 0) {  // modulus x, root 0
    ext.base_generator = target.zero();
    return ext;
  }
  const std::uint64_t Q = target.order();
  const std::uint64_t q = src.order();
  constexpr std::uint64_t kRetryBudget = 10'000;
  for (std::uint64_t attempt = 0; attempt < kRetryBudget && attempt + 1 < Q; ++attempt) {
    Element z = target.from_index(attempt + 1);
    Element w = target.pow(z, (Q - 1) / (q - 1));
    Element t = target.one();
    for (std::uint64_t j = 0; j + 1 < q; ++j) {
      if (Field::is_zero(eval_modulus(t))) {
        // pick the conjugate with the smallest packed index
        Element best = t, cur = t;
        for (std::uint32_t i = 1; i < base.k; ++i) {
          cur = target.pow(cur, base.p);
          if (target.index(cur) < target.index(best)) best = cur;
        }
        ext.base_generator = best;
        return ext;
      }
      t = target.mul(t, w);
    }
  }
  throw InternalError("embedding search exhausted its retry budget");
}

Element embed(const Field& base, const Field& target, const Extension& ext, const Element& a) {
  Element acc = target.zero();
  for (std::uint32_t i = base.degree(); i-- > 0;)
    acc = target.add(target.mul(acc, ext.base_generator), target.from_int(a.c[i]));
  return acc;
}

void trim(Poly& f) {
  while (!f.empty() && Field::is_zero(f.back())) f.pop_back();
}

int poly_degree(const Poly& f) {
  for (std::size_t i = f.size(); i-- > 0;)
    if (!Field::is_zero(f[i])) return static_cast<int>(i);
  return -1;
}

Poly poly_derivative(const Field& field, const Poly& f) {
  Poly d;
  for (std::size_t i = 1; i < f.size(); ++i) d.push_back(field.mul(field.from_int(static_cast<std::int64_t>(i)), f[i]));
  trim(d);
  return d;
}

Poly poly_mod(const Field& field, Poly a, const Poly& b) {
  const int db = poly_degree(b);
  if (db < 0) throw InvalidArgument("polynomial division by zero");
  trim(a);
  const Element li = field.inv(b[db]);
  while (poly_degree(a) >= db) {
    const int da = poly_degree(a);
    Element t = field.mul(a[da], li);
    for (int i = 0; i <= db; ++i) a[da - db + i] = field.sub(a[da - db + i], field.mul(t, b[i]));
    trim(a);
  }
  return a;
}

Poly poly_gcd(const Field& field, Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    a = poly_mod(field, std::move(a), b);
    std::swap(a, b);
  }
  if (!a.empty()) {
    Element li = field.inv(a.back());
    for (auto& c : a) c = field.mul(c, li);
  }
  return a;
}

bool is_squarefree(const Field& field, const Poly& f) {
  const int d = poly_degree(f);
  if (d < 0) return false;
  if (d == 0) return true;
  return poly_degree(poly_gcd(field, f, poly_derivative(field, f))) == 0;
}

Element poly_eval(const Field& field, const Poly& f, const Element& x) {
  Element acc = field.zero();
  for (std::size_t i = f.size(); i-- > 0;) acc = field.add(field.mul(acc, x), f[i]);
  return acc;
}

}  // namespace ffm::ff

namespace ffm::ff {

Tower::Tower(FieldSpec base) : base_(std::move(base)) {}

const Field& Tower::level(std::uint32_t n) {
  auto it = levels_.find(n);
  if (it == levels_.end()) {
    Level lv;
    lv.ext = build_extension(base_.spec(), n);
    lv.field = std::make_unique<Field>(lv.ext.spec);
    it = levels_.emplace(n, std::move(lv)).first;
  }
  return *it->second.field;
}

Element Tower::embed(std::uint32_t n, const Element& a) {
  const Field& target = level(n);
  return ff::embed(base_, target, levels_.at(n).ext, a);
}

}  // namespace ffm::ff
