#include <doctest.h>

#include <set>

#include "ffm/core/errors.hpp"
#include "ffm/core/rng.hpp"
#include "ffm/ff/field.hpp"

using namespace ffm;
using namespace ffm::ff;

namespace {

// Brute-force irreducibility: no monic factor of degree 1..k/2 divides poly.
bool irreducible_by_division(std::uint32_t p, const std::vector<std::uint32_t>& poly) {
  const int k = static_cast<int>(poly.size()) - 1;
  for (int d = 1; 2 * d <= k; ++d) {
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::vector<long> g(d + 1);
      std::uint64_t t = idx;
      for (int i = 0; i < d; ++i) {
        g[i] = static_cast<long>(t % p);
        t /= p;
      }
      g[d] = 1;
      std::vector<long> r(poly.begin(), poly.end());
      for (int top = k; top >= d; --top) {
        long c = r[top] % static_cast<long>(p);
        if (c == 0) continue;
        for (int i = 0; i <= d; ++i) r[top - d + i] = ((r[top - d + i] - c * g[i]) % long(p) + long(p)) % long(p);
      }
      bool zero = true;
      for (int i = 0; i < d; ++i) zero &= r[i] % long(p) == 0;
      if (zero) return false;
    }
  }
  return true;
}

std::vector<FieldSpec> small_fields() {
  return {make_field(3), make_field(5), make_field(7), make_field(3, 2), make_field(5, 2),
          make_field(3, 3), make_field(7, 2), make_field(3, 4)};
}

}  // namespace

TEST_SUITE("ff") {
  TEST_CASE("validate rejects bad characteristics") {
    CHECK_THROWS_AS(make_field(2), InvalidArgument);
    CHECK_THROWS_AS(make_field(9), InvalidArgument);
    CHECK_THROWS_AS(validate(FieldSpec{5, 2, {1, 0, 1}}), InvalidArgument);  // x^2 + 1 = (x-2)(x+2) over F_5
    CHECK_NOTHROW(validate(FieldSpec{3, 2, {1, 0, 1}}));
  }

  TEST_CASE("chosen moduli are the smallest irreducibles") {
    for (std::uint32_t p : {3u, 5u, 7u}) {
      for (std::uint32_t k = 2; k <= (p == 3 ? 5u : 3u); ++k) {
        auto m = smallest_irreducible(p, k);
        CHECK(irreducible_by_division(p, m));
        std::uint64_t idx = 0;
        for (std::uint32_t i = k; i-- > 0;) idx = idx * p + m[i];
        for (std::uint64_t j = 0; j < idx; ++j) {
          std::vector<std::uint32_t> q(k + 1);
          std::uint64_t t = j;
          for (std::uint32_t i = 0; i < k; ++i) {
            q[i] = static_cast<std::uint32_t>(t % p);
            t /= p;
          }
          q[k] = 1;
          CHECK_FALSE(irreducible_by_division(p, q));
        }
      }
    }
  }

  TEST_CASE("is_irreducible agrees with trial division") {
    for (std::uint32_t p : {3u, 5u}) {
      for (std::uint32_t k = 1; k <= 4; ++k) {
        std::uint64_t count = 1;
        for (std::uint32_t i = 0; i < k; ++i) count *= p;
        for (std::uint64_t j = 0; j < count; ++j) {
          std::vector<std::uint32_t> q(k + 1);
          std::uint64_t t = j;
          for (std::uint32_t i = 0; i < k; ++i) {
            q[i] = static_cast<std::uint32_t>(t % p);
            t /= p;
          }
          q[k] = 1;
          CHECK(is_irreducible(p, q) == irreducible_by_division(p, q));
        }
      }
    }
  }

  TEST_CASE("build_extension basics") {
    auto e1 = build_extension(make_field(3), 1);
    CHECK(e1.spec == make_field(3));
    Field f3(make_field(3));
    for (std::uint64_t i = 0; i < 3; ++i) CHECK(embed(f3, f3, e1, f3.from_index(i)) == f3.from_index(i));

    auto e2 = build_extension(make_field(3), 2);
    Field f9(e2.spec);
    CHECK(f9.order() == 9);
    // multiplicative group of order 8: some element has order exactly 8
    bool found = false;
    for (std::uint64_t i = 1; i < 9 && !found; ++i) {
      auto a = f9.from_index(i);
      bool gen = true;
      for (std::uint64_t d : {1u, 2u, 4u}) gen &= !(f9.pow(a, d) == f9.one());
      found = gen && f9.pow(a, 8) == f9.one();
    }
    CHECK(found);
  }

  TEST_CASE("embedding is a ring homomorphism (exhaustive tables)") {
    struct Case {
      std::uint32_t p, k, n;
    };
    for (auto c : {Case{5, 1, 2}, Case{3, 1, 3}, Case{3, 2, 2}, Case{5, 2, 2}, Case{7, 1, 2}}) {
      auto base_spec = make_field(c.p, c.k);
      Field base(base_spec);
      auto ext = build_extension(base_spec, c.n);
      Field top(ext.spec);
      CHECK(top.order() == base.order() * (c.n == 2 ? base.order() : base.order() * base.order()));
      for (std::uint64_t i = 0; i < base.order(); ++i) {
        const auto a = base.from_index(i);
        for (std::uint64_t j = 0; j < base.order(); ++j) {
          const auto b = base.from_index(j);
          CHECK(embed(base, top, ext, base.add(a, b)) == top.add(embed(base, top, ext, a), embed(base, top, ext, b)));
          CHECK(embed(base, top, ext, base.mul(a, b)) == top.mul(embed(base, top, ext, a), embed(base, top, ext, b)));
        }
      }
      CHECK(embed(base, top, ext, base.one()) == top.one());
    }
    // image of 2 in F_25 still squares to 4
    auto ext = build_extension(make_field(5), 2);
    Field f5(make_field(5)), f25(ext.spec);
    auto two = embed(f5, f25, ext, f5.from_int(2));
    CHECK(f25.mul(two, two) == f25.from_int(4));
  }

  TEST_CASE("quadratic character examples") {
    Field f5(make_field(5)), f3(make_field(3));
    CHECK(quadratic_character(f5, f5.zero()) == 0);
    CHECK(quadratic_character(f5, f5.from_int(4)) == 1);
    CHECK(quadratic_character(f3, f3.from_int(2)) == -1);
  }

  TEST_CASE("character is multiplicative and balanced") {
    for (const auto& spec : small_fields()) {
      Field f(spec);
      if (f.order() > 81) continue;
      for (const auto& a : enumerate_elements(f))
        for (const auto& b : enumerate_elements(f)) CHECK(f.chi(f.mul(a, b)) == f.chi(a) * f.chi(b));
    }
    for (auto spec : {make_field(3), make_field(5), make_field(3, 2), make_field(3, 4), make_field(3, 8), make_field(5, 4),
                      make_field(7, 4), make_field(79), make_field(5, 5)}) {
      Field f(spec);
      if (f.order() > 6561) continue;
      std::uint64_t squares = 0;
      std::set<std::uint64_t> direct;  // independent: the set of nonzero squares
      for (const auto& a : enumerate_elements(f)) {
        squares += f.chi(a) == 1;
        if (!Field::is_zero(a)) direct.insert(f.index(f.mul(a, a)));
      }
      CHECK(squares == (f.order() - 1) / 2);
      CHECK(direct.size() == (f.order() - 1) / 2);
      for (const auto& a : enumerate_elements(f))
        if (!Field::is_zero(a)) CHECK((f.chi(a) == 1) == (direct.count(f.index(a)) == 1));
    }
  }

  TEST_CASE("enumeration") {
    Field f3(make_field(3)), f9(make_field(3, 2)), f25(make_field(5, 2));
    CHECK(enumerate_elements(f3).size() == 3);
    std::size_t n9 = 0;
    for ([[maybe_unused]] const auto& a : enumerate_elements(f9)) ++n9;
    CHECK(n9 == 9);
    Element sum{};
    std::set<std::uint64_t> seen;
    std::uint64_t prev = 0;
    bool ordered = true, first = true;
    for (const auto& a : enumerate_elements(f25)) {
      sum = f25.add(sum, a);
      const auto idx = f25.index(a);
      if (!first) ordered &= idx == prev + 1;
      first = false;
      prev = idx;
      seen.insert(idx);
    }
    CHECK(seen.size() == 25);
    CHECK(ordered);
    CHECK(Field::is_zero(sum));
    CHECK_THROWS_AS(enumerate_elements(f25, 24), Refusal);
  }

  TEST_CASE("Frobenius fixes every element and inverses are exact") {
    for (const auto& spec : small_fields()) {
      Field f(spec);
      auto gen = substream(17, spec.p * 100 + spec.k);
      for (int i = 0; i < 50; ++i) {
        auto a = f.from_index(uniform_below(gen, f.order()));
        CHECK(f.pow(a, f.order()) == a);
        if (!Field::is_zero(a)) CHECK(f.mul(a, f.inv(a)) == f.one());
      }
    }
    Field f(make_field(3));
    CHECK_THROWS_AS(f.inv(f.zero()), InvalidArgument);
  }

  TEST_CASE("Tower caches levels") {
    Tower t(make_field(5));
    const Field& a = t.level(2);
    const Field& b = t.level(2);
    CHECK(&a == &b);
    CHECK(a.order() == 25);
    CHECK(t.embed(2, t.base().from_int(3)) == a.from_int(3));
  }

  TEST_CASE("polynomial helpers") {
    Field f(make_field(5));
    Poly x3x1{f.from_int(1), f.from_int(1), f.zero(), f.one()};
    CHECK(is_squarefree(f, x3x1));
    Poly sq{f.from_int(1), f.from_int(2), f.one()};  // (x+1)^2
    CHECK_FALSE(is_squarefree(f, sq));
    CHECK(poly_degree(poly_gcd(f, sq, poly_derivative(f, sq))) == 1);
    CHECK(poly_eval(f, x3x1, f.from_int(2)) == f.from_int(1));  // 8 + 2 + 1 = 11
  }
}
