#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace ffm::ff {

inline constexpr std::uint32_t kMaxDegree = 32;      // max absolute degree over F_p
inline constexpr std::uint32_t kMaxCharacteristic = 65521;
inline constexpr std::uint64_t kDefaultEnumerationBudget = std::uint64_t{1} << 26;

bool is_prime(std::uint64_t n);

// F_{p^k} as F_p[x]/(modulus). modulus is monic, constant term first.
struct FieldSpec {
  std::uint32_t p = 3;
  std::uint32_t k = 1;
  std::vector<std::uint32_t> modulus{0, 1};

  std::uint64_t order() const;  // p^k
  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

// Throws InvalidArgument unless p is an odd prime and modulus is monic irreducible of degree k.
void validate(const FieldSpec& spec);

bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> poly);

// Smallest monic irreducible of the given degree, ordered by packed index of
// the lower coefficients (constant term is the least significant digit).
std::vector<std::uint32_t> smallest_irreducible(std::uint32_t p, std::uint32_t degree);

FieldSpec make_field(std::uint32_t p, std::uint32_t k = 1);

// Polynomial-basis coordinates; entries at positions >= k are always zero.
struct Element {
  std::array<std::uint32_t, kMaxDegree> c{};
  friend bool operator==(const Element&, const Element&) = default;
};

class Field {
 public:
  explicit Field(FieldSpec spec);

  const FieldSpec& spec() const { return spec_; }
  std::uint32_t characteristic() const { return spec_.p; }
  std::uint32_t degree() const { return spec_.k; }
  std::uint64_t order() const { return order_; }

  Element zero() const { return {}; }
  Element one() const;
  Element from_int(std::int64_t v) const;  // image of v in the prime field
  Element from_coeffs(std::span<const std::uint32_t> coeffs) const;
  Element from_index(std::uint64_t index) const;
  std::uint64_t index(const Element& a) const;  // sum c_i p^i
  Element generator() const;                   // the class of x

  static bool is_zero(const Element& a) { return a == Element{}; }
  Element add(const Element& a, const Element& b) const;
  Element sub(const Element& a, const Element& b) const;
  Element neg(const Element& a) const;
  Element mul(const Element& a, const Element& b) const;
  Element pow(Element a, std::uint64_t e) const;
  Element inv(const Element& a) const;  // throws InvalidArgument on zero

  // +1 nonzero square, -1 non-square, 0 for zero.
  int chi(const Element& a) const;

  std::string to_string(const Element& a) const;

 private:
  static constexpr std::uint32_t kSmallP = 4096;
  template <std::uint32_t K>
  void mul_small(const Element& a, const Element& b, Element& r) const;
  std::uint32_t fastmod(std::uint32_t a) const {
    return static_cast<std::uint32_t>((static_cast<unsigned __int128>(fastmod_m_ * a) * spec_.p) >> 64);
  }

  FieldSpec spec_;
  std::uint64_t order_;
  std::uint64_t fastmod_m_ = 0;
  std::vector<std::int8_t> chi_table_;  // indexed by packed index, when small enough
};

int quadratic_character(const Field& field, const Element& a);

// Deterministic lexicographic stream of all field elements.
class ElementRange {
 public:
  class Iterator {
   public:
    using value_type = Element;
    using difference_type = std::ptrdiff_t;
    Iterator() = default;
    Iterator(const Field* f, std::uint64_t i) : field_(f), index_(i) {
      if (field_ && index_ < field_->order()) cur_ = field_->from_index(index_);
    }
    const Element& operator*() const { return cur_; }
    Iterator& operator++();
    Iterator operator++(int) {
      Iterator t = *this;
      ++*this;
      return t;
    }
    friend bool operator==(const Iterator& a, const Iterator& b) { return a.index_ == b.index_; }

   private:
    const Field* field_ = nullptr;
    std::uint64_t index_ = 0;
    Element cur_{};
  };

  ElementRange(const Field& field, std::uint64_t budget = kDefaultEnumerationBudget);
  Iterator begin() const { return {field_, 0}; }
  Iterator end() const { return {nullptr, field_->order()}; }
  std::uint64_t size() const { return field_->order(); }

 private:
  const Field* field_;
};

// Throws Refusal if q exceeds the budget.
ElementRange enumerate_elements(const Field& field, std::uint64_t budget = kDefaultEnumerationBudget);

struct Extension {
  FieldSpec spec;          // F_{q^n}
  Element base_generator;  // image of the base field's x in the new field
};

Extension build_extension(const FieldSpec& base, std::uint32_t n);

// Image of a base-field element under the embedding recorded in ext.
Element embed(const Field& base, const Field& target, const Extension& ext, const Element& a);

// Polynomials over a Field, constant term first, no trailing zeros.
using Poly = std::vector<Element>;

void trim(Poly& f);
int poly_degree(const Poly& f);  // -1 for the zero polynomial
Poly poly_derivative(const Field& field, const Poly& f);
Poly poly_mod(const Field& field, Poly a, const Poly& b);
Poly poly_gcd(const Field& field, Poly a, Poly b);  // monic
bool is_squarefree(const Field& field, const Poly& f);
Element poly_eval(const Field& field, const Poly& f, const Element& x);

}  // namespace ffm::ff

namespace ffm::ff {

// Lazily built F_{q^n} contexts over a fixed base with cached embeddings.
// Not thread-safe; give each worker its own tower.
class Tower {
 public:
  explicit Tower(FieldSpec base);
  const Field& base() const { return base_; }
  const Field& level(std::uint32_t n);
  Element embed(std::uint32_t n, const Element& a);

 private:
  struct Level {
    Extension ext;
    std::unique_ptr<Field> field;
  };
  Field base_;
  std::map<std::uint32_t, Level> levels_;
};

}  // namespace ffm::ff
