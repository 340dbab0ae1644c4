#include "ffm/zeta/intpoly.hpp"

#include <stdexcept>

#include "ffm/core/errors.hpp"

namespace ffm {

namespace {

using RatPoly = std::vector<BigRat>;

void rtrim(RatPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int rdeg(const RatPoly& a) { return static_cast<int>(a.size()) - 1; }

RatPoly rderiv(const RatPoly& a) {
  RatPoly d;
  for (std::size_t i = 1; i < a.size(); ++i) d.push_back(a[i] * BigRat(static_cast<long>(i)));
  rtrim(d);
  return d;
}

void rdivmod(RatPoly a, const RatPoly& b, RatPoly& quo, RatPoly& rem) {
  rtrim(a);
  const int db = rdeg(b);
  if (db < 0) throw InternalError("rational polynomial division by zero");
  quo.assign(std::max(0, rdeg(a) - db + 1), BigRat(0));
  while (rdeg(a) >= db) {
    const int da = rdeg(a);
    BigRat t = a.back() / b.back();
    quo[da - db] = t;
    for (int i = 0; i <= db; ++i) a[da - db + i] -= t * b[i];
    a.pop_back();
    rtrim(a);
  }
  rem = std::move(a);
}

RatPoly rquo(const RatPoly& a, const RatPoly& b) {
  RatPoly q, r;
  rdivmod(a, b, q, r);
  if (!r.empty()) throw InternalError("inexact polynomial division in squarefree decomposition");
  rtrim(q);
  return q;
}

RatPoly rmonic(RatPoly a) {
  rtrim(a);
  if (a.empty()) return a;
  BigRat l = a.back();
  for (auto& c : a) c /= l;
  return a;
}

RatPoly rgcd(RatPoly a, RatPoly b) {
  rtrim(a);
  rtrim(b);
  while (!b.empty()) {
    RatPoly q, r;
    rdivmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return rmonic(std::move(a));
}

RatPoly rsub(const RatPoly& a, const RatPoly& b) {
  RatPoly r(std::max(a.size(), b.size()), BigRat(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  rtrim(r);
  return r;
}

IntPoly to_primitive(const RatPoly& a) {
  BigInt den = 1;
  for (const auto& c : a) den = boost::multiprecision::lcm(den, BigInt(boost::multiprecision::denominator(c)));
  IntPoly out;
  BigInt content = 0;
  for (const auto& c : a) {
    BigInt v = BigInt(boost::multiprecision::numerator(c)) * (den / BigInt(boost::multiprecision::denominator(c)));
    out.push_back(v);
    content = boost::multiprecision::gcd(content, v);
  }
  if (content != 0)
    for (auto& c : out) c /= content;
  // sign convention: first nonzero coefficient positive
  for (const auto& c : out) {
    if (c != 0) {
      if (c < 0)
        for (auto& d : out) d = -d;
      break;
    }
  }
  return out;
}

}  // namespace

std::vector<SquarefreeFactor> squarefree_decomposition(const IntPoly& p) {
  RatPoly f;
  for (const auto& c : p) f.emplace_back(c);
  rtrim(f);
  if (f.empty()) throw InvalidArgument("squarefree decomposition of the zero polynomial");
  std::vector<SquarefreeFactor> out;
  if (rdeg(f) == 0) return out;
  RatPoly fp = rderiv(f);
  RatPoly g = rgcd(f, fp);
  RatPoly b = rquo(f, g);
  RatPoly c = rquo(fp, g);
  RatPoly d = rsub(c, rderiv(b));
  int i = 1;
  while (rdeg(b) > 0) {
    RatPoly a = rgcd(b, d);
    if (rdeg(a) > 0) out.push_back({to_primitive(a), i});
    b = rquo(b, a);
    c = rquo(d, a);
    d = rsub(c, rderiv(b));
    ++i;
  }
  return out;
}

IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly r(a.size() + b.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

IntPoly poly_pow(const IntPoly& a, unsigned e) {
  IntPoly r{BigInt(1)};
  for (unsigned i = 0; i < e; ++i) r = poly_mul(r, a);
  return r;
}

bool vanishes_at_inverse_sqrt(const IntPoly& f, std::uint64_t q, int sign) {
  // f(s/sqrt q) = A + B sqrt(q) with A, B rational.
  BigRat A = 0, B = 0;
  BigInt qpow = 1;  // q^{floor((j+1)/2)}
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (j % 2 == 1) qpow *= q;
    BigRat term(f[j], qpow);
    if (j % 2 == 0) {
      A += term;
    } else {
      B += sign > 0 ? term : BigRat(-term);
    }
  }
  BigInt s = boost::multiprecision::sqrt(BigInt(q));
  if (s * s == q) return A + B * BigRat(s) == 0;
  return A == 0 && B == 0;
}

}  // namespace ffm
