#pragma once

#include <cmath>
#include <complex>
#include <string>

#include <boost/multiprecision/mpfr.hpp>

#include "ffm/core/errors.hpp"

namespace ffm {

// Fixed-precision mpfr types. Precision lives in the type so nothing depends
// on the (process-global) default precision of the dynamic mpfr_float.
template <unsigned Digits>
using Mp = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<Digits>,
                                         boost::multiprecision::et_off>;
using Real50 = Mp<50>;
using Real100 = Mp<100>;
using Real200 = Mp<200>;
using Real400 = Mp<400>;
using Real800 = Mp<800>;

inline constexpr unsigned kMaxDigits = 800;

template <class R>
constexpr unsigned digits_of() {
  if constexpr (std::is_same_v<R, double>) {
    return 15;
  } else {
    return std::numeric_limits<R>::digits10;
  }
}

// Calls fn.template operator()<R>() with the smallest supported R carrying at
// least `digits` decimal digits.
template <class Fn>
decltype(auto) with_digits(unsigned digits, Fn&& fn) {
  if (digits <= 50) return fn.template operator()<Real50>();
  if (digits <= 100) return fn.template operator()<Real100>();
  if (digits <= 200) return fn.template operator()<Real200>();
  if (digits <= 400) return fn.template operator()<Real400>();
  if (digits <= kMaxDigits) return fn.template operator()<Real800>();
  throw Refusal("requires " + std::to_string(digits) + " decimal digits; at most " +
                std::to_string(kMaxDigits) + " are supported");
}

template <class R>
R pi_v() {
  if constexpr (std::is_same_v<R, double>) {
    return 3.141592653589793238462643383279502884;
  } else {
    return boost::math::constants::pi<R>();
  }
}

// Minimal complex number over any real type (std::complex is only specified
// for the builtin floating types).
template <class R>
struct Cx {
  R re{0};
  R im{0};

  Cx() = default;
  Cx(R r) : re(std::move(r)), im(0) {}  // NOLINT
  Cx(R r, R i) : re(std::move(r)), im(std::move(i)) {}

  Cx& operator+=(const Cx& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Cx& operator-=(const Cx& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Cx& operator*=(const Cx& o) {
    R r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  Cx& operator/=(const Cx& o) {
    R den = o.re * o.re + o.im * o.im;
    R r = (re * o.re + im * o.im) / den;
    im = (im * o.re - re * o.im) / den;
    re = std::move(r);
    return *this;
  }
  friend Cx operator+(Cx a, const Cx& b) { return a += b; }
  friend Cx operator-(Cx a, const Cx& b) { return a -= b; }
  friend Cx operator*(Cx a, const Cx& b) { return a *= b; }
  friend Cx operator/(Cx a, const Cx& b) { return a /= b; }
  friend Cx operator-(const Cx& a) { return Cx(-a.re, -a.im); }

  Cx conj() const { return Cx(re, -im); }
  R norm() const { return re * re + im * im; }
  R abs() const {
    using std::sqrt;
    return sqrt(norm());
  }
  R arg() const {
    using std::atan2;
    return atan2(im, re);
  }
  std::complex<double> to_complex() const {
    return {static_cast<double>(re), static_cast<double>(im)};
  }

  static Cx polar(const R& r, const R& theta) {
    using std::cos;
    using std::sin;
    return Cx(r * cos(theta), r * sin(theta));
  }
};

template <class R>
Cx<R> pow_int(Cx<R> base, long e) {
  Cx<R> out(R(1));
  if (e < 0) {
    base = Cx<R>(R(1)) / base;
    e = -e;
  }
  while (e > 0) {
    if (e & 1) out *= base;
    base *= base;
    e >>= 1;
  }
  return out;
}

}  // namespace ffm
