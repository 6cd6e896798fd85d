#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <string>
#include <string_view>

namespace stab {

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator. Expression templates are off so `auto` is safe.
using Rational = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

using BigInt = boost::multiprecision::cpp_int;

/// Parses "p", "-p" or "p/q". Throws Error(kParseError) on malformed text or q == 0.
Rational parse_rational(std::string_view text);

/// Canonical text: "p" when the denominator is 1, otherwise "p/q".
std::string format_rational(const Rational& x);

inline int sign(const Rational& x) { return x.sign(); }

struct GaussianRational {
  Rational re;
  Rational im;

  friend GaussianRational operator+(const GaussianRational& x, const GaussianRational& y) {
    return {x.re + y.re, x.im + y.im};
  }
  friend GaussianRational operator-(const GaussianRational& x, const GaussianRational& y) {
    return {x.re - y.re, x.im - y.im};
  }
  friend GaussianRational operator-(const GaussianRational& x) { return {-x.re, -x.im}; }
  friend GaussianRational operator*(const GaussianRational& x, const GaussianRational& y) {
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
  }
  friend GaussianRational operator*(const Rational& s, const GaussianRational& x) {
    return {s * x.re, s * x.im};
  }
  GaussianRational& operator+=(const GaussianRational& y) {
    re += y.re;
    im += y.im;
    return *this;
  }
  friend bool operator==(const GaussianRational&, const GaussianRational&) = default;

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
};

std::string format_gaussian(const GaussianRational& z);

}  // namespace stab
