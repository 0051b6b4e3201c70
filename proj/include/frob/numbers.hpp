#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace frob {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// 50 significant decimal digits; every float tolerance in the library
// assumes at least this precision.
using Real50 = boost::multiprecision::cpp_bin_float_50;
using Complex50 = boost::multiprecision::cpp_complex_50;

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};
struct ChartMismatch : Error {
  explicit ChartMismatch(const std::string& msg) : Error(msg) {}
};
struct SingularPoint : Error {
  explicit SingularPoint(const std::string& msg) : Error(msg) {}
};
struct DegenerateInput : Error {
  explicit DegenerateInput(const std::string& msg) : Error(msg) {}
};
struct PreconditionError : Error {
  explicit PreconditionError(const std::string& msg) : Error(msg) {}
};

inline Rational rational_gcd(const Rational& a, const Rational& b) {
  if (a == 0) return abs(b);
  if (b == 0) return abs(a);
  Integer n = gcd(numerator(a), numerator(b));
  Integer d = lcm(denominator(a), denominator(b));
  return Rational(n, d);
}

// Gaussian rational a + b*i; the universal coefficient type.  Real charts
// simply never grow an imaginary part.
struct GRational {
  Rational re, im;

  GRational() : re(0), im(0) {}
  GRational(int v) : re(v), im(0) {}
  GRational(long v) : re(v), im(0) {}
  GRational(const Rational& r) : re(r), im(0) {}
  GRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }
  GRational conj() const { return {re, -im}; }

  GRational operator-() const { return {-re, -im}; }
  GRational& operator+=(const GRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GRational& operator-=(const GRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  friend GRational operator+(GRational a, const GRational& b) { return a += b; }
  friend GRational operator-(GRational a, const GRational& b) { return a -= b; }
  friend GRational operator*(const GRational& a, const GRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GRational operator/(const GRational& a, const GRational& b) {
    Rational n2 = b.re * b.re + b.im * b.im;
    if (n2 == 0) throw Error("division by zero Gaussian rational");
    GRational num = a * b.conj();
    return {num.re / n2, num.im / n2};
  }
  GRational& operator*=(const GRational& o) { return *this = *this * o; }
  GRational& operator/=(const GRational& o) { return *this = *this / o; }

  friend bool operator==(const GRational& a, const GRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GRational& a, const GRational& b) { return !(a == b); }
  // total order used only for canonical term ordering
  friend bool operator<(const GRational& a, const GRational& b) {
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
  }

  Complex50 to_complex() const { return Complex50(Real50(re), Real50(im)); }
};

inline std::string to_string(const Rational& q) {
  std::string s = numerator(q).str();
  if (denominator(q) != 1) s += "/" + denominator(q).str();
  return s;
}

// exp(a+bi) written out by hand; keeps us independent of the complex
// adaptor's transcendental coverage.
inline Complex50 cexp(const Complex50& z) {
  Real50 m = exp(z.real());
  return Complex50(m * cos(z.imag()), m * sin(z.imag()));
}

inline double abs_double(const Complex50& z) { return static_cast<double>(abs(z)); }
}  // namespace frob
