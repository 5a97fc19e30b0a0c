#pragma once

#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace mq {

// Exact rational arithmetic on int64, reduced after every operation.
// Intermediate products go through __int128 so that desk-scale rewriting
// never overflows silently; a result outside int64 throws.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num_(n) {}
  Rational(std::int64_t n, std::int64_t d) { *this = make(n, d); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == 1 && den_ == 1; }
  bool negative() const { return num_ < 0; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return make128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                   i128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return make128(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                   i128(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return make128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  Rational abs() const { return num_ < 0 ? -*this : *this; }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  std::string str() const {
    std::string s = std::to_string(num_);
    if (den_ != 1) s += "/" + std::to_string(den_);
    return s;
  }

 private:
  using i128 = __int128;

  static Rational make(std::int64_t n, std::int64_t d) {
    return make128(n, d);
  }

  static Rational make128(i128 n, i128 d) {
    if (d == 0) throw std::domain_error("rational: zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    i128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
      throw std::overflow_error("rational: value exceeds 64-bit range");
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }

  static i128 gcd128(i128 a, i128 b) {
    while (b != 0) {
      i128 t = a % b;
      a = b;
      b = t;
    }
    return a == 0 ? 1 : a;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

// Complex number with exact rational real and imaginary parts. This is the
// coefficient field of the symbolic algebra, so canonical-form equality of
// expressions is exact.
struct RationalComplex {
  Rational re;
  Rational im;

  constexpr RationalComplex() = default;
  RationalComplex(Rational r) : re(r) {}
  RationalComplex(Rational r, Rational i) : re(r), im(i) {}
  RationalComplex(std::int64_t r) : re(r) {}

  static RationalComplex one() { return RationalComplex(Rational(1)); }
  static RationalComplex unit_imag() {
    return RationalComplex(Rational(0), Rational(1));
  }

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_real() const { return im.is_zero(); }
  bool is_imag() const { return re.is_zero() && !im.is_zero(); }

  RationalComplex conj() const { return RationalComplex(re, -im); }

  friend RationalComplex operator+(const RationalComplex& a,
                                   const RationalComplex& b) {
    return RationalComplex(a.re + b.re, a.im + b.im);
  }
  friend RationalComplex operator-(const RationalComplex& a,
                                   const RationalComplex& b) {
    return RationalComplex(a.re - b.re, a.im - b.im);
  }
  friend RationalComplex operator*(const RationalComplex& a,
                                   const RationalComplex& b) {
    return RationalComplex(a.re * b.re - a.im * b.im,
                           a.re * b.im + a.im * b.re);
  }
  RationalComplex operator-() const { return RationalComplex(-re, -im); }
  RationalComplex& operator+=(const RationalComplex& o) {
    return *this = *this + o;
  }
  RationalComplex& operator*=(const RationalComplex& o) {
    return *this = *this * o;
  }

  friend bool operator==(const RationalComplex& a, const RationalComplex& b) {
    return a.re == b.re && a.im == b.im;
  }

  std::complex<double> to_complex() const {
    return {re.to_double(), im.to_double()};
  }
};

}  // namespace mq
