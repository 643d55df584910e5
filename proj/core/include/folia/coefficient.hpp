#pragma once

#include <complex>
#include <gmpxx.h>
#include <optional>
#include <string>
#include <vector>

namespace folia {

using Rational = mpq_class;

// Exact Gaussian rational re + i*im.
class Coefficient {
 public:
  Coefficient() = default;
  Coefficient(long v) : re_(v), im_(0) {}  // NOLINT(google-explicit-constructor)
  Coefficient(int v) : re_(v), im_(0) {}   // NOLINT(google-explicit-constructor)
  Coefficient(Rational re) : re_(std::move(re)), im_(0) {}  // NOLINT
  Coefficient(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static Coefficient i() { return {Rational(0), Rational(1)}; }
  static Coefficient fraction(long num, long den) {
    Rational r(num, den);
    r.canonicalize();
    return Coefficient(std::move(r));
  }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_integer() const;
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

  Coefficient conj() const { return {re_, -im_}; }
  Rational norm() const { return re_ * re_ + im_ * im_; }

  Coefficient& operator+=(const Coefficient& o);
  Coefficient& operator-=(const Coefficient& o);
  Coefficient& operator*=(const Coefficient& o);
  Coefficient& operator/=(const Coefficient& o);

  friend Coefficient operator+(Coefficient a, const Coefficient& b) { return a += b; }
  friend Coefficient operator-(Coefficient a, const Coefficient& b) { return a -= b; }
  friend Coefficient operator*(Coefficient a, const Coefficient& b) { return a *= b; }
  friend Coefficient operator/(Coefficient a, const Coefficient& b) { return a /= b; }
  Coefficient operator-() const { return {-re_, -im_}; }

  friend bool operator==(const Coefficient& a, const Coefficient& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const Coefficient& a, const Coefficient& b) { return !(a == b); }

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  // "3/2", "-1/2i", "1+2i"; parseable by the field DSL.
  std::string to_string() const;

 private:
  Rational re_{0};
  Rational im_{0};
};

Coefficient pow(const Coefficient& base, long exponent);

// Exact square root in Q(i), if one exists.
std::optional<Coefficient> exact_sqrt(const Coefficient& c);
std::optional<Rational> exact_sqrt(const Rational& r);

// Every alpha in Q(i) with alpha^n == c. Empty when none exists.
std::vector<Coefficient> exact_roots(const Coefficient& c, unsigned n);

}  // namespace folia
