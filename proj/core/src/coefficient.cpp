#include "folia/coefficient.hpp"

#include <cmath>
#include <numeric>

#include "folia/error.hpp"

namespace folia {

namespace {

std::string rational_string(const Rational& r) {
  return r.get_str();
}

}  // namespace

bool Coefficient::is_integer() const {
  return sgn(im_) == 0 && re_.get_den() == 1;
}

Coefficient& Coefficient::operator+=(const Coefficient& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

Coefficient& Coefficient::operator-=(const Coefficient& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

Coefficient& Coefficient::operator*=(const Coefficient& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

Coefficient& Coefficient::operator/=(const Coefficient& o) {
  if (o.is_zero()) fail(ErrorCode::DivisionByNonUnit, "series_core", "division by zero coefficient");
  if (sgn(o.im_) == 0) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  Rational n = o.norm();
  Rational re = (re_ * o.re_ + im_ * o.im_) / n;
  Rational im = (im_ * o.re_ - re_ * o.im_) / n;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::string Coefficient::to_string() const {
  if (sgn(im_) == 0) return rational_string(re_);
  std::string imag;
  if (im_ == 1) {
    imag = "i";
  } else if (im_ == -1) {
    imag = "-i";
  } else {
    imag = rational_string(im_) + "*i";
  }
  if (sgn(re_) == 0) return imag;
  if (imag.front() == '-') return rational_string(re_) + imag;
  return rational_string(re_) + "+" + imag;
}

Coefficient pow(const Coefficient& base, long exponent) {
  if (exponent < 0) return pow(Coefficient(1) / base, -exponent);
  Coefficient result(1);
  Coefficient b = base;
  while (exponent > 0) {
    if (exponent & 1) result *= b;
    exponent >>= 1;
    if (exponent) b *= b;
  }
  return result;
}

std::optional<Rational> exact_sqrt(const Rational& r) {
  if (sgn(r) < 0) return std::nullopt;
  mpz_class num = r.get_num();
  mpz_class den = r.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) {
    return std::nullopt;
  }
  mpz_class sn, sd;
  mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
  return Rational(sn, sd);
}

std::optional<Coefficient> exact_sqrt(const Coefficient& c) {
  const Rational& p = c.re();
  const Rational& q = c.im();
  if (sgn(q) == 0) {
    if (sgn(p) >= 0) {
      auto r = exact_sqrt(p);
      if (!r) return std::nullopt;
      return Coefficient(*r);
    }
    auto r = exact_sqrt(Rational(-p));
    if (!r) return std::nullopt;
    return Coefficient(Rational(0), *r);
  }
  auto m = exact_sqrt(Rational(p * p + q * q));
  if (!m) return std::nullopt;
  auto r = exact_sqrt(Rational((p + *m) / 2));
  if (!r || sgn(*r) == 0) return std::nullopt;
  Rational s = q / (2 * *r);
  return Coefficient(*r, s);
}

std::vector<Coefficient> exact_roots(const Coefficient& c, unsigned n) {
  std::vector<Coefficient> roots;
  if (n == 0) return roots;
  if (c.is_zero()) {
    roots.emplace_back(0);
    return roots;
  }
  if (n == 1) {
    roots.push_back(c);
    return roots;
  }
  // alpha^n = c with alpha in Q(i) forces L*alpha into Z[i], where L clears
  // the denominators of c (Z[i] is integrally closed).
  mpz_class lcm_den;
  mpz_lcm(lcm_den.get_mpz_t(), c.re().get_den().get_mpz_t(), c.im().get_den().get_mpz_t());
  Coefficient scaled = c * pow(Coefficient(Rational(lcm_den)), static_cast<long>(n));
  std::complex<long double> target(scaled.re().get_d(), scaled.im().get_d());
  long double mod = std::pow(std::abs(target), 1.0L / n);
  long double arg = std::arg(target) / n;
  const long double two_pi = 6.283185307179586476925286766559L;
  for (unsigned k = 0; k < n; ++k) {
    std::complex<long double> z = std::polar(mod, arg + two_pi * k / n);
    long double br = std::round(z.real());
    long double bi = std::round(z.imag());
    for (int dr = -1; dr <= 1; ++dr) {
      for (int di = -1; di <= 1; ++di) {
        Coefficient beta(Rational(mpz_class(std::to_string(static_cast<long long>(br) + dr))),
                         Rational(mpz_class(std::to_string(static_cast<long long>(bi) + di))));
        if (pow(beta, n) == scaled) {
          Coefficient alpha = beta / Coefficient(Rational(lcm_den));
          bool seen = false;
          for (const auto& r : roots) seen = seen || r == alpha;
          if (!seen) roots.push_back(alpha);
        }
      }
    }
  }
  return roots;
}

}  // namespace folia
