#include <cmath>
#include <cstdio>

#include "folia/classify.hpp"

namespace folia {

namespace {

using cld = std::complex<long double>;

cld to_cld(const Coefficient& c) {
  const std::complex<double> z = c.to_complex();
  return {z.real(), z.imag()};
}

long double distance(const cld& a, const cld& b) { return std::abs(a - b); }

}  // namespace

std::string Scalar::to_string() const {
  if (exact) return exact->to_string();
  if (surd) return surd->to_string();
  char buf[96];
  std::snprintf(buf, sizeof buf, "~%.17g%+.17g*i", approx.real(), approx.imag());
  return buf;
}

EigenData eigen_data(const PlanarVectorField& X) { return eigen_data(X.linear_part()); }

EigenData eigen_data(const LinearPart& m) {
  EigenData e;
  e.matrix = m;
  const Coefficient tr = m.trace(), det = m.det();
  const Coefficient disc = tr * tr - Coefficient(4) * det;
  const Coefficient half = Coefficient::fraction(1, 2);

  if (auto s = exact_sqrt(disc)) {
    Coefficient l1, l2;
    if (m.b.is_zero() || m.c.is_zero()) {
      l1 = m.a;
      l2 = m.d;
    } else {
      l1 = (tr + *s) * half;
      l2 = (tr - *s) * half;
    }
    if (l1.is_zero() && !l2.is_zero()) std::swap(l1, l2);
    e.lambda1 = Scalar::from(l1);
    e.lambda2 = Scalar::from(l2);
    if (!l1.is_zero()) e.ratio = Scalar::from(l2 / l1);
    e.exact = true;
    return e;
  }

  // Irrational eigenvalues; det != 0 here since otherwise disc = tr^2.
  const cld root = std::sqrt(to_cld(disc));
  const cld a1 = (to_cld(tr) + root) / 2.0L, a2 = (to_cld(tr) - root) / 2.0L;
  const cld approx_ratio = a2 / a1;
  if (tr.is_real() && det.is_real() && sgn(disc.re()) > 0) {
    e.lambda1 = Scalar::from(QuadraticSurd{tr.re() / 2, Rational(1, 2), disc.re()});
    e.lambda2 = Scalar::from(QuadraticSurd{tr.re() / 2, Rational(-1, 2), disc.re()});
    e.exact = true;
  } else {
    e.lambda1 = Scalar::approximate({static_cast<double>(a1.real()), static_cast<double>(a1.imag())});
    e.lambda2 = Scalar::approximate({static_cast<double>(a2.real()), static_cast<double>(a2.imag())});
  }

  // The ratio r solves r + 1/r = sigma - 2 with sigma = tr^2 / det.
  const Coefficient sigma = tr * tr / det;
  const Coefficient delta = sigma * (sigma - Coefficient(4));
  const Coefficient mid = (sigma - Coefficient(2)) * half;
  if (auto sd = exact_sqrt(delta)) {
    const Coefficient r1 = mid + *sd * half, r2 = mid - *sd * half;
    e.ratio = Scalar::from(distance(to_cld(r1), approx_ratio) <= distance(to_cld(r2), approx_ratio) ? r1 : r2);
  } else if (sigma.is_real() && sgn(delta.re()) > 0) {
    const QuadraticSurd plus{mid.re(), Rational(1, 2), delta.re()}, minus{mid.re(), Rational(-1, 2), delta.re()};
    const long double ar = approx_ratio.real();
    e.ratio = Scalar::from(std::fabs(plus.value() - ar) <= std::fabs(minus.value() - ar) ? plus : minus);
  } else {
    e.ratio = Scalar::approximate({static_cast<double>(approx_ratio.real()), static_cast<double>(approx_ratio.imag())});
  }
  return e;
}

}  // namespace folia
