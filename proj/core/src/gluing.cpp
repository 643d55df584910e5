#include "folia/gluing.hpp"

#include <algorithm>

#include "folia/error.hpp"

namespace folia {

namespace {

const char* kModule = "gluing";

Series2 y_power(int k, int order) { return Series2::monomial(0, k, 1, order); }

}  // namespace

FoliationWithAxisLeaf::FoliationWithAxisLeaf(LeafPresentation presentation, int k, Series2 f)
    : presentation(presentation), k(k), f(std::move(f)) {
  if (k < 1) fail(ErrorCode::ConstraintViolated, kModule, "contact order k must be >= 1");
  if (this->f.constant_term().is_zero()) fail(ErrorCode::ConstraintViolated, kModule, "f(0,0) must be nonzero");
}

Series2 FoliationWithAxisLeaf::function() const {
  const int n = f.order();
  return Series2::y(n) + f.times_monomial(1, k);
}

PlanarVectorField FoliationWithAxisLeaf::field() const { return {f, y_power(k, f.order())}; }

CoordinateChange flowbox_normalize(const FoliationWithAxisLeaf& F) {
  const int n = F.f.order();
  return {F.f.times_monomial(1, 0), Series2::y(n)};
}

CoordinateChange flowbox_normalize_field(const FoliationWithAxisLeaf& X, bool fix_axis, const Series1& h) {
  const int n = X.f.order();
  Series2 start(n);
  if (!fix_axis) {
    if (!h.coeff(0).is_zero()) fail(ErrorCode::ConstraintViolated, kModule, "h(0) must vanish");
    start = Series2::from_univariate(h.extended(std::max(h.order(), n)).truncated(n), Var::Y);
  }
  // f phi_x + y^k phi_y = 1 with phi(0, y) = h(y); each pass fixes one more degree.
  const Series2 inv_f = inverse(X.f);
  Series2 phi = start;
  for (int pass = 0; pass <= n + 1; ++pass) {
    Series2 rhs = Series2::constant(1, n) - derive(phi, Var::Y).extended(n).times_monomial(0, X.k);
    phi = start + integrate(rhs * inv_f, Var::X).truncated(n);
  }
  return {phi, Series2::y(n)};
}

Series1 axis_restriction(const CoordinateChange& change) { return change.u().restrict_to_axis(Var::X); }

Coefficient OmegaInvariant::density_integral(const Coefficient& a, const Coefficient& b) const {
  const Series1 prim = integrate1(density);
  return prim.evaluate(b) - prim.evaluate(a);
}

std::complex<double> OmegaInvariant::integral_to(const Coefficient& x1) const {
  return std::exp(log_factor.to_complex()) * density_integral(base_point, x1).to_complex();
}

OmegaInvariant omega_invariant(const Series2& f, const Series2& g, int k, const Coefficient& x0) {
  if (k < 1) fail(ErrorCode::ConstraintViolated, kModule, "contact order k must be >= 1");
  const int n = g.order();
  const Series1 g0 = g.restrict_to_axis(Var::X);
  if (g0.coeff(0).is_zero() || g0.evaluate(x0).is_zero())
    fail(ErrorCode::VanishingG, kModule, "g(x,0) vanishes at 0 or at the base point");
  const Series1 fa = f.restrict_to_axis(Var::X);
  const Series1 F = integrate1(fa.extended(std::max(fa.order(), n)).truncated(n)).truncated(n);
  OmegaInvariant w;
  w.k = k;
  w.base_point = x0;
  w.density = g0 * exp1(F * Coefficient(k - 1));
  w.log_factor = -(Coefficient(k - 1) * F.evaluate(x0));
  return w;
}

}  // namespace folia
