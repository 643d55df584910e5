#pragma once

#include <complex>

#include "folia/vfield.hpp"

namespace folia {

enum class LeafPresentation { Function, Field };

/// Regular foliation with {y = 0} as a leaf and contact order k with the
/// fibration {y = const}, given either by the first integral
/// y + y^k x f(x,y) or by the field f(x,y) dx + y^k dy.
struct FoliationWithAxisLeaf {
  LeafPresentation presentation = LeafPresentation::Function;
  int k = 1;
  Series2 f;

  /// Checks k >= 1 and f(0,0) != 0.
  FoliationWithAxisLeaf(LeafPresentation presentation, int k, Series2 f);

  /// y + y^k x f(x,y)
  Series2 function() const;
  /// f(x,y) dx + y^k dy
  PlanarVectorField field() const;
};

/// (x f(x,y), y): F == (y + x y^k) o change for the function presentation.
CoordinateChange flowbox_normalize(const FoliationWithAxisLeaf& F);

/// (phi(x,y), y) with pullback(dx + y^k dy, change) == f dx + y^k dy; phi is
/// exact through degree N, so the pullback identity holds through degree N - 1.
/// phi(0,y) = 0 when fix_axis, otherwise phi(0,y) = h(y) with h(0) = 0.
/// On {y = 0}, phi(x,0) is the primitive of 1/f(x,0).
CoordinateChange flowbox_normalize_field(const FoliationWithAxisLeaf& X, bool fix_axis = true,
                                         const Series1& h = Series1());

/// u(x, 0) of the change, the restriction to {y = 0}.
Series1 axis_restriction(const CoordinateChange& change);

/// omega = exp(log_factor) * density(x) dx, with
/// density(x) = g(x,0) exp((k-1) F(x)), F the primitive of f(x,0) vanishing
/// at 0, and log_factor = -(k-1) F(x0). The holonomy of dx + y(f + y^{k-1} g) dy
/// from {x = x0} to {x = x1}, read in a coordinate constant on the leaves of
/// dx + y f dy, is y + (integral of omega) y^k + ... for k >= 2; for k = 1
/// the integral is the logarithm of the relative multiplier.
struct OmegaInvariant {
  Series1 density;
  Coefficient base_point;
  Coefficient log_factor;
  int k = 2;

  /// Exact primitive of density between a and b (polynomial evaluation).
  Coefficient density_integral(const Coefficient& a, const Coefficient& b) const;
  /// exp(log_factor) * density_integral(base_point, x1).
  std::complex<double> integral_to(const Coefficient& x1) const;
};

/// X = dx + y f dy, Y = X + y^k g dy. Raises VanishingG when g(x,0) vanishes
/// at 0 or at x0.
OmegaInvariant omega_invariant(const Series2& f, const Series2& g, int k, const Coefficient& x0);

}  // namespace folia
