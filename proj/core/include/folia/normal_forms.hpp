#pragma once

#include "folia/classify.hpp"
#include "folia/linearize.hpp"
#include "folia/named_forms.hpp"

namespace folia {

/// x^{k+1} dx + y dy + mu x^k y dy + x^{k+N} f(x,y) dy, reached by
/// pullback(X, compose(linear, change)) == unit * field() mod truncation.
struct DulacForm {
  int k = 0;
  Coefficient mu;
  int depth = 0;             ///< N
  Series2 remainder;         ///< f
  CoordinateChange linear;   ///< initial linear normalization
  CoordinateChange change;   ///< tangent to the identity
  Series2 unit;

  PlanarVectorField field() const;
};

/// Saddle-node prenormalization with the zero eigendirection along dx.
/// Requires truncation order >= k + depth + 2.
DulacForm dulac_prenormalize(const PlanarVectorField& X, int depth);

/// pullback(X, change) == unit * make_named(target, order) mod truncation.
struct FormalConjugacy {
  CoordinateChange change;
  Series2 unit;
  NamedForm target;
};

/// Poincare-Dulac formal normal form of a singular field with nonzero linear
/// part at truncation `order` (missing coefficients of X read as 0).
/// Saddle-nodes are oriented with the nonzero eigendirection along dx;
/// resonant saddles use q x dx - (p + u^k + mu u^{2k}) y dy with u = x^p y^q and eigenratio -p/q.
FormalConjugacy formal_normal_form(const PlanarVectorField& X, int order);

/// Tangent-to-identity psi with c(psi) = psi' * m mod truncation, for 1-D
/// fields c and m of valuation k + 1 with equal leading coefficient and
/// equal residue of 1/c and 1/m.
Series1 conjugate_1d(const Series1& c, const Series1& m, int k);

}  // namespace folia
