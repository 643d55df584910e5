#pragma once

#include <memory>
#include <optional>
#include <string>

#include "folia/series.hpp"

namespace folia {

/// Matrix of the linear part: fx = a x + b y, fy = c x + d y.
struct LinearPart {
  Coefficient a, b, c, d;

  Coefficient trace() const { return a + d; }
  Coefficient det() const { return a * d - b * c; }
  bool is_zero() const { return a.is_zero() && b.is_zero() && c.is_zero() && d.is_zero(); }
};

/// X = fx * dx + fy * dy with components sharing one truncation order.
class PlanarVectorField {
 public:
  PlanarVectorField() = default;
  PlanarVectorField(Series2 fx, Series2 fy);

  const Series2& fx() const { return fx_; }
  const Series2& fy() const { return fy_; }
  int order() const { return fx_.order(); }

  bool singular_at_origin() const {
    return fx_.constant_term().is_zero() && fy_.constant_term().is_zero();
  }
  LinearPart linear_part() const;
  /// All coefficients real.
  bool is_real() const;

  PlanarVectorField truncated(int order) const { return {fx_.truncated(order), fy_.truncated(order)}; }
  PlanarVectorField extended(int order) const { return {fx_.extended(order), fy_.extended(order)}; }

  friend bool operator==(const PlanarVectorField& a, const PlanarVectorField& b) {
    return a.fx_ == b.fx_ && a.fy_ == b.fy_;
  }
  friend PlanarVectorField operator+(const PlanarVectorField& a, const PlanarVectorField& b) {
    return {a.fx_ + b.fx_, a.fy_ + b.fy_};
  }
  friend PlanarVectorField operator-(const PlanarVectorField& a, const PlanarVectorField& b) {
    return {a.fx_ - b.fx_, a.fy_ - b.fy_};
  }
  friend PlanarVectorField operator*(const Coefficient& c, const PlanarVectorField& a) {
    return {a.fx_ * c, a.fy_ * c};
  }

  /// "(fx)*dx + (fy)*dy", accepted by the field DSL.
  std::string to_string() const;

 private:
  Series2 fx_;
  Series2 fy_;
};

/// Invertible change of coordinates (x, y) -> (u(x,y), v(x,y)) fixing the
/// origin. The compositional inverse is computed on first use and shared
/// between copies.
class CoordinateChange {
 public:
  /// Identity at order 1.
  CoordinateChange() : CoordinateChange(Series2::x(1), Series2::y(1)) {}
  CoordinateChange(Series2 u, Series2 v);

  static CoordinateChange identity(int order);
  static CoordinateChange linear(const LinearPart& m, int order);

  const Series2& u() const { return u_; }
  const Series2& v() const { return v_; }
  int order() const { return u_.order(); }
  LinearPart linear_part() const;

  const CoordinateChange& inverse() const;
  /// f o this
  Series2 apply_to(const Series2& f) const { return compose2(f, u_, v_); }
  bool is_identity() const;
  /// True when the change restricts to the identity on {y = 0}.
  bool fixes_axis_pointwise() const;

  friend bool operator==(const CoordinateChange& a, const CoordinateChange& b) {
    return a.u_ == b.u_ && a.v_ == b.v_;
  }

 private:
  struct Cache;
  Series2 u_;
  Series2 v_;
  std::shared_ptr<Cache> cache_;
};

/// outer o inner
CoordinateChange compose(const CoordinateChange& outer, const CoordinateChange& inner);

/// D(phi)^{-1} . (X o phi): the field X expressed in the source coordinates of phi.
PlanarVectorField pullback(const PlanarVectorField& X, const CoordinateChange& phi);
/// The field X transported forward along phi (pullback by the inverse).
PlanarVectorField pushforward(const PlanarVectorField& X, const CoordinateChange& phi);

enum class Axis {
  XAxis,  ///< {y = 0}
  YAxis,  ///< {x = 0}
};
std::string to_string(Axis a);

bool is_axis_invariant(const PlanarVectorField& X, Axis axis);
/// h * X for a unit h (h(0,0) != 0).
PlanarVectorField multiply_by_unit(const PlanarVectorField& X, const Series2& h);

/// det(X1, X2) = fx1*fy2 - fy1*fx2.
Series2 determinant(const PlanarVectorField& X1, const PlanarVectorField& X2);
/// Same foliation: det(X1, X2) vanishes modulo truncation.
bool colinear(const PlanarVectorField& X1, const PlanarVectorField& X2);
/// Vanishing order of det(X1, X2); nullopt stands for an identically zero
/// determinant (infinite contact).
std::optional<int> contact_order(const PlanarVectorField& X1, const PlanarVectorField& X2);

struct InfinityChart {
  PlanarVectorField field;  ///< in coordinates (1/x, y)
  int rescale_power = 0;    ///< power of 1/x the field was multiplied by
};

/// Field in the chart (xt, y) = (1/x, y). Stored coefficients are read as a
/// polynomial in x of degree <= max_x_degree; with `rescale` the result is
/// multiplied by the power of xt that makes it holomorphic and not divisible
/// by xt.
InfinityChart chart_at_infinity(const PlanarVectorField& X, bool rescale, int max_x_degree = 3);

struct CSIndex {
  Coefficient value;
  Axis curve = Axis::XAxis;
};

/// Residue at the origin of (d fy/dy restricted to {y=0}) / (fx restricted
/// to {y=0}), or the symmetric expression along {x=0}.
CSIndex camacho_sad_index(const PlanarVectorField& X, Axis axis = Axis::XAxis);

/// X = (f0 + f1 x + f2 x^2 + f3 x^3) / (g0 + g1 x) dx + dy.
struct RationalInXField {
  Series1 f0, f1, f2, f3;
  Series1 g0, g1;

  /// Holomorphic representative: the field multiplied by the denominator.
  PlanarVectorField cleared() const;
};

struct PreparationResult {
  PlanarVectorField field;   ///< x^2 dx + (y + x f(y)) dy
  Series1 f;                 ///< the functional coefficient
  CoordinateChange change;   ///< input coordinates -> output coordinates
  Coefficient linear_rate;   ///< g(0), the factor divided out
};

/// Reduces the prepared rational form to x^2 dx + y dy + x f(y) dy.
/// Normalization: x = infinity is the vertical leaf and x = 0 the invariant
/// curve, as encoded by the input constraints; the y-coordinate is fixed by
/// tangency to the identity and x by the scaling x -> x / g(0).
PreparationResult reduce_preparation(const RationalInXField& R);

}  // namespace folia
