#include "folia/vfield.hpp"

#include <mutex>

#include "folia/error.hpp"
#include "folia/linearize.hpp"

namespace folia {

namespace {

constexpr const char* kModule = "vfield";

void require_same_order(int a, int b) {
  if (a != b) {
    fail(ErrorCode::TruncationMismatch, kModule,
         "orders " + std::to_string(a) + " and " + std::to_string(b) + " differ");
  }
}

bool series_is_real(const Series2& s) {
  bool real = true;
  s.for_each_nonzero([&](int, int, const Coefficient& c) { real = real && c.is_real(); });
  return real;
}

}  // namespace

// ---- PlanarVectorField ---------------------------------------------------------

PlanarVectorField::PlanarVectorField(Series2 fx, Series2 fy) : fx_(std::move(fx)), fy_(std::move(fy)) {
  require_same_order(fx_.order(), fy_.order());
}

LinearPart PlanarVectorField::linear_part() const {
  return {fx_.coeff(1, 0), fx_.coeff(0, 1), fy_.coeff(1, 0), fy_.coeff(0, 1)};
}

bool PlanarVectorField::is_real() const { return series_is_real(fx_) && series_is_real(fy_); }

std::string PlanarVectorField::to_string() const {
  return "(" + fx_.to_string() + ")*dx + (" + fy_.to_string() + ")*dy";
}

// ---- CoordinateChange ----------------------------------------------------------

struct CoordinateChange::Cache {
  std::once_flag once;
  std::unique_ptr<CoordinateChange> inverse;
};

CoordinateChange::CoordinateChange(Series2 u, Series2 v)
    : u_(std::move(u)), v_(std::move(v)), cache_(std::make_shared<Cache>()) {
  require_same_order(u_.order(), v_.order());
  if (!u_.constant_term().is_zero() || !v_.constant_term().is_zero()) {
    fail(ErrorCode::NonVanishingShift, kModule, "change of coordinates must fix the origin");
  }
  if (linear_part().det().is_zero()) {
    fail(ErrorCode::SingularLinearPart, kModule, "change of coordinates has a singular linear part");
  }
}

CoordinateChange CoordinateChange::identity(int order) { return {Series2::x(order), Series2::y(order)}; }

CoordinateChange CoordinateChange::linear(const LinearPart& m, int order) {
  return {Series2::x(order) * m.a + Series2::y(order) * m.b, Series2::x(order) * m.c + Series2::y(order) * m.d};
}

LinearPart CoordinateChange::linear_part() const {
  return {u_.coeff(1, 0), u_.coeff(0, 1), v_.coeff(1, 0), v_.coeff(0, 1)};
}

const CoordinateChange& CoordinateChange::inverse() const {
  std::call_once(cache_->once, [this] {
    SeriesPair p = invert_series_pair(u_, v_);
    cache_->inverse = std::make_unique<CoordinateChange>(std::move(p.u), std::move(p.v));
  });
  return *cache_->inverse;
}

bool CoordinateChange::is_identity() const { return u_ == Series2::x(order()) && v_ == Series2::y(order()); }

bool CoordinateChange::fixes_axis_pointwise() const {
  Series1 ux = u_.restrict_to_axis(Var::X);
  Series1 vx = v_.restrict_to_axis(Var::X);
  return ux == Series1::variable(order()) && vx.is_zero();
}

CoordinateChange compose(const CoordinateChange& outer, const CoordinateChange& inner) {
  return {inner.apply_to(outer.u()), inner.apply_to(outer.v())};
}

PlanarVectorField pullback(const PlanarVectorField& X, const CoordinateChange& phi) {
  require_same_order(X.order(), phi.order());
  const int n = X.order();
  const Series2 ux = derive(phi.u(), Var::X).extended(n);
  const Series2 uy = derive(phi.u(), Var::Y).extended(n);
  const Series2 vx = derive(phi.v(), Var::X).extended(n);
  const Series2 vy = derive(phi.v(), Var::Y).extended(n);
  const Series2 inv_det = inverse(ux * vy - uy * vx);
  const Series2 F = phi.apply_to(X.fx());
  const Series2 G = phi.apply_to(X.fy());
  return {(vy * F - uy * G) * inv_det, (ux * G - vx * F) * inv_det};
}

PlanarVectorField pushforward(const PlanarVectorField& X, const CoordinateChange& phi) {
  return pullback(X, phi.inverse());
}

std::string to_string(Axis a) { return a == Axis::XAxis ? "y=0" : "x=0"; }

bool is_axis_invariant(const PlanarVectorField& X, Axis axis) {
  return axis == Axis::XAxis ? X.fy().restrict_to_axis(Var::X).is_zero() : X.fx().restrict_to_axis(Var::Y).is_zero();
}

PlanarVectorField multiply_by_unit(const PlanarVectorField& X, const Series2& h) {
  require_same_order(X.order(), h.order());
  if (h.constant_term().is_zero()) fail(ErrorCode::NonUnitFactor, kModule, "multiplier vanishes at the origin");
  return {h * X.fx(), h * X.fy()};
}

Series2 determinant(const PlanarVectorField& X1, const PlanarVectorField& X2) {
  require_same_order(X1.order(), X2.order());
  return X1.fx() * X2.fy() - X1.fy() * X2.fx();
}

bool colinear(const PlanarVectorField& X1, const PlanarVectorField& X2) { return determinant(X1, X2).is_zero(); }

std::optional<int> contact_order(const PlanarVectorField& X1, const PlanarVectorField& X2) {
  return determinant(X1, X2).valuation();
}

// ---- chart at infinity ---------------------------------------------------------

InfinityChart chart_at_infinity(const PlanarVectorField& X, bool rescale, int max_x_degree) {
  const int n = X.order();
  const int dx = std::max(X.fx().degree_in(Var::X), X.fy().degree_in(Var::X));
  if (dx > max_x_degree) {
    fail(ErrorCode::NotPolynomialInX, kModule,
         "x-degree " + std::to_string(dx) + " exceeds the bound " + std::to_string(max_x_degree));
  }
  // xt = 1/x:  xt' = -xt^2 x',  x^i -> xt^{-i}.
  // Exponent of xt after multiplying by xt^m: m + 2 - i (dx part), m - i (dy part).
  std::optional<int> need;
  auto bump = [&](int m) { need = need ? std::max(*need, m) : m; };
  X.fx().for_each_nonzero([&](int i, int, const Coefficient&) { bump(i - 2); });
  X.fy().for_each_nonzero([&](int i, int, const Coefficient&) { bump(i); });
  int m = need.value_or(0);
  if (!rescale) {
    if (m > 0) {
      fail(ErrorCode::NotHolomorphicAtInfinity, kModule,
           "field has a pole of order " + std::to_string(m) + " along x = infinity");
    }
    m = 0;
  }
  Series2 gx(n), gy(n);
  X.fx().for_each_nonzero([&](int i, int j, const Coefficient& c) {
    const int e = m + 2 - i;
    if (e + j <= n) gx.add_to(e, j, -c);
  });
  X.fy().for_each_nonzero([&](int i, int j, const Coefficient& c) {
    const int e = m - i;
    if (e + j <= n) gy.add_to(e, j, c);
  });
  return {PlanarVectorField(std::move(gx), std::move(gy)), m};
}

// ---- Camacho-Sad index ---------------------------------------------------------

CSIndex camacho_sad_index(const PlanarVectorField& X, Axis axis) {
  if (!is_axis_invariant(X, axis)) {
    fail(ErrorCode::AxisNotInvariant, kModule, "curve " + to_string(axis) + " is not invariant");
  }
  const Var along = axis == Axis::XAxis ? Var::X : Var::Y;
  const Var across = axis == Axis::XAxis ? Var::Y : Var::X;
  const Series2& tangent = axis == Axis::XAxis ? X.fx() : X.fy();
  const Series2& normal = axis == Axis::XAxis ? X.fy() : X.fx();
  const Series1 a = tangent.restrict_to_axis(along);
  const auto p = a.valuation();
  if (!p) fail(ErrorCode::ZeroAxisComponent, kModule, "field vanishes identically along " + to_string(axis));
  if (*p == 0) return {Coefficient(0), axis};
  const Series1 num = derive(normal, across).restrict_to_axis(along);
  const Series1 den = shift_down(a, *p);
  const int m = std::min(num.order(), den.order());
  const Series1 q = divide(num.truncated(m), den.truncated(m));
  return {residue({*p, q}), axis};
}

// ---- rational prepared form ----------------------------------------------------

PlanarVectorField RationalInXField::cleared() const {
  const int n = f0.order();
  for (const Series1* s : {&f1, &f2, &f3, &g0, &g1}) require_same_order(n, s->order());
  Series2 fx = Series2::from_univariate(f0, Var::Y);
  fx += Series2::from_univariate(f1, Var::Y).times_monomial(1, 0);
  fx += Series2::from_univariate(f2, Var::Y).times_monomial(2, 0);
  fx += Series2::from_univariate(f3, Var::Y).times_monomial(3, 0);
  Series2 fy = Series2::from_univariate(g0, Var::Y);
  fy += Series2::from_univariate(g1, Var::Y).times_monomial(1, 0);
  return {std::move(fx), std::move(fy)};
}

PreparationResult reduce_preparation(const RationalInXField& R) {
  const int n = R.f0.order();
  for (const Series1* s : {&R.f1, &R.f2, &R.f3, &R.g0, &R.g1}) require_same_order(n, s->order());
  if (n < 2) fail(ErrorCode::TruncationTooShallow, kModule, "preparation needs order >= 2");
  if (!R.f0.is_zero()) fail(ErrorCode::ConstraintViolated, kModule, "f0 must vanish identically");
  if (!R.f1.is_zero()) fail(ErrorCode::ConstraintViolated, kModule, "f1 must vanish identically");
  if (!R.f3.is_zero()) fail(ErrorCode::ConstraintViolated, kModule, "f3 must vanish identically");
  if (R.f2[0].is_zero()) fail(ErrorCode::ConstraintViolated, kModule, "f2(0) must be nonzero");
  if (R.g1[0].is_zero()) fail(ErrorCode::ConstraintViolated, kModule, "g1(0) must be nonzero");
  if (!R.g0[0].is_zero()) fail(ErrorCode::ConstraintViolated, kModule, "g0(0) must vanish");
  if (R.g0[1].is_zero()) fail(ErrorCode::ConstraintViolated, kModule, "g0'(0) must be nonzero");

  // Divide by f2: x^2 dx + (y g(y) + x f(y)) dy.
  const Series1 f = divide(R.g1, R.f2);
  const Series1 g = shift_down(divide(R.g0, R.f2), 1);  // order n - 1
  const Coefficient g_0 = g[0];
  const Series1 phi = linearize_1d(g);                 // order n
  const int m = n - 1;
  const Series1 h = compose1((derive(phi) * f.truncated(m)), revert1(phi).truncated(m));

  Series2 fx = Series2::monomial(2, 0, Coefficient(1), n);
  Series2 fy = Series2::y(n) + Series2::from_univariate(h.extended(n), Var::Y).times_monomial(1, 0);
  CoordinateChange change(Series2::x(n) * (Coefficient(1) / g_0), Series2::from_univariate(phi, Var::Y));
  return {PlanarVectorField(std::move(fx), std::move(fy)), h, std::move(change), g_0};
}

}  // namespace folia
