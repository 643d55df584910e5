#include <functional>

#include "doctest.h"
#include "folia/error.hpp"
#include "folia/vfield.hpp"
#include "oracles.hpp"

using namespace folia;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::ParseError;
}

PlanarVectorField linear_field(const Coefficient& l1, const Coefficient& l2, int n) {
  return {Series2::x(n) * l1, Series2::y(n) * l2};
}

/// x^2 dx + (y + x f(y)) dy
PlanarVectorField ecalle_field(const Series1& f) {
  const int n = f.order();
  Series2 fy = Series2::y(n) + Series2::from_univariate(f, Var::Y).times_monomial(1, 0);
  return {Series2::monomial(2, 0, 1, n), fy};
}

}  // namespace

TEST_CASE("pullback by the identity") {
  oracle::Rng rng(21);
  const int n = 8;
  PlanarVectorField X(rng.series2(n, 1, n, 0.5, true), rng.series2(n, 1, n, 0.5));
  CHECK(pullback(X, CoordinateChange::identity(n)) == X);
}

TEST_CASE("pullback by a diagonal scaling keeps a diagonal linear field") {
  const int n = 6;
  PlanarVectorField X = linear_field(1, Coefficient::fraction(-3, 5), n);
  CoordinateChange phi = CoordinateChange::linear({Coefficient(2), 0, 0, Coefficient::fraction(-1, 7)}, n);
  CHECK(pullback(X, phi) == X);
}

TEST_CASE("pullback matches the independent expansion") {
  const int n = 8;
  Series2 x = Series2::x(n), y = Series2::y(n);
  PlanarVectorField X(x * x, y);
  CoordinateChange phi(x, y + x * x);
  PlanarVectorField expect = oracle::pullback(X, phi.u(), phi.v());
  CHECK(pullback(X, phi) == expect);
  // d/dt (y + x^2) = y  =>  ydot = y + x^2 - 2 x^3
  CHECK(pullback(X, phi).fy() == y + x * x - x * x * x * Coefficient(2));

  oracle::Rng rng(22);
  for (int trial = 0; trial < 10; ++trial) {
    PlanarVectorField Z(rng.series2(n, 1, n, 0.4, true), rng.series2(n, 1, n, 0.4));
    CoordinateChange psi = rng.general_change(n, 3);
    CHECK(pullback(Z, psi) == oracle::pullback(Z, psi.u(), psi.v()));
  }
}

TEST_CASE("pullback is contravariant") {
  oracle::Rng rng(23);
  const int n = 10;
  for (int trial = 0; trial < 10; ++trial) {
    PlanarVectorField X(rng.series2(n, 1, n, 0.3, true), rng.series2(n, 1, n, 0.3));
    CoordinateChange phi = rng.general_change(n, 3, 0.3);
    CoordinateChange psi = rng.general_change(n, 3, 0.3);
    CHECK(pullback(pullback(X, phi), psi) == pullback(X, compose(phi, psi)));
  }
}

TEST_CASE("pushforward undoes pullback") {
  oracle::Rng rng(24);
  const int n = 8;
  PlanarVectorField X(rng.series2(n, 1, n, 0.4), rng.series2(n, 1, n, 0.4));
  CoordinateChange phi = rng.general_change(n, 3);
  CHECK(pushforward(pullback(X, phi), phi) == X);
}

TEST_CASE("linear part transforms by conjugacy") {
  oracle::Rng rng(25);
  const int n = 6;
  for (int trial = 0; trial < 10; ++trial) {
    PlanarVectorField X(rng.series2(n, 1, n, 0.5), rng.series2(n, 1, n, 0.5));
    CoordinateChange phi = rng.general_change(n, 3);
    LinearPart a = X.linear_part(), b = pullback(X, phi).linear_part();
    CHECK(a.trace() == b.trace());
    CHECK(a.det() == b.det());
  }
}

TEST_CASE("axis invariance") {
  const int n = 6;
  Series1 f = Series1::constant(2, n) + Series1::variable(n);
  PlanarVectorField X = ecalle_field(f);
  CHECK(is_axis_invariant(X, Axis::YAxis));
  CHECK_FALSE(is_axis_invariant(X, Axis::XAxis));

  Series1 g = Series1::variable(n) * Coefficient::fraction(1, 3);
  PlanarVectorField Y = ecalle_field(g);
  CHECK(is_axis_invariant(Y, Axis::YAxis));
  CHECK(is_axis_invariant(Y, Axis::XAxis));
}

TEST_CASE("multiply_by_unit keeps the eigenratio") {
  const int n = 6;
  const Coefficient lambda = Coefficient::fraction(5, 2);
  PlanarVectorField X = linear_field(1, lambda, n);
  PlanarVectorField Y = multiply_by_unit(X, Series2::constant(1, n) + Series2::x(n));
  LinearPart m = Y.linear_part();
  CHECK(m.d / m.a == lambda);
  PlanarVectorField Z = multiply_by_unit(X, Series2::constant(3, n) + Series2::y(n));
  CHECK(Z.linear_part().d / Z.linear_part().a == lambda);
  CHECK(code_of([&] { multiply_by_unit(X, Series2::x(n)); }) == ErrorCode::NonUnitFactor);
}

TEST_CASE("chart at infinity") {
  const int n = 6;
  Series2 xt = Series2::x(n), y = Series2::y(n);
  SUBCASE("second normal form") {
    Series1 f(n);
    f.set(1, Coefficient::fraction(2, 3));
    f.set(2, 1);
    InfinityChart c = chart_at_infinity(ecalle_field(f), true);
    CHECK(c.rescale_power == 1);
    CHECK(c.field.fx() == -xt);
    CHECK(c.field.fy() == xt * y + Series2::from_univariate(f, Var::Y));
    LinearPart m = c.field.linear_part();
    CHECK(m.a == Coefficient(-1));
    CHECK(m.d == Coefficient::fraction(2, 3));
    CHECK(m.d / m.a == Coefficient::fraction(-2, 3));
  }
  SUBCASE("mu = 0") {
    Series1 f(n);
    f.set(2, 1);
    InfinityChart c = chart_at_infinity(ecalle_field(f), true);
    CHECK(c.field.fx() == -xt);
    CHECK(c.field.fy() == xt * y + y * y);
    CHECK(c.field.linear_part().d.is_zero());
    // f = 0: the minimal representative is already regular at infinity.
    InfinityChart flat = chart_at_infinity(ecalle_field(Series1(n)), true);
    CHECK(flat.rescale_power == 0);
    CHECK(flat.field.fx() == -Series2::constant(1, n));
    CHECK(flat.field.fy() == y);
  }
  SUBCASE("radial field") {
    InfinityChart c = chart_at_infinity(PlanarVectorField(xt, y), true);
    CHECK(c.rescale_power == 0);
    CHECK(c.field.fx() == -xt);
    CHECK(c.field.fy() == y);
  }
  SUBCASE("errors") {
    PlanarVectorField quartic(Series2::monomial(4, 0, 1, n), y);
    CHECK(code_of([&] { chart_at_infinity(quartic, true); }) == ErrorCode::NotPolynomialInX);
    CHECK(code_of([&] { chart_at_infinity(ecalle_field(Series1::variable(n)), false); }) ==
          ErrorCode::NotHolomorphicAtInfinity);
  }
}

TEST_CASE("contact order") {
  const int n = 8;
  Series2 one = Series2::constant(1, n);
  PlanarVectorField dx(one, Series2(n)), dy(Series2(n), one);
  for (int k = 1; k <= 4; ++k) {
    PlanarVectorField X2(one, Series2::monomial(0, k, 1, n));
    CHECK(contact_order(dx, X2) == k);
    CHECK(contact_order(X2, dx) == k);
  }
  CHECK(contact_order(dx, dy) == 0);
  CHECK_FALSE(contact_order(dx, dx).has_value());

  oracle::Rng rng(26);
  for (int trial = 0; trial < 6; ++trial) {
    const int k = static_cast<int>(rng.integer(1, 3));
    PlanarVectorField X2(one + rng.series2(n, 1, 3, 0.4), Series2::monomial(0, k, 1, n));
    CoordinateChange phi = rng.tangent_change(n, 3);
    CHECK(contact_order(pullback(dx, phi), pullback(X2, phi)) == contact_order(dx, X2));
  }
}

TEST_CASE("Camacho-Sad index") {
  const int n = 8;
  const Coefficient lambda = Coefficient::fraction(-4, 9);
  CHECK(camacho_sad_index(linear_field(1, lambda, n)).value == lambda);
  CHECK(camacho_sad_index(linear_field(1, lambda, n), Axis::YAxis).value == Coefficient(1) / lambda);
  CHECK(camacho_sad_index(ecalle_field(Series1(n))).value.is_zero());

  Series1 f(n);
  f.set(0, 1);
  CHECK(code_of([&] { camacho_sad_index(ecalle_field(f)); }) == ErrorCode::AxisNotInvariant);
  PlanarVectorField vertical(Series2(n), Series2::y(n));
  CHECK(code_of([&] { camacho_sad_index(vertical); }) == ErrorCode::ZeroAxisComponent);

  oracle::Rng rng(27);
  for (int trial = 0; trial < 10; ++trial) {
    Series1 g = rng.series1(n, 1, n);
    g.set(1, rng.rational());
    PlanarVectorField X = ecalle_field(g);
    const Coefficient at_origin = camacho_sad_index(X).value;
    const Coefficient at_infinity = camacho_sad_index(chart_at_infinity(X, true).field).value;
    CHECK(at_origin == g[1]);
    CHECK(at_infinity == -g[1]);
  }
}

TEST_CASE("reduce_preparation") {
  const int n = 8;
  Series1 zero(n), one = Series1::constant(1, n), y = Series1::variable(n);

  SUBCASE("already prepared") {
    RationalInXField R{zero, zero, one, zero, y, one};
    PreparationResult r = reduce_preparation(R);
    CHECK(r.f == Series1::constant(1, n - 1));
    CHECK(r.change.is_identity());
    CHECK(r.field == ecalle_field(one));
  }
  SUBCASE("nonlinear g0 is linearized") {
    RationalInXField R{zero, zero, one, zero, y + y * y, one};
    PreparationResult r = reduce_preparation(R);
    CHECK(colinear(pullback(r.field, r.change), R.cleared()));
  }
  SUBCASE("random admissible data") {
    oracle::Rng rng(28);
    for (int trial = 0; trial < 5; ++trial) {
      Series1 f2 = rng.series1(n, 1, 4);
      f2.set(0, rng.nonzero_rational());
      Series1 g0 = rng.series1(n, 2, 4);
      g0.set(1, rng.nonzero_rational());
      Series1 g1 = rng.series1(n, 1, 4);
      g1.set(0, rng.nonzero_rational());
      RationalInXField R{zero, zero, f2, zero, g0, g1};
      PreparationResult r = reduce_preparation(R);
      CHECK(colinear(pullback(r.field, r.change), R.cleared()));
      CHECK(r.f[0] == g1[0] / f2[0]);
    }
  }
  SUBCASE("constraint gates") {
    CHECK(code_of([&] { reduce_preparation({zero, zero, y, zero, y, one}); }) == ErrorCode::ConstraintViolated);
    CHECK(code_of([&] { reduce_preparation({zero, y, one, zero, y, one}); }) == ErrorCode::ConstraintViolated);
    CHECK(code_of([&] { reduce_preparation({zero, zero, one, zero, y, y}); }) == ErrorCode::ConstraintViolated);
    CHECK(code_of([&] { reduce_preparation({zero, zero, one, zero, y * y, one}); }) == ErrorCode::ConstraintViolated);
  }
}
