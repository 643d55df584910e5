#include <functional>

#include "doctest.h"
#include "folia/blowup.hpp"
#include "folia/error.hpp"
#include "folia/named_forms.hpp"
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

/// x^2 dx + y dy + x y f(y) dy
PlanarVectorField ecalle_xy(const Series1& f, int n) {
  Series1 g(n - 1);
  for (int j = 0; j + 1 <= n - 1; ++j) g.set(j + 1, f.coeff(j));
  return make_named(NamedForm::ecalle2(g), n);
}

}  // namespace

TEST_CASE("TChart blow-up of the Ecalle form") {
  const int N = 9;
  Series1 f(4, {Coefficient::fraction(1, 3), 2, 0, -1, Coefficient::fraction(5, 2)});
  const BlowupChart b = blow_up(ecalle_xy(f, N), BlowupChartKind::TChart);
  CHECK(b.rescale_power == 0);
  CHECK_FALSE(b.dicritical);
  CHECK(b.exceptional_divisor == Axis::YAxis);
  // x^2 dx + t dt + x t (f(x t) - 1) dt, built term by term
  const int M = b.field.order();
  Series2 fy = Series2::y(M);
  for (int j = 0; j <= f.order(); ++j) {
    Coefficient c = f.coeff(j) - (j == 0 ? Coefficient(1) : Coefficient(0));
    if (1 + j + 1 + j <= M) fy.add_to(1 + j, 1 + j, c);
  }
  CHECK(b.field == PlanarVectorField(Series2::monomial(2, 0, 1, M), fy));
  CHECK(is_axis_invariant(b.field, Axis::YAxis));
}

TEST_CASE("blow-up of linear saddles and the radial field") {
  const int N = 5;
  Series2 x = Series2::x(N), y = Series2::y(N);
  const BlowupChart s = blow_up(PlanarVectorField(x, -y), BlowupChartKind::TChart);
  const int M = s.field.order();
  CHECK(s.field == PlanarVectorField(Series2::x(M), Series2::y(M) * Coefficient(-2)));
  CHECK(eigen_data(s.field).ratio->exact == Coefficient(-2));

  const BlowupChart r = blow_up(PlanarVectorField(x, y), BlowupChartKind::TChart);
  CHECK(r.dicritical);
  CHECK(r.field == PlanarVectorField(Series2::x(r.field.order()), Series2(r.field.order())));

  CHECK(code_of([&] { blow_up(PlanarVectorField(Series2::constant(1, N), y), BlowupChartKind::SChart); }) ==
        ErrorCode::NonSingularInput);
}

TEST_CASE("divisor invariance for random fields in both charts") {
  oracle::Rng rng(81);
  for (int trial = 0; trial < 20; ++trial) {
    const int N = 7;
    PlanarVectorField X(rng.series2(N, 1, N, 0.5), rng.series2(N, 1, N, 0.5));
    if (X.linear_part().is_zero() && trial % 2) X = X + PlanarVectorField(Series2::x(N), Series2(N));
    for (auto chart : {BlowupChartKind::TChart, BlowupChartKind::SChart}) {
      const BlowupChart b = blow_up(X, chart);
      CHECK(is_axis_invariant(b.field, b.exceptional_divisor));
    }
  }
}

TEST_CASE("blow-up commutes with y -> c y") {
  oracle::Rng rng(82);
  const int N = 7;
  for (int trial = 0; trial < 10; ++trial) {
    const PlanarVectorField X(rng.series2(N, 1, N, 0.5), rng.series2(N, 1, N, 0.5));
    const Coefficient c(rng.nonzero_rational());
    // y = c^{-1} y' expresses X in the coordinate y' = c y
    const CoordinateChange h(Series2::x(N), Series2::y(N) * (Coefficient(1) / c));
    const PlanarVectorField Xc = oracle::pullback(X, h.u(), h.v());
    const BlowupChart a = blow_up(Xc, BlowupChartKind::TChart);
    const BlowupChart b = blow_up(X, BlowupChartKind::TChart);
    const int M = b.field.order();
    const CoordinateChange ht(Series2::x(M), Series2::y(M) * (Coefficient(1) / c));
    CHECK(a.field == oracle::pullback(b.field, ht.u(), ht.v()));
  }
}

TEST_CASE("cascade: saddles with ratio -1 and a saddle-node with mu - n") {
  oracle::Rng rng(83);
  for (int n : {0, 1, 3}) {
    const Coefficient mu(rng.rational());
    Series1 f = rng.series1(4, 1, 4);
    f.set(0, mu);
    const PlanarVectorField X = ecalle_xy(f, 10);
    const CascadeReport rep = cascade(X, n);
    REQUIRE(rep.singular_points.size() == static_cast<std::size_t>(n + 1));
    for (int i = 0; i < n; ++i) {
      const auto& p = rep.singular_points[static_cast<std::size_t>(i)];
      CHECK(p.eigen.ratio->exact == Coefficient(-1));
      CHECK(p.cls.kind == ClassKind::ResonantSaddle);
    }
    const auto& last = rep.singular_points.back();
    CHECK(last.cls.kind == ClassKind::SaddleNode);
    REQUIRE(last.mu);
    CHECK(*last.mu == mu - Coefficient(n));
  }
  CHECK(code_of([] { cascade(PlanarVectorField(Series2::x(4), -Series2::y(4)), 1); }) == ErrorCode::NotEcalle2);
}
