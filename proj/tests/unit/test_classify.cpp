#include <cmath>
#include <functional>

#include "doctest.h"
#include "folia/classify.hpp"
#include "folia/error.hpp"
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

PlanarVectorField linear(const LinearPart& m, int n = 4) {
  return {Series2::x(n) * m.a + Series2::y(n) * m.b, Series2::x(n) * m.c + Series2::y(n) * m.d};
}

PlanarVectorField diagonal(const Coefficient& l1, const Coefficient& l2, int n = 4) { return linear({l1, 0, 0, l2}, n); }

/// Independent Euclid on the exact rational sum of 10^{-e}.
std::vector<mpz_class> euclid(mpz_class num, mpz_class den, int limit) {
  std::vector<mpz_class> out;
  while (den != 0 && static_cast<int>(out.size()) < limit) {
    mpz_class q = num / den, r = num % den;
    out.push_back(q);
    num = den;
    den = r;
  }
  return out;
}

}  // namespace

TEST_CASE("eigen data") {
  const int n = 4;
  const Coefficient mu = Coefficient::fraction(2, 7);
  Series2 x = Series2::x(n), y = Series2::y(n);
  SUBCASE("saddle-node") {
    EigenData e = eigen_data(PlanarVectorField(x * x, y + x * y * mu));
    CHECK(e.exact);
    CHECK(*e.lambda1.exact == Coefficient(1));
    CHECK(e.lambda2.exact->is_zero());
    CHECK(e.ratio->exact->is_zero());
  }
  SUBCASE("lower triangular") {
    EigenData e = eigen_data(LinearPart{0, 0, Coefficient(5), 1});
    CHECK(*e.lambda1.exact == Coefficient(1));
    CHECK(e.lambda2.exact->is_zero());
  }
  SUBCASE("rotation") {
    const Coefficient a = Coefficient::fraction(1, 3), b = 2;
    EigenData e = eigen_data(LinearPart{a, -b, b, a});
    CHECK(*e.lambda1.exact + *e.lambda2.exact == a + a);
    CHECK(*e.lambda1.exact * *e.lambda2.exact == a * a + b * b);
    CHECK(e.lambda1.exact->re() == a.re());
    CHECK(abs(e.lambda1.exact->im()) == b.re());
  }
  SUBCASE("trace and determinant in the exact branch") {
    oracle::Rng rng(31);
    int checked = 0;
    for (int trial = 0; trial < 200 && checked < 20; ++trial) {
      LinearPart m{rng.rational(), rng.rational(), rng.rational(), rng.rational()};
      EigenData e = eigen_data(m);
      if (!e.lambda1.exact) continue;
      ++checked;
      CHECK(*e.lambda1.exact + *e.lambda2.exact == m.trace());
      CHECK(*e.lambda1.exact * *e.lambda2.exact == m.det());
    }
    CHECK(checked > 5);
  }
  SUBCASE("real quadratic eigenvalues") {
    EigenData e = eigen_data(LinearPart{0, 1, 1, 1});
    REQUIRE(e.lambda1.surd);
    CHECK(e.lambda1.surd->value() == doctest::Approx((1 + std::sqrt(5.0)) / 2));
    REQUIRE(e.ratio->surd);
    CHECK(e.ratio->surd->value() == doctest::Approx(-(3 - std::sqrt(5.0)) / 2));
  }
}

TEST_CASE("classification taxonomy") {
  using K = ClassKind;
  CHECK(classify(diagonal(1, 2)).kind == K::ResonantNode);
  CHECK(classify(diagonal(1, 2)).k == 2);
  CHECK(classify(diagonal(2, 1)).k == 2);
  CHECK(classify(diagonal(1, 1)).k == 1);
  SingularityClass s = classify(diagonal(1, Coefficient::fraction(-3, 2)));
  CHECK(s.kind == K::ResonantSaddle);
  CHECK(s.p == 3);
  CHECK(s.q == 2);
  CHECK(classify(diagonal(Coefficient::fraction(-3, 2), 1)) == s);
  CHECK(classify(diagonal(1, 0)).kind == K::SaddleNode);
  CHECK(classify(diagonal(0, 1)).kind == K::SaddleNode);
  CHECK(classify(diagonal(1, Coefficient::fraction(2, 3))).kind == K::PoincareNonResonant);
  CHECK(classify(diagonal(1, Coefficient(1, 1))).kind == K::PoincareNonResonant);
  CHECK(classify(linear({0, 1, 0, 0})).kind == K::Nilpotent);
  CHECK(classify(linear({0, 0, 0, 0})).kind == K::ZeroLinearPart);
  CHECK(classify(PlanarVectorField(Series2::constant(1, 4), Series2(4))).kind == K::NonSingular);

  SingularityClass focus = classify(linear({1, -2, 2, 1}));
  CHECK(focus.kind == K::RealFocus);
  CHECK(*focus.focus_a->exact == Coefficient(1));
  CHECK(*focus.focus_b->exact == Coefficient(2));
  CHECK(classify(linear({1, 1, -1, 1})).kind == K::RealFocus);
  CHECK(classify(linear({1, -2, 3, 1})).focus_b->surd.has_value());
  // same spectrum, complex coefficients: no real focus branch
  CHECK(classify(diagonal(Coefficient(1, 2), Coefficient(1, -2))).kind == K::PoincareNonResonant);
  // centre: eigenratio -1
  SingularityClass centre = classify(linear({0, -1, 1, 0}));
  CHECK(centre.kind == K::ResonantSaddle);
  CHECK(centre.p == 1);
  // complex coefficients, irrational eigenvalues, exact ratio -1
  CHECK(classify(linear({0, 1, Coefficient(0, 4), 0})).kind == K::ResonantSaddle);

  SingularityClass irr = classify(linear({0, 1, 1, 1}));
  CHECK(irr.kind == K::IrrationalSaddle);
  REQUIRE(irr.brjuno);
  CHECK(irr.brjuno->verdict == BrjunoVerdict::ConvergedWithinBudget);
  CHECK(classify(linear({2, 1, 1, 1})).kind == K::PoincareNonResonant);
}

TEST_CASE("classification is invariant under conjugacy and unit rescaling") {
  oracle::Rng rng(32);
  const int n = 5;
  const Coefficient ratios[] = {Coefficient(2), Coefficient::fraction(-3, 2), Coefficient(0), Coefficient::fraction(1, 3),
                                Coefficient::fraction(-1, 4), Coefficient(3, 1)};
  for (const Coefficient& r : ratios) {
    PlanarVectorField X = diagonal(1, r, n) + PlanarVectorField(rng.series2(n, 2, n, 0.4), rng.series2(n, 2, n, 0.4));
    SingularityClass c = classify(X);
    for (int trial = 0; trial < 3; ++trial) {
      CHECK(classify(pullback(X, rng.general_change(n, 3))) == c);
      Series2 h = Series2::constant(rng.nonzero_rational(), n) + rng.series2(n, 1, 2, 0.5);
      CHECK(classify(multiply_by_unit(X, h)) == c);
    }
  }
}

TEST_CASE("continued fractions of quadratic surds") {
  auto golden = continued_fraction(QuadraticSurd{Rational(1, 2), Rational(1, 2), Rational(5)}, 30);
  for (const auto& a : golden) CHECK(a == 1);
  auto sqrt2 = continued_fraction(QuadraticSurd{Rational(0), Rational(1), Rational(2)}, 20);
  CHECK(sqrt2[0] == 1);
  for (std::size_t k = 1; k < sqrt2.size(); ++k) CHECK(sqrt2[k] == 2);
  // sqrt(7) = [2; 1, 1, 1, 4, ...]
  auto sqrt7 = continued_fraction(QuadraticSurd{Rational(0), Rational(1), Rational(7)}, 9);
  const int expect7[] = {2, 1, 1, 1, 4, 1, 1, 1, 4};
  for (int k = 0; k < 9; ++k) CHECK(sqrt7[static_cast<std::size_t>(k)] == expect7[k]);
  // negative and rational-scaled inputs use |x|: |(1 - sqrt(13)) / 3| = 0.8685...
  auto neg = continued_fraction(QuadraticSurd{Rational(1, 3), Rational(-1, 3), Rational(13)}, 30);
  double v = neg.back().get_d();
  for (auto it = std::next(neg.rbegin()); it != neg.rend(); ++it) v = it->get_d() + 1 / v;
  CHECK(v == doctest::Approx((std::sqrt(13.0) - 1) / 3).epsilon(1e-12));
  CHECK(code_of([] { continued_fraction(QuadraticSurd{Rational(1, 2), Rational(1), Rational(4)}, 5); }) ==
        ErrorCode::RationalInput);
}

TEST_CASE("Brjuno report for the golden ratio") {
  BrjunoReport r = brjuno_report(QuadraticSurd{Rational(1, 2), Rational(1, 2), Rational(5)});
  CHECK(r.verdict == BrjunoVerdict::ConvergedWithinBudget);
  // independent oracle: Fibonacci denominators
  std::vector<double> q{1, 1};
  while (q.size() < 80) q.push_back(q[q.size() - 1] + q[q.size() - 2]);
  double sum = 0;
  for (std::size_t n = 0; n < r.partial_sums.size(); ++n) {
    sum += std::log(q[n + 1]) / q[n];
    CHECK(r.partial_sums[n] == doctest::Approx(sum).epsilon(1e-12));
    CHECK(r.convergents[n].q.get_d() == q[n]);
  }
  CHECK(r.partial_sums.back() == doctest::Approx(3.2861297).epsilon(1e-7));
  REQUIRE(r.first_small_increment);
  CHECK(*r.first_small_increment == 46);
  CHECK(code_of([] { brjuno_report(QuadraticSurd{Rational(2), Rational(0), Rational(3)}); }) == ErrorCode::RationalInput);
}

TEST_CASE("Brjuno report invariants") {
  for (const QuadraticSurd& s : {QuadraticSurd{Rational(0), Rational(1), Rational(2)},
                                 QuadraticSurd{Rational(1, 5), Rational(3, 7), Rational(11)}}) {
    BrjunoReport r = brjuno_report(s);
    for (std::size_t n = 1; n < r.partial_sums.size(); ++n) CHECK(r.partial_sums[n] >= r.partial_sums[n - 1]);
    for (std::size_t n = 1; n + 1 < r.convergents.size(); ++n) {
      CHECK(r.convergents[n + 1].q == r.partial_quotients[n + 1] * r.convergents[n].q + r.convergents[n - 1].q);
      CHECK(r.convergents[n + 1].q > r.convergents[n].q);
    }
  }
}

TEST_CASE("lacunary inputs") {
  LacunarySeries l = LacunarySeries::liouville(5);
  CHECK(l.exponents == std::vector<unsigned long>{1, 2, 6, 24, 120});
  CHECK(l.tail_exponent == 719);

  // certified prefix agrees with Euclid on the truncated sum
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, 120);
  mpz_class num = 0;
  for (unsigned long e : l.exponents) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, 120 - e);
    num += p;
  }
  auto direct = euclid(num, den, 400);
  auto certified = continued_fraction(l, 400);
  REQUIRE(certified.size() > 10);
  for (std::size_t k = 0; k + 1 < certified.size(); ++k) CHECK(certified[k] == direct[k]);

  // the Liouville-type sum is a Brjuno number: the partial sums settle near 2.80
  BrjunoReport r = brjuno_report(LacunarySeries::liouville(6));
  CHECK(r.verdict == BrjunoVerdict::ConvergedWithinBudget);
  CHECK(r.partial_sums.back() == doctest::Approx(2.8031).epsilon(1e-3));

  // one gap of 5000 digits after q = 10 pushes the sum past the threshold
  LacunarySeries tower{{1, 5000}, 20000};
  BrjunoReport d = brjuno_report(tower);
  CHECK(d.verdict == BrjunoVerdict::DivergedBeyondThreshold);
  CHECK(d.partial_sums.back() > 1e3);
}

TEST_CASE("exponent-set resonances") {
  CHECK(es_resonance_check(std::nullopt, 1, 50).empty());
  auto hits = es_resonance_check(std::nullopt, -2, 10);
  REQUIRE_FALSE(hits.empty());
  CHECK(hits.front() == std::pair<long, long>{1, 1});
  for (const auto& [m, n] : hits) CHECK(m == 1);
  CHECK(es_resonance_check(Rational(1), Coefficient::fraction(1, 2), 40).empty());
  CHECK(es_resonance_check(Rational(3, 2), Coefficient(Rational(1, 3), Rational(1)), 40).empty());
  // s = 1: m in [n+1, n+2) so m = n + 1; mu = -2 gives m + mu n = 1 - n
  auto s1 = es_resonance_check(Rational(1), -2, 6);
  for (const auto& [m, n] : s1) {
    CHECK(m == n + 1);
    CHECK(m - 2 * n <= 0);
  }
  CHECK(s1.size() == 5);
}
