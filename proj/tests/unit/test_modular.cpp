#include <functional>

#include "doctest.h"
#include "folia/error.hpp"
#include "folia/modular.hpp"
#include "folia/named_forms.hpp"
#include "oracle_modular.hpp"
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

HighComplex to_high_for_test(const Coefficient& c) {
  auto r = [](const Rational& q) { return HighReal(q.get_num().get_str()) / HighReal(q.get_den().get_str()); };
  return {r(c.re()), r(c.im())};
}

double rel_err(const HighComplex& a, const oracle::C100& b) {
  const oracle::C100 d = oracle::C100(oracle::R100(a.real()), oracle::R100(a.imag())) - b;
  const oracle::R100 den = abs(b) > 0 ? abs(b) : oracle::R100(1);
  return static_cast<double>(abs(d) / den);
}

ElizarovInput random_input(oracle::Rng& rng, bool integer_mu) {
  ElizarovInput in;
  in.mu = integer_mu ? Coefficient(rng.integer(-2, 2)) : Coefficient(rng.rational(), rng.coin() ? rng.rational() : 0);
  const int terms = static_cast<int>(rng.integer(1, 5));
  for (int t = 0; t < terms; ++t) {
    const int m = static_cast<int>(rng.integer(1, 6)), n = static_cast<int>(rng.integer(-1, 6));
    if (m == 1 && n == 1) continue;
    in.coefficients[{m, n}] = rng.coefficient(rng.coin());
  }
  return in;
}

}  // namespace

TEST_CASE("Gamma values") {
  CHECK(*gamma_exact(Coefficient(3)).exact == Coefficient(2));
  CHECK(*gamma_exact(Coefficient(1)).exact == Coefficient(1));
  const Complex half = gamma_exact(Coefficient::fraction(1, 2)).to_complex();
  CHECK(std::abs(half - std::sqrt(std::numbers::pi)) < 1e-15);
  // reflection: Gamma(z) Gamma(1 - z) = pi / sin(pi z)
  const Coefficient z(Rational(1, 3), Rational(2, 5));
  const HighComplex lhs = gamma_exact(z).value * gamma_exact(Coefficient(1) - z).value;
  const HighComplex zz(HighReal(1) / 3, HighReal(2) / 5);
  const HighReal pi = boost::math::constants::pi<HighReal>();
  CHECK(static_cast<double>(abs(lhs - HighComplex(pi) / sin(HighComplex(pi) * zz))) < 1e-40);
  CHECK(code_of([] { gamma_exact(Coefficient(0)); }) == ErrorCode::PoleOfGamma);
  CHECK(code_of([] { gamma_exact(Coefficient(-3)); }) == ErrorCode::PoleOfGamma);

  oracle::Rng rng(101);
  for (int t = 0; t < 20; ++t) {
    const Coefficient w(rng.rational(9, 7), rng.rational(9, 7));
    if (w.is_real() && w.is_integer() && sgn(w.re()) <= 0) continue;
    CHECK(rel_err(gamma_exact(w).value, oracle::spouge_gamma(oracle::to_c100(w))) < 1e-40);
  }
}

TEST_CASE("Elizarov derivative examples") {
  ElizarovInput a;
  a.mu = 0;
  a.coefficients[{2, 1}] = 1;
  const ElizarovOutput oa = elizarov_derivative(a);
  REQUIRE(oa.dphi.count(1));
  CHECK(*oa.dphi.at(1).exact == Coefficient(1));

  ElizarovInput b;
  b.mu = 0;
  b.coefficients[{1, -1}] = 1;
  CHECK(*elizarov_derivative(b).dt.exact == Coefficient(1));
  CHECK(elizarov_derivative(b).metadata.at("dt_factor") == "(-n)^m evaluated at n = -1");

  ElizarovInput z;
  z.mu = Coefficient::fraction(1, 3);
  const ElizarovOutput oz = elizarov_derivative(z);
  CHECK(oz.dphi.empty());
  CHECK(oz.dt.exact->is_zero());

  ElizarovInput bad;
  bad.coefficients[{1, 1}] = 1;
  CHECK(code_of([&] { elizarov_derivative(bad); }) == ErrorCode::ConstraintViolated);
  bad.coefficients.clear();
  bad.coefficients[{0, 2}] = 1;
  CHECK(code_of([&] { elizarov_derivative(bad); }) == ErrorCode::ConstraintViolated);
}

TEST_CASE("Gamma poles are flagged, not dropped silently") {
  ElizarovInput in;
  in.mu = -3;
  in.coefficients[{1, 1}] = 0;
  in.coefficients[{1, 2}] = 1;  // Gamma(1 + 1 - 6)
  in.coefficients[{6, 2}] = 1;  // Gamma(1)
  const ElizarovOutput o = elizarov_derivative(in);
  REQUIRE(o.flagged.size() == 1);
  CHECK(o.flagged[0].m == 1);
  CHECK(o.flagged[0].n == 2);
  // 2^{-7} * 6 / 0! * 2^6
  CHECK(*o.dphi.at(2).exact == Coefficient::fraction(6 * 64, 128));
}

TEST_CASE("Elizarov against the independent oracle") {
  oracle::Rng rng(102);
  for (int t = 0; t < 30; ++t) {
    const ElizarovInput in = random_input(rng, t % 3 == 0);
    const ElizarovOutput o = elizarov_derivative(in);
    const oracle::ElizarovReference ref = oracle::elizarov_reference(in.mu, in.coefficients);
    for (const auto& [n, v] : ref.dphi) {
      if (o.dphi.count(n) == 0) {
        CHECK(static_cast<double>(abs(v)) < 1e-40);
        continue;
      }
      CHECK(rel_err(o.dphi.at(n).value, v) < 1e-12);
      if (o.dphi.at(n).exact) CHECK(rel_err(to_high_for_test(*o.dphi.at(n).exact), v) < 1e-12);
    }
    CHECK(rel_err(o.dt.value, ref.dt) < 1e-12);
  }
}

TEST_CASE("Elizarov linearity and support") {
  oracle::Rng rng(103);
  for (int t = 0; t < 10; ++t) {
    ElizarovInput a = random_input(rng, true), b = random_input(rng, true);
    b.mu = a.mu;
    const Coefficient s(rng.nonzero_rational());
    ElizarovInput sum = a;
    for (const auto& [k, c] : b.coefficients) sum.coefficients[k] += s * c;
    const ElizarovOutput oa = elizarov_derivative(a), ob = elizarov_derivative(b), os = elizarov_derivative(sum);
    for (const auto& [n, v] : os.dphi) {
      const Coefficient va = oa.dphi.count(n) ? *oa.dphi.at(n).exact : Coefficient(0);
      const Coefficient vb = ob.dphi.count(n) ? *ob.dphi.at(n).exact : Coefficient(0);
      CHECK(*v.exact == va + s * vb);
    }
    CHECK(*os.dt.exact == *oa.dt.exact + s * *ob.dt.exact);
    for (const auto& [n, v] : oa.dphi) {
      bool present = false;
      for (const auto& [k, c] : a.coefficients) present = present || (k.second == n && !c.is_zero());
      CHECK(present);
    }
  }
}

TEST_CASE("Martinet-Ramis data") {
  const Coefficient mu = Coefficient::fraction(1, 5);
  MartinetRamisData d = MartinetRamisData::formal(mu);
  CHECK_FALSE(d.has_central_manifold());
  CHECK(*d.with_translation(0).has_central_manifold());
  CHECK_FALSE(*d.with_translation(1).has_central_manifold());
  const PlanarVectorField X = make_named(NamedForm::ecalle2(Series1(2, {0, mu})), 5);
  const MartinetRamisData h = d.with_holonomy(holonomy_jet(X, PathSpec::circle(1), 2));
  CHECK(h.phi0_provenance == Provenance::Numeric);
  CHECK(std::abs((*h.phi0_jet)[1] - h.multiplier()) < 1e-6);
}
