#include "folia/modular.hpp"

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/constants/constants.hpp>

#include <numbers>

#include "folia/error.hpp"

namespace folia {

namespace {

const char* kModule = "modular";

HighReal to_high(const Rational& r) {
  return HighReal(r.get_num().get_str()) / HighReal(r.get_den().get_str());
}

HighComplex to_high(const Coefficient& c) { return {to_high(c.re()), to_high(c.im())}; }

std::optional<long> as_integer(const Coefficient& c) {
  if (!c.is_real() || !c.is_integer()) return std::nullopt;
  return c.re().get_num().get_si();
}

Coefficient factorial(long n) {
  Coefficient r = 1;
  for (long k = 2; k <= n; ++k) r *= Coefficient(k);
  return r;
}

HighComplex log_gamma_stirling(const HighComplex& z) {
  const HighReal half_log_2pi = log(2 * boost::math::constants::pi<HighReal>()) / 2;
  HighComplex sum = (z - HighReal(0.5)) * log(z) - z + half_log_2pi;
  const HighComplex z2 = z * z;
  HighComplex zp = z;
  for (int k = 1; k <= 24; ++k) {
    const HighReal b = boost::math::bernoulli_b2n<HighReal>(k);
    sum += b / (HighReal(2 * k) * HighReal(2 * k - 1) * zp);
    zp *= z2;
  }
  return sum;
}

bool is_pole(const HighComplex& z) {
  if (abs(z.imag()) > 0) return false;
  const HighReal r = z.real();
  return r <= 0 && r == floor(r);
}

ModularScalar exact_scalar(const Coefficient& c) { return {c, to_high(c)}; }

}  // namespace

Complex ModularScalar::to_complex() const {
  return {static_cast<double>(value.real()), static_cast<double>(value.imag())};
}

ModularScalar gamma_exact(const HighComplex& z) {
  if (is_pole(z)) fail(ErrorCode::PoleOfGamma, kModule, "Gamma has a pole at a nonpositive integer");
  HighComplex w = z, prod = HighReal(1);
  while (w.real() < 30) {
    prod *= w;
    w += HighReal(1);
  }
  return {std::nullopt, exp(log_gamma_stirling(w)) / prod};
}

ModularScalar gamma_exact(const Coefficient& z) {
  if (auto n = as_integer(z)) {
    if (*n <= 0) fail(ErrorCode::PoleOfGamma, kModule, "Gamma has a pole at " + std::to_string(*n));
    return exact_scalar(factorial(*n - 1));
  }
  return gamma_exact(to_high(z));
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::Formal: return "formal";
    case Provenance::Numeric: return "numeric";
    case Provenance::Unknown: return "unknown";
  }
  return "unknown";
}

MartinetRamisData MartinetRamisData::formal(const Coefficient& mu) {
  MartinetRamisData d;
  d.mu = mu;
  return d;
}

MartinetRamisData MartinetRamisData::with_holonomy(const HolonomyJet& jet) const {
  MartinetRamisData d = *this;
  d.phi0_jet = jet.coeffs;
  d.phi0_provenance = Provenance::Numeric;
  return d;
}

MartinetRamisData MartinetRamisData::with_translation(const Coefficient& t) const {
  MartinetRamisData d = *this;
  d.translation = t;
  d.translation_provenance = Provenance::Formal;
  return d;
}

Complex MartinetRamisData::multiplier() const {
  return std::exp(Complex(0, 2 * std::numbers::pi) * mu.to_complex());
}

std::optional<bool> MartinetRamisData::has_central_manifold() const {
  if (!translation) return std::nullopt;
  return translation->is_zero();
}

void ElizarovInput::validate() const {
  for (const auto& [mn, c] : coefficients) {
    if (mn.first < 1 || mn.second < -1)
      fail(ErrorCode::ConstraintViolated, kModule,
           "coefficient index (" + std::to_string(mn.first) + "," + std::to_string(mn.second) +
               ") outside m >= 1, n >= -1");
    if (mn == std::pair{1, 1} && !c.is_zero())
      fail(ErrorCode::ConstraintViolated, kModule, "f_{1,1} must vanish");
  }
}

ElizarovOutput elizarov_derivative(const ElizarovInput& in) {
  in.validate();
  const HighReal pi = boost::math::constants::pi<HighReal>();
  const HighComplex two_pi_i(0, 2 * pi);
  const HighComplex mu = to_high(in.mu);
  ElizarovOutput out;
  out.metadata["branch"] = "principal log";
  out.metadata["dt_factor"] = "(-n)^m evaluated at n = -1";
  out.metadata["precision_digits"] = "50";

  // Group by n.
  std::map<int, std::vector<std::pair<int, Coefficient>>> by_n;
  for (const auto& [mn, c] : in.coefficients)
    if (!c.is_zero()) by_n[mn.second].push_back({mn.first, c});

  for (const auto& [n, terms] : by_n) {
    if (n == 0) continue;
    const Coefficient shift = in.mu * Coefficient(n == -1 ? -1 : n);  // mu n, or -mu for t
    const auto ishift = as_integer(shift);
    const bool exact_n = ishift.has_value() && (n > 0 || as_integer(in.mu).has_value());
    Coefficient exact_sum = 0;
    HighComplex sum = HighReal(0);
    for (const auto& [m, f] : terms) {
      const Coefficient arg = Coefficient(1 + m) + shift;
      const HighComplex harg = to_high(arg);
      const Coefficient power = pow(Coefficient(n == -1 ? 1 : -n), m);
      if ((ishift && 1 + m + *ishift <= 0) || is_pole(harg)) {
        out.flagged.push_back({m, n, "Gamma(" + arg.to_string() + ") is a pole; the term vanishes"});
        continue;
      }
      const ModularScalar g = gamma_exact(arg);
      if (exact_n) exact_sum += Coefficient(m) * f * power / *g.exact;
      sum += to_high(Coefficient(m) * f * power) / g.value;
    }
    ModularScalar prefactor;
    if (n > 0) {
      // n^{mu n - 1} e^{-2 i pi n mu}
      if (exact_n) {
        const long e = *ishift - 1;
        prefactor = exact_scalar(e >= 0 ? pow(Coefficient(n), e) : Coefficient(1) / pow(Coefficient(n), -e));
      } else {
        const HighComplex e = mu * HighReal(n) - HighReal(1);
        prefactor.value = exp(e * log(HighComplex(HighReal(n)))) * exp(-two_pi_i * mu * HighReal(n));
      }
    } else {
      // (-1)^{-mu} e^{2 i pi mu} = e^{-i pi mu} e^{2 i pi mu} on the principal branch
      if (exact_n) {
        prefactor = exact_scalar(*as_integer(in.mu) % 2 == 0 ? Coefficient(1) : Coefficient(-1));
      } else {
        prefactor.value = exp(HighComplex(0, pi) * mu);
      }
    }
    ModularScalar r;
    if (exact_n) {
      r = exact_scalar(*prefactor.exact * exact_sum);
    } else {
      r.value = prefactor.value * sum;
    }
    if (n > 0)
      out.dphi[n] = r;
    else
      out.dt = r;
  }
  if (!out.dt.exact && out.dt.value == HighComplex(HighReal(0))) out.dt = exact_scalar(0);
  return out;
}

}  // namespace folia
