#pragma once

#include <boost/multiprecision/cpp_complex.hpp>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "folia/coefficient.hpp"
#include "folia/numerics.hpp"

namespace folia {

using HighComplex = boost::multiprecision::cpp_complex_50;
using HighReal = boost::multiprecision::cpp_bin_float_50;

/// Exact value when available, and always a 50-digit float.
struct ModularScalar {
  std::optional<Coefficient> exact;
  HighComplex value;

  Complex to_complex() const;
};

/// Gamma(z). Exact factorial for positive integers, otherwise Stirling's
/// series after shifting Re(z) past 30. Raises PoleOfGamma at 0, -1, -2, ...
ModularScalar gamma_exact(const Coefficient& z);
ModularScalar gamma_exact(const HighComplex& z);

enum class Provenance { Formal, Numeric, Unknown };
std::string to_string(Provenance p);

/// phi_0(z) = e^{2 i pi mu} z + sum a_n z^n, phi_inf(z) = z + t.
struct MartinetRamisData {
  Coefficient mu;
  std::optional<std::vector<Complex>> phi0_jet;  ///< index = degree
  std::optional<Coefficient> translation;
  Provenance mu_provenance = Provenance::Formal;
  Provenance phi0_provenance = Provenance::Unknown;
  Provenance translation_provenance = Provenance::Unknown;

  static MartinetRamisData formal(const Coefficient& mu);
  /// Fills phi0 from a holonomy jet of the central manifold.
  MartinetRamisData with_holonomy(const HolonomyJet& jet) const;
  MartinetRamisData with_translation(const Coefficient& t) const;

  Complex multiplier() const;
  /// Known only when the translation is: a central manifold exists iff t = 0.
  std::optional<bool> has_central_manifold() const;
};

/// mu and the coefficients f_{m,n} (m >= 1, n >= -1) of the perturbation
/// f = sum f_{m,n} x^m y^n.
struct ElizarovInput {
  Coefficient mu;
  std::map<std::pair<int, int>, Coefficient> coefficients;

  /// Checks the index ranges and f_{1,1} = 0.
  void validate() const;
};

struct GammaPoleTerm {
  int m, n;
  std::string diagnostic;
};

struct ElizarovOutput {
  std::map<int, ModularScalar> dphi;  ///< n >= 1
  ModularScalar dt;
  std::vector<GammaPoleTerm> flagged;  ///< terms counted as zero
  std::map<std::string, std::string> metadata;
};

ElizarovOutput elizarov_derivative(const ElizarovInput& in);

}  // namespace folia
