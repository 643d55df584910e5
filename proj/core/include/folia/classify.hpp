#pragma once

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "folia/brjuno.hpp"
#include "folia/vfield.hpp"

namespace folia {

/// A scalar known exactly in Q(i), exactly as a real quadratic surd, or only
/// approximately.
struct Scalar {
  std::optional<Coefficient> exact;
  std::optional<QuadraticSurd> surd;
  std::complex<double> approx;

  static Scalar from(const Coefficient& c) { return {c, std::nullopt, c.to_complex()}; }
  static Scalar from(const QuadraticSurd& s) { return {std::nullopt, s, {s.value(), 0.0}}; }
  static Scalar approximate(std::complex<double> z) { return {std::nullopt, std::nullopt, z}; }

  bool is_exact() const { return exact.has_value() || surd.has_value(); }
  std::string to_string() const;
};

struct EigenData {
  LinearPart matrix;
  Scalar lambda1;  ///< nonzero whenever the linear part has a nonzero eigenvalue
  Scalar lambda2;
  /// lambda2 / lambda1; absent when lambda1 = 0.
  std::optional<Scalar> ratio;
  /// Both eigenvalues are exact (in Q(i) or real quadratic surds).
  bool exact = false;
};

EigenData eigen_data(const LinearPart& m);
EigenData eigen_data(const PlanarVectorField& X);

enum class ClassKind {
  NonSingular,
  PoincareNonResonant,
  ResonantNode,
  RealFocus,
  IrrationalSaddle,
  ResonantSaddle,
  SaddleNode,
  Nilpotent,
  ZeroLinearPart,
};
std::string to_string(ClassKind k);

struct SingularityClass {
  ClassKind kind = ClassKind::NonSingular;
  int k = 0;  ///< ResonantNode: the eigenratio (or its inverse) in N
  int p = 0;  ///< ResonantSaddle: eigenratio -p/q with p >= q, lowest terms
  int q = 0;
  /// RealFocus: eigenvalues a +- i b.
  std::optional<Scalar> focus_a, focus_b;
  std::optional<BrjunoReport> brjuno;  ///< IrrationalSaddle
  EigenData eigen;

  /// Variant and discrete parameters.
  friend bool operator==(const SingularityClass& x, const SingularityClass& y) {
    return x.kind == y.kind && x.k == y.k && x.p == y.p && x.q == y.q;
  }
  std::string to_string() const;
};

SingularityClass classify(const PlanarVectorField& X, const BrjunoBudget& budget = {});

/// Exponents (m, n) of E_s = {n > 0, n/s + 1 <= m < n/s + 2} with
/// m + mu n in {0, -1, -2, ...}, for m, n <= bound. An absent slope means s = infinity.
std::vector<std::pair<long, long>> es_resonance_check(const std::optional<Rational>& slope, const Coefficient& mu,
                                                      long bound);

}  // namespace folia
