#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "folia/coefficient.hpp"

namespace folia {

/// Real number a + b * sqrt(d) with rational a, b, d.
struct QuadraticSurd {
  Rational a{0};
  Rational b{0};
  Rational d{0};

  /// b == 0 or d a rational square.
  bool is_rational() const;
  double value() const;
  std::string to_string() const;
  QuadraticSurd abs() const;
};

/// x = sum_k 10^{-e_k} + r with 0 <= r <= 10^{-tail_exponent}.
struct LacunarySeries {
  std::vector<unsigned long> exponents;
  unsigned long tail_exponent = 0;

  /// sum_{k=1..terms} 10^{-k!}, tail bounded by 10^{1-(terms+1)!}.
  static LacunarySeries liouville(int terms);
};

using BrjunoTarget = std::variant<QuadraticSurd, LacunarySeries>;

struct BrjunoBudget {
  int max_terms = 200;
  double divergence_threshold = 1e3;
  double increment_tolerance = 1e-8;
  /// Consecutive increments below tolerance required for convergence.
  int stable_increments = 3;
};

enum class BrjunoVerdict { ConvergedWithinBudget, DivergedBeyondThreshold, Inconclusive };
std::string to_string(BrjunoVerdict v);

struct Convergent {
  mpz_class p;
  mpz_class q;
};

struct BrjunoReport {
  double target = 0;
  std::vector<mpz_class> partial_quotients;  ///< a_0, a_1, ...
  std::vector<Convergent> convergents;       ///< p_n / q_n
  std::vector<double> partial_sums;          ///< sum_{m<=n} log(q_{m+1}) / q_m
  BrjunoVerdict verdict = BrjunoVerdict::Inconclusive;
  BrjunoBudget budget;
  /// First n whose increment log(q_{n+1}) / q_n fell below the tolerance.
  std::optional<int> first_small_increment;
};

/// Partial quotients of |x|, at most max_terms of them.
std::vector<mpz_class> continued_fraction(const QuadraticSurd& x, int max_terms);
/// Partial quotients certified by the enclosing interval of the series.
std::vector<mpz_class> continued_fraction(const LacunarySeries& x, int max_terms);

/// Budgeted Brjuno sum on the continued fraction of |target|.
/// Throws RationalInput for rational targets.
BrjunoReport brjuno_report(const BrjunoTarget& target, const BrjunoBudget& budget = {});

/// Natural log of a positive big integer.
double log_mpz(const mpz_class& z);

}  // namespace folia
