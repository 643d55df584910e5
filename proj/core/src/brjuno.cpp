#include "folia/brjuno.hpp"

#include <cmath>

#include "folia/error.hpp"

namespace folia {

namespace {

constexpr const char* kModule = "classify";

mpz_class lcm(const mpz_class& a, const mpz_class& b) {
  mpz_class r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

mpz_class floor_div(const mpz_class& a, const mpz_class& b) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

mpz_class isqrt(const mpz_class& a) {
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), a.get_mpz_t());
  return r;
}

/// Sign of a + b sqrt(d), exactly.
int surd_sign(const QuadraticSurd& x) {
  const int sa = sgn(x.a);
  const int sb = sgn(x.b);
  if (sb == 0 || sgn(x.d) == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // opposite signs: compare a^2 with b^2 d
  const Rational lhs = x.a * x.a, rhs = x.b * x.b * x.d;
  return lhs > rhs ? sa : (lhs < rhs ? sb : 0);
}

mpz_class pow10(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

}  // namespace

bool QuadraticSurd::is_rational() const {
  if (sgn(b) == 0 || sgn(d) == 0) return true;
  return exact_sqrt(d).has_value();
}

double QuadraticSurd::value() const { return a.get_d() + b.get_d() * std::sqrt(d.get_d()); }

std::string QuadraticSurd::to_string() const {
  return a.get_str() + (sgn(b) < 0 ? " - " : " + ") + Rational(sgn(b) < 0 ? Rational(-b) : b).get_str() + "*sqrt(" + d.get_str() + ")";
}

QuadraticSurd QuadraticSurd::abs() const {
  if (surd_sign(*this) < 0) return {-a, -b, d};
  return *this;
}

LacunarySeries LacunarySeries::liouville(int terms) {
  LacunarySeries s;
  unsigned long f = 1;
  for (int k = 1; k <= terms; ++k) {
    f *= static_cast<unsigned long>(k);
    s.exponents.push_back(f);
  }
  s.tail_exponent = f * static_cast<unsigned long>(terms + 1) - 1;
  return s;
}

std::string to_string(BrjunoVerdict v) {
  switch (v) {
    case BrjunoVerdict::ConvergedWithinBudget: return "ConvergedWithinBudget";
    case BrjunoVerdict::DivergedBeyondThreshold: return "DivergedBeyondThreshold";
    case BrjunoVerdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

double log_mpz(const mpz_class& z) {
  long exp = 0;
  const double m = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::log(m) + static_cast<double>(exp) * std::log(2.0);
}

std::vector<mpz_class> continued_fraction(const QuadraticSurd& input, int max_terms) {
  if (input.is_rational()) fail(ErrorCode::RationalInput, kModule, "target " + input.to_string() + " is rational");
  const QuadraticSurd x = input.abs();
  // a + (b / den(d)) sqrt(num(d) den(d))
  const Rational bb = x.b / Rational(x.d.get_den());
  mpz_class D = x.d.get_num() * x.d.get_den();
  mpz_class Q = lcm(x.a.get_den(), bb.get_den());
  mpz_class P = x.a.get_num() * (Q / x.a.get_den());
  mpz_class B = bb.get_num() * (Q / bb.get_den());
  // (P + B sqrt(D)) / Q  ->  (P + sqrt(D')) / Q with Q | D' - P^2
  D *= B * B;
  if (sgn(B) < 0) {
    P = -P;
    Q = -Q;
  }
  const mpz_class absQ = abs(Q);
  P *= absQ;
  D *= Q * Q;
  Q *= absQ;
  const mpz_class s = isqrt(D);

  std::vector<mpz_class> terms;
  for (int k = 0; k < max_terms; ++k) {
    mpz_class a = sgn(Q) > 0 ? floor_div(P + s, Q) : floor_div(-P - s - 1, -Q);
    terms.push_back(a);
    P = a * Q - P;
    Q = (D - P * P) / Q;
  }
  return terms;
}

std::vector<mpz_class> continued_fraction(const LacunarySeries& x, int max_terms) {
  Rational lo(0);
  for (unsigned long e : x.exponents) lo += Rational(mpz_class(1), pow10(e));
  Rational hi = lo + Rational(mpz_class(1), pow10(x.tail_exponent));
  lo.canonicalize();
  hi.canonicalize();
  std::vector<mpz_class> terms;
  while (static_cast<int>(terms.size()) < max_terms) {
    const mpz_class a = floor_div(lo.get_num(), lo.get_den());
    const mpz_class b = floor_div(hi.get_num(), hi.get_den());
    if (a != b) break;
    terms.push_back(a);
    lo -= a;
    hi -= a;
    if (sgn(lo) == 0 || sgn(hi) == 0) break;
    lo = 1 / lo;
    hi = 1 / hi;
  }
  return terms;
}

BrjunoReport brjuno_report(const BrjunoTarget& target, const BrjunoBudget& budget) {
  BrjunoReport r;
  r.budget = budget;
  // one quotient beyond the last q_n is needed for the final increment
  const int wanted = budget.max_terms + 2;
  if (const auto* s = std::get_if<QuadraticSurd>(&target)) {
    r.partial_quotients = continued_fraction(*s, wanted);
    r.target = s->abs().value();
  } else {
    const auto& l = std::get<LacunarySeries>(target);
    r.partial_quotients = continued_fraction(l, wanted);
    Rational lo(0);
    for (unsigned long e : l.exponents)
      if (e < 400) lo += Rational(mpz_class(1), pow10(e));
    r.target = lo.get_d();
  }

  mpz_class p_prev = 1, q_prev = 0, p = r.partial_quotients.empty() ? mpz_class(0) : r.partial_quotients[0], q = 1;
  if (!r.partial_quotients.empty()) r.convergents.push_back({p, q});
  for (std::size_t k = 1; k < r.partial_quotients.size(); ++k) {
    const mpz_class& a = r.partial_quotients[k];
    mpz_class pn = a * p + p_prev, qn = a * q + q_prev;
    p_prev = p;
    q_prev = q;
    p = pn;
    q = qn;
    r.convergents.push_back({p, q});
  }

  double sum = 0;
  int small_run = 0;
  for (int n = 0; n + 1 < static_cast<int>(r.convergents.size()) && n < budget.max_terms; ++n) {
    const mpz_class& qn = r.convergents[static_cast<std::size_t>(n)].q;
    const mpz_class& qn1 = r.convergents[static_cast<std::size_t>(n) + 1].q;
    if (qn1 == 1) {  // log(q_1) = 0 when a_1 = 1; carries no information
      r.partial_sums.push_back(sum);
      continue;
    }
    // log(q_{n+1}) / q_n, evaluated in log space since q_n may exceed double range
    const double inc = std::exp(std::log(log_mpz(qn1)) - log_mpz(qn));
    sum += inc;
    r.partial_sums.push_back(sum);
    if (sum > budget.divergence_threshold) {
      r.verdict = BrjunoVerdict::DivergedBeyondThreshold;
      return r;
    }
    if (inc < budget.increment_tolerance) {
      if (!r.first_small_increment) r.first_small_increment = n;
      if (++small_run >= budget.stable_increments) {
        r.verdict = BrjunoVerdict::ConvergedWithinBudget;
        return r;
      }
    } else {
      small_run = 0;
    }
  }
  r.verdict = BrjunoVerdict::Inconclusive;
  return r;
}

}  // namespace folia
