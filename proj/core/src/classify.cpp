#include "folia/classify.hpp"

namespace folia {

namespace {

std::optional<int> small_integer(const Coefficient& c) {
  if (!c.is_real() || !c.is_integer()) return std::nullopt;
  const mpz_class& z = c.re().get_num();
  if (!z.fits_sint_p()) return std::nullopt;
  return static_cast<int>(z.get_si());
}

/// Real field with eigenvalues a +- i b.
void set_focus(SingularityClass& out) {
  const LinearPart& m = out.eigen.matrix;
  const Rational tr = m.trace().re();
  const Rational b2 = (Rational(4) * m.det().re() - tr * tr) / 4;
  out.kind = ClassKind::RealFocus;
  out.focus_a = Scalar::from(Coefficient(tr / 2));
  if (auto b = exact_sqrt(b2)) {
    out.focus_b = Scalar::from(Coefficient(*b));
  } else {
    out.focus_b = Scalar::from(QuadraticSurd{Rational(0), Rational(1), b2});
  }
}

SingularityClass classify_exact_ratio(SingularityClass out, const Coefficient& r, bool real_field) {
  if (r.is_zero()) {
    out.kind = ClassKind::SaddleNode;
    return out;
  }
  if (!r.is_real()) {
    if (real_field) {
      set_focus(out);
    } else {
      out.kind = ClassKind::PoincareNonResonant;
    }
    return out;
  }
  const Rational& v = r.re();
  if (sgn(v) > 0) {
    if (auto k = small_integer(r)) {
      out.kind = ClassKind::ResonantNode;
      out.k = *k;
    } else if (auto k2 = small_integer(Coefficient(1) / r)) {
      out.kind = ClassKind::ResonantNode;
      out.k = *k2;
    } else {
      out.kind = ClassKind::PoincareNonResonant;
    }
    return out;
  }
  out.kind = ClassKind::ResonantSaddle;
  mpz_class p = -v.get_num(), q = v.get_den();
  if (p < q) std::swap(p, q);
  out.p = static_cast<int>(p.get_si());
  out.q = static_cast<int>(q.get_si());
  return out;
}

}  // namespace

std::string to_string(ClassKind k) {
  switch (k) {
    case ClassKind::NonSingular: return "NonSingular";
    case ClassKind::PoincareNonResonant: return "PoincareNonResonant";
    case ClassKind::ResonantNode: return "ResonantNode";
    case ClassKind::RealFocus: return "RealFocus";
    case ClassKind::IrrationalSaddle: return "IrrationalSaddle";
    case ClassKind::ResonantSaddle: return "ResonantSaddle";
    case ClassKind::SaddleNode: return "SaddleNode";
    case ClassKind::Nilpotent: return "Nilpotent";
    case ClassKind::ZeroLinearPart: return "ZeroLinearPart";
  }
  return "?";
}

std::string SingularityClass::to_string() const {
  std::string s = folia::to_string(kind);
  switch (kind) {
    case ClassKind::ResonantNode: return s + "(k=" + std::to_string(k) + ")";
    case ClassKind::ResonantSaddle: return s + "(p=" + std::to_string(p) + ", q=" + std::to_string(q) + ")";
    case ClassKind::RealFocus: return s + "(a=" + focus_a->to_string() + ", b=" + focus_b->to_string() + ")";
    case ClassKind::IrrationalSaddle: return s + "(" + folia::to_string(brjuno->verdict) + ")";
    default: return s;
  }
}

SingularityClass classify(const PlanarVectorField& X, const BrjunoBudget& budget) {
  SingularityClass out;
  if (!X.singular_at_origin()) return out;
  out.eigen = eigen_data(X);
  const LinearPart& m = out.eigen.matrix;
  if (m.is_zero()) {
    out.kind = ClassKind::ZeroLinearPart;
    return out;
  }
  if (!out.eigen.ratio) {
    out.kind = ClassKind::Nilpotent;
    return out;
  }
  const Scalar& r = *out.eigen.ratio;
  const bool real_field = X.is_real();
  if (r.exact) {
    const Coefficient ratio = *r.exact;
    return classify_exact_ratio(std::move(out), ratio, real_field);
  }
  if (r.surd) {
    if (r.surd->value() > 0) {
      out.kind = ClassKind::PoincareNonResonant;
    } else {
      out.kind = ClassKind::IrrationalSaddle;
      out.brjuno = brjuno_report(r.surd->abs(), budget);
    }
    return out;
  }
  // Only a non-real ratio is left without an exact form.
  if (real_field) {
    set_focus(out);
  } else {
    out.kind = ClassKind::PoincareNonResonant;
  }
  return out;
}

std::vector<std::pair<long, long>> es_resonance_check(const std::optional<Rational>& slope, const Coefficient& mu,
                                                      long bound) {
  std::vector<std::pair<long, long>> hits;
  // m + mu n has nonzero imaginary part for every n > 0
  if (!mu.is_real()) return hits;
  for (long n = 1; n <= bound; ++n) {
    const Rational shift = slope ? Rational(n) / *slope : Rational(0);
    const Rational lo = shift + 1, hi = shift + 2;
    mpz_class start;
    mpz_cdiv_q(start.get_mpz_t(), lo.get_num().get_mpz_t(), lo.get_den().get_mpz_t());
    for (mpz_class m = start; m < hi && m <= bound; ++m) {
      const Rational value = Rational(m) + mu.re() * n;
      if (value.get_den() == 1 && sgn(value) <= 0) hits.emplace_back(m.get_si(), n);
    }
  }
  return hits;
}

}  // namespace folia
