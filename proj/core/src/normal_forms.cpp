#include "folia/normal_forms.hpp"

#include <stdexcept>
#include <tuple>
#include <vector>

#include "folia/error.hpp"

namespace folia {

namespace {

constexpr const char* kModule = "normal_forms";

LinearPart inverse(const LinearPart& m) {
  const Coefficient det = m.det();
  return {m.d / det, -m.b / det, -m.c / det, m.a / det};
}

bool is_diagonal(const LinearPart& m) { return m.b.is_zero() && m.c.is_zero(); }

/// Columns v1, v2 as the matrix of the change (x, y) -> x v1 + y v2.
LinearPart from_columns(const Coefficient& v1x, const Coefficient& v1y, const Coefficient& v2x,
                        const Coefficient& v2y) {
  return {v1x, v2x, v1y, v2y};
}

std::pair<Coefficient, Coefficient> eigenvector(const LinearPart& A, const Coefficient& l) {
  if (!A.b.is_zero()) return {A.b, l - A.a};
  if (l != A.d) return {l - A.d, A.c};
  return {Coefficient(0), Coefficient(1)};
}

/// Eigenbasis for distinct eigenvalues l1 (along x) and l2 (along y).
LinearPart eigenbasis(const LinearPart& A, const Coefficient& l1, const Coefficient& l2) {
  if (is_diagonal(A) && A.a == l1 && A.d == l2) return {1, 0, 0, 1};
  const auto [v1x, v1y] = eigenvector(A, l1);
  const auto [v2x, v2y] = eigenvector(A, l2);
  return from_columns(v1x, v1y, v2x, v2y);
}

/// Basis in which a non-diagonalizable A becomes lambda (x + y) dx + lambda y dy.
LinearPart jordan_basis(const LinearPart& A, const Coefficient& l) {
  // t2 outside ker(A - l), t1 = (A - l) t2 / l
  Coefficient t2x(1), t2y(0);
  if ((A.a - l).is_zero() && A.c.is_zero()) {
    t2x = 0;
    t2y = 1;
  }
  const Coefficient t1x = ((A.a - l) * t2x + A.b * t2y) / l;
  const Coefficient t1y = (A.c * t2x + (A.d - l) * t2y) / l;
  return from_columns(t1x, t1y, t2x, t2y);
}

/// Basis in which A becomes (a x - b y) dx + (b x + a y) dy.
LinearPart focus_basis(const LinearPart& A, const Coefficient& a, const Coefficient& b) {
  return from_columns(1, 0, (A.a - a) / b, A.c / b);
}

Coefficient pick_root(const std::vector<Coefficient>& roots) {
  for (const Coefficient& r : roots)
    if (r.is_real() && sgn(r.re()) > 0) return r;
  for (const Coefficient& r : roots)
    if (r.is_real()) return r;
  return roots.front();
}

Coefficient root_or_fail(const Coefficient& c, int k) {
  const auto roots = exact_roots(c, static_cast<unsigned>(k));
  if (roots.empty()) {
    fail(ErrorCode::NonRationalScaling, kModule, "no " + std::to_string(k) + "-th root of " + c.to_string() + " in Q(i)");
  }
  return pick_root(roots);
}

/// Residue of 1/c for c of valuation k + 1.
Coefficient residue_of_inverse(const Series1& c, int k) { return inverse(shift_down(c, k + 1))[k]; }

std::optional<std::vector<Coefficient>> solve(std::vector<std::vector<Coefficient>> M, std::vector<Coefficient> rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && M[piv][col].is_zero()) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(M[piv], M[col]);
    std::swap(rhs[piv], rhs[col]);
    const Coefficient inv = Coefficient(1) / M[col][col];
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || M[r][col].is_zero()) continue;
      const Coefficient f = M[r][col] * inv;
      for (std::size_t c = col; c < n; ++c) M[r][c] -= f * M[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  for (std::size_t r = 0; r < n; ++r) rhs[r] /= M[r][r];
  return rhs;
}

/// pullback(X, change) == unit * field throughout.
struct Reduction {
  PlanarVectorField field;
  CoordinateChange change;
  Series2 unit;

  explicit Reduction(const PlanarVectorField& X)
      : field(X), change(CoordinateChange::identity(X.order())), unit(Series2::constant(1, X.order())) {}

  int order() const { return field.order(); }

  void apply(const CoordinateChange& psi) {
    field = pullback(field, psi);
    unit = psi.apply_to(unit);
    change = compose(change, psi);
  }
  void apply_linear(const LinearPart& t) { apply(CoordinateChange::linear(t, order())); }
  void divide_by(const Series2& h) {
    field = PlanarVectorField(divide(field.fx(), h), divide(field.fy(), h));
    unit = unit * h;
  }
  void divide_by(const Coefficient& c) { divide_by(Series2::constant(c, order())); }
};

/// Removes every non-resonant term of degree >= 2 against the linear part,
/// one degree at a time; resonant terms are kept and their free coefficients
/// in the change are zero.
void poincare_dulac(Reduction& r) {
  const LinearPart J = r.field.linear_part();
  const bool diagonal = is_diagonal(J);
  const int n = r.order();
  const Coefficient A[2][2] = {{J.a, J.b}, {J.c, J.d}};
  for (int d = 2; d <= n; ++d) {
    const int size = 2 * (d + 1);
    auto index = [d](int comp, int j) { return static_cast<std::size_t>(comp * (d + 1) + j); };
    std::vector<Coefficient> rhs(static_cast<std::size_t>(size));
    bool any = false;
    for (int comp = 0; comp < 2; ++comp)
      for (int j = 0; j <= d; ++j) {
        const Series2& s = comp == 0 ? r.field.fx() : r.field.fy();
        rhs[index(comp, j)] = -s.at(d - j, j);
        any = any || !rhs[index(comp, j)].is_zero();
      }
    if (!any) continue;

    std::vector<Coefficient> sol(static_cast<std::size_t>(size));
    if (diagonal) {
      for (int comp = 0; comp < 2; ++comp)
        for (int j = 0; j <= d; ++j) {
          const Coefficient e = A[comp][comp] - (Coefficient(d - j) * J.a + Coefficient(j) * J.d);
          if (!e.is_zero()) sol[index(comp, j)] = rhs[index(comp, j)] / e;
        }
    } else {
      // image of x^i y^j e_comp under P -> A P - DP (A x)
      std::vector<std::vector<Coefficient>> M(static_cast<std::size_t>(size),
                                              std::vector<Coefficient>(static_cast<std::size_t>(size)));
      for (int comp = 0; comp < 2; ++comp)
        for (int j = 0; j <= d; ++j) {
          const int i = d - j;
          const std::size_t col = index(comp, j);
          M[index(0, j)][col] += A[0][comp];
          M[index(1, j)][col] += A[1][comp];
          M[index(comp, j)][col] -= Coefficient(i) * J.a + Coefficient(j) * J.d;
          if (i >= 1) M[index(comp, j + 1)][col] -= Coefficient(i) * J.b;
          if (j >= 1) M[index(comp, j - 1)][col] -= Coefficient(j) * J.c;
        }
      auto s = solve(std::move(M), rhs);
      if (!s) fail(ErrorCode::UnsupportedClass, kModule, "resonance with a non-diagonal linear part");
      sol = std::move(*s);
    }

    Series2 u = Series2::x(n), v = Series2::y(n);
    bool nonzero = false;
    for (int j = 0; j <= d; ++j) {
      if (!sol[index(0, j)].is_zero()) u.add_to(d - j, j, sol[index(0, j)]), nonzero = true;
      if (!sol[index(1, j)].is_zero()) v.add_to(d - j, j, sol[index(1, j)]), nonzero = true;
    }
    if (nonzero) r.apply(CoordinateChange(std::move(u), std::move(v)));
  }
}

std::pair<Coefficient, Coefficient> exact_eigenvalues(const EigenData& e) {
  if (!e.lambda1.exact || !e.lambda2.exact) {
    fail(ErrorCode::IrrationalEigendata, kModule,
         "eigenvalues " + e.lambda1.to_string() + ", " + e.lambda2.to_string() + " are not in Q(i)");
  }
  return {*e.lambda1.exact, *e.lambda2.exact};
}

/// Saddle-node with linear part x dx, after Poincare-Dulac: x a(y) dx + b(y) dy.
NamedForm finish_saddle_node(Reduction& r) {
  const int n = r.order();
  r.divide_by(Series2::from_univariate(r.field.fx().slice(Var::X, 1).extended(n), Var::Y));
  Series1 c = r.field.fy().restrict_to_axis(Var::Y);
  const auto v = c.valuation();
  if (!v) fail(ErrorCode::TruncationTooShallow, kModule, "center-manifold component vanishes to the truncation order");
  const int k = *v - 1;
  if (2 * k + 1 > n) fail(ErrorCode::TruncationTooShallow, kModule, "order " + std::to_string(n) + " cannot carry mu");
  const Coefficient s = root_or_fail(Coefficient(1) / c[k + 1], k);
  r.apply(CoordinateChange(Series2::x(n), Series2::y(n) * s));
  c = r.field.fy().restrict_to_axis(Var::Y);
  const Coefficient mu = -residue_of_inverse(c, k);
  Series1 model(n);
  model.set(k + 1, 1);
  model.set(2 * k + 1, mu);
  const Series1 psi = conjugate_1d(c, model, k);
  r.apply(CoordinateChange(Series2::x(n), Series2::from_univariate(psi, Var::Y)));
  return NamedForm::pd_saddle_node(k, mu);
}

std::pair<long, long> bezout(long a, long b) {
  // x a + y b = gcd(a, b)
  long x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    const long q = a / b;
    std::tie(a, b) = std::make_pair(b, a - q * b);
    std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
    std::tie(y0, y1) = std::make_pair(y1, y0 - q * y1);
  }
  return {x0, y0};
}

/// Resonant saddle with linear part q x dx - p y dy, after Poincare-Dulac:
/// x A(u) dx + y B(u) dy with u = x^p y^q.
NamedForm finish_resonant_saddle(Reduction& r, int p, int q) {
  const int n = r.order();
  r.divide_by(r.field.fx().divided_by_monomial(1, 0).extended(n) * Coefficient::fraction(1, q));
  const int M = (n - 1) / (p + q);
  // u' = F(u) = q u (p + C(u)) along the flow, C(u) = fy / y
  auto u_field = [&] {
    Series1 F(M + 1);
    for (int m = 1; m <= M; ++m) F.set(m + 1, Coefficient(q) * r.field.fy().at(p * m, q * m + 1));
    return F;
  };
  Series1 F = u_field();
  const auto v = F.valuation();
  if (!v) return NamedForm::pd_linear(q, -p);
  const int k = *v - 1;
  if (2 * k > M) fail(ErrorCode::TruncationTooShallow, kModule, "order " + std::to_string(n) + " cannot carry mu");
  // u -> s u with s^k = -q / F_{k+1}, realized as x -> s^a x, y -> s^b y, a p + b q = 1
  const Coefficient s = root_or_fail(-Coefficient(q) / F[k + 1], k);
  const auto [a, b] = bezout(p, q);
  r.apply(CoordinateChange(Series2::x(n) * pow(s, a), Series2::y(n) * pow(s, b)));
  F = u_field();
  const Coefficient mu = Coefficient(q) * residue_of_inverse(F, k);
  Series1 model(M + 1);
  model.set(k + 1, -q);
  model.set(2 * k + 1, -Coefficient(q) * mu);
  const Series1 psi = conjugate_1d(F, model, k);
  // u = u' beta(u')^q with y = y' beta(u')
  const Series1 beta = root1(shift_down(psi, 1), q);
  const Series2 y_new = Series2::y(n) * compose(beta.extended(n), Series2::monomial(p, q, 1, n));
  r.apply(CoordinateChange(Series2::x(n), y_new));
  return NamedForm::pd_resonant_saddle(p, q, k, mu);
}

bool lex_less(const Coefficient& a, const Coefficient& b) {
  return a.re() < b.re() || (a.re() == b.re() && a.im() < b.im());
}

PlanarVectorField at_order(const PlanarVectorField& X, int order) {
  return order <= X.order() ? X.truncated(order) : X.extended(order);
}

}  // namespace

Series1 conjugate_1d(const Series1& c, const Series1& m, int k) {
  const int n = c.order();
  Series1 psi = Series1::variable(n);
  for (int j = 2; j + k <= n; ++j) {
    const Series1 E = compose1(c, psi) - derive(psi).extended(n) * m;
    if (j == k + 1) {
      if (!E[2 * k + 1].is_zero()) throw std::logic_error("conjugate_1d: residues differ");
      continue;
    }
    psi.set(j, psi[j] - E[j + k] / (Coefficient(k + 1 - j) * c[k + 1]));
  }
  return psi;
}

PlanarVectorField DulacForm::field() const {
  const int n = remainder.order() + k + depth;
  Series2 fx = Series2::monomial(k + 1, 0, 1, n);
  Series2 fy = Series2::y(n) + Series2::monomial(k, 1, mu, n);
  remainder.for_each_nonzero([&](int i, int j, const Coefficient& c) { fy.add_to(i + k + depth, j, c); });
  return {std::move(fx), std::move(fy)};
}

DulacForm dulac_prenormalize(const PlanarVectorField& X, int depth) {
  const SingularityClass cls = classify(X);
  if (cls.kind != ClassKind::SaddleNode) {
    fail(ErrorCode::NotSaddleNode, kModule, "expected a saddle-node, found " + cls.to_string());
  }
  const int n = X.order();
  const Coefficient lambda = *cls.eigen.lambda1.exact;
  Reduction r(X);
  r.apply_linear(eigenbasis(cls.eigen.matrix, 0, lambda));
  r.divide_by(lambda);
  poincare_dulac(r);

  // A(x) dx + y B(x) dy  ->  (A / B)(x) dx + y dy
  r.divide_by(Series2::from_univariate(r.field.fy().slice(Var::Y, 1).extended(n), Var::X));
  Series1 c = r.field.fx().restrict_to_axis(Var::X);
  const auto v = c.valuation();
  if (!v) fail(ErrorCode::TruncationTooShallow, kModule, "center-manifold component vanishes to the truncation order");
  const int k = *v - 1;
  if (n < k + depth + 2 || n < 2 * k + 1) {
    fail(ErrorCode::TruncationTooShallow, kModule,
         "order " + std::to_string(n) + " < k + N + 2 = " + std::to_string(k + depth + 2));
  }
  const Coefficient s = root_or_fail(Coefficient(1) / c[k + 1], k);
  r.apply(CoordinateChange(Series2::x(n) * s, Series2::y(n)));
  c = r.field.fx().restrict_to_axis(Var::X);
  const Coefficient mu = residue_of_inverse(c, k);

  // x^{k+1} / (1 + mu x^k) dx + y dy, then multiply by 1 + mu x^k
  Series1 one_plus(n);
  one_plus.set(0, 1);
  one_plus.set(k, one_plus[k] + mu);
  const Series1 damp = inverse(one_plus);
  Series1 model(n);
  for (int j = k + 1; j <= n; ++j) model.set(j, damp[j - k - 1]);
  const Series1 psi = conjugate_1d(c, model, k);
  r.apply(CoordinateChange(Series2::from_univariate(psi, Var::X), Series2::y(n)));
  r.divide_by(Series2::from_univariate(damp, Var::X));

  DulacForm out;
  out.k = k;
  out.mu = mu;
  out.depth = depth;
  const Series2 rest = r.field.fy() - Series2::y(n) - Series2::monomial(k, 1, mu, n);
  out.remainder = rest.divided_by_monomial(k + depth, 0);
  const LinearPart L = r.change.linear_part();
  out.linear = CoordinateChange::linear(L, n);
  out.change = compose(CoordinateChange::linear(inverse(L), n), r.change);
  out.unit = r.unit;
  return out;
}

FormalConjugacy formal_normal_form(const PlanarVectorField& input, int order) {
  const PlanarVectorField X = at_order(input, order);
  const SingularityClass cls = classify(X);
  const EigenData& e = cls.eigen;
  Reduction r(X);
  std::optional<NamedForm> target;

  switch (cls.kind) {
    case ClassKind::NonSingular:
    case ClassKind::Nilpotent:
    case ClassKind::ZeroLinearPart:
      fail(ErrorCode::UnsupportedClass, kModule, "no Poincare-Dulac model for " + cls.to_string());
    case ClassKind::RealFocus: {
      if (!cls.focus_a->exact || !cls.focus_b->exact) {
        fail(ErrorCode::IrrationalEigendata, kModule, "focus eigenvalues are not in Q(i)");
      }
      const Coefficient a = *cls.focus_a->exact, b = *cls.focus_b->exact;
      r.apply_linear(focus_basis(e.matrix, a, b));
      poincare_dulac(r);
      target = NamedForm::pd_focus(a, b);
      break;
    }
    case ClassKind::PoincareNonResonant:
    case ClassKind::IrrationalSaddle: {
      const auto [l1, l2] = exact_eigenvalues(e);
      r.apply_linear(eigenbasis(e.matrix, l1, l2));
      poincare_dulac(r);
      target = NamedForm::pd_linear(l1, l2);
      break;
    }
    case ClassKind::ResonantNode: {
      auto [l1, l2] = exact_eigenvalues(e);
      const int k = cls.k;
      if (k == 1) {
        if (is_diagonal(e.matrix)) {
          poincare_dulac(r);
          target = NamedForm::pd_linear(l1, l1);
        } else {
          r.apply_linear(jordan_basis(e.matrix, l1));
          poincare_dulac(r);
          target = NamedForm::pd_node(l1, 1);
        }
        break;
      }
      if (l1 != Coefficient(k) * l2) std::swap(l1, l2);
      r.apply_linear(eigenbasis(e.matrix, l1, l2));
      poincare_dulac(r);
      const Coefficient c = r.field.fx().coeff(0, k);
      if (c.is_zero()) {
        target = NamedForm::pd_linear(l1, l2);
      } else {
        r.apply(CoordinateChange(Series2::x(r.order()) * (c / l2), Series2::y(r.order())));
        target = NamedForm::pd_node(l2, k);
      }
      break;
    }
    case ClassKind::ResonantSaddle: {
      auto [l1, l2] = exact_eigenvalues(e);
      const int p = cls.p, q = cls.q;
      if (l2 / l1 != Coefficient::fraction(-p, q)) std::swap(l1, l2);
      auto reduce = [&](Reduction& red, const Coefficient& lx, const Coefficient& ly) {
        red.apply_linear(eigenbasis(e.matrix, lx, ly));
        red.divide_by(lx / Coefficient(q));
        poincare_dulac(red);
        return finish_resonant_saddle(red, p, q);
      };
      target = reduce(r, l1, l2);
      if (p == q && target->kind == NamedKind::PDResonantSaddle) {
        // ratio -1: the other separatrix as x-axis turns mu into 1 - mu; keep the larger
        Reduction other(X);
        std::optional<NamedForm> alt;
        try {
          alt = reduce(other, l2, l1);
        } catch (const Error&) {
        }
        if (alt && lex_less(target->mu, alt->mu)) {
          r = std::move(other);
          target = alt;
        }
      }
      break;
    }
    case ClassKind::SaddleNode: {
      const Coefficient l1 = *e.lambda1.exact;
      r.apply_linear(eigenbasis(e.matrix, l1, 0));
      r.divide_by(l1);
      poincare_dulac(r);
      target = finish_saddle_node(r);
      break;
    }
  }

  if (!(r.field == make_named(*target, r.order()))) {
    throw std::logic_error("formal_normal_form: reduction did not reach " + target->to_string() + " got " + r.field.to_string());
  }
  return {r.change, r.unit, *target};
}

}  // namespace folia
