#include "folia/named_forms.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "folia/error.hpp"

namespace folia {

namespace {

constexpr const char* kModule = "normal_forms";

void require(bool ok, const std::string& what) {
  if (!ok) fail(ErrorCode::ConstraintViolated, kModule, what);
}

void add_term(Series2& s, int i, int j, const Coefficient& c) {
  if (i + j <= s.order() && !c.is_zero()) s.add_to(i, j, c);
}

bool same_series(const Series1& a, const Series1& b) {
  const int n = std::max(a.order(), b.order());
  for (int k = 0; k <= n; ++k)
    if (a.coeff(k) != b.coeff(k)) return false;
  return true;
}

std::optional<int> small_int(const Coefficient& c) {
  if (!c.is_real() || !c.is_integer()) return std::nullopt;
  const mpz_class& z = c.re().get_num();
  if (!z.fits_sint_p()) return std::nullopt;
  return static_cast<int>(z.get_si());
}

template <typename Build>
std::optional<NamedForm> confirm(const PlanarVectorField& X, Build&& build) {
  try {
    NamedForm form = build();
    if (make_named(form, X.order()) == X) return form;
  } catch (const Error&) {
  }
  return std::nullopt;
}

std::optional<NamedForm> as_formal_model(const PlanarVectorField& X) {
  const auto v = X.fx().valuation();
  if (!v || *v < 2) return std::nullopt;
  return confirm(X, [&] {
    const int k = *v - 1;
    return NamedForm::formal_model(k, X.fy().coeff(k, 1));
  });
}

Series1 x_slice_of_fy(const PlanarVectorField& X) {
  const int n = X.order();
  Series1 f(std::max(n - 1, 0));
  for (int j = 0; j + 1 <= n; ++j) f.set(j, X.fy().coeff(1, j));
  return f;
}

std::optional<NamedForm> as_ecalle(const PlanarVectorField& X) {
  if (X.order() < 2) return std::nullopt;
  return confirm(X, [&] {
    Series1 f = x_slice_of_fy(X);
    return f[0].is_zero() ? NamedForm::ecalle2(std::move(f)) : NamedForm::ecalle1(std::move(f));
  });
}

std::optional<NamedForm> as_brjuno(const PlanarVectorField& X) {
  const int N = X.order();
  if (N < 2) return std::nullopt;
  // fy = y + x y g(x, y) with g(x, y) = f(x^n y)
  Series2 rest = X.fy() - Series2::y(N);
  if (rest.is_zero()) return std::nullopt;
  const auto vx = rest.valuation_in(Var::X), vy = rest.valuation_in(Var::Y);
  if (!vx || !vy || *vx < 1 || *vy < 1) return std::nullopt;
  const Series2 g = rest.divided_by_monomial(1, 1);
  std::optional<int> n;
  g.for_each_nonzero([&](int i, int j, const Coefficient&) {
    if (!n && j >= 1 && i % j == 0) n = i / j;
  });
  if (!n) return std::nullopt;
  return confirm(X, [&] {
    Series1 f((N - 2) / (*n + 1));
    for (int m = 0; m <= f.order(); ++m) f.set(m, g.coeff(*n * m, m));
    return NamedForm::brjuno(std::move(f), *n);
  });
}

std::optional<NamedForm> as_saddle(const PlanarVectorField& X) {
  const Coefficient mu = X.fy().coeff(1, 1);
  if (mu.is_zero() || X.order() < 2) return std::nullopt;
  return confirm(X, [&] {
    Series1 f(X.order() - 1);
    for (int j = 0; j <= f.order(); ++j) f.set(j, X.fy().coeff(0, j + 1) / mu);
    return NamedForm::saddle(std::move(f), mu);
  });
}

std::optional<NamedForm> as_pd_saddle_node(const PlanarVectorField& X) {
  const auto v = X.fy().restrict_to_axis(Var::Y).valuation();
  if (!v || *v < 2) return std::nullopt;
  return confirm(X, [&] {
    const int k = *v - 1;
    return NamedForm::pd_saddle_node(k, X.fy().coeff(0, 2 * k + 1));
  });
}

std::optional<NamedForm> as_pd_resonant_saddle(const PlanarVectorField& X) {
  const auto q = small_int(X.fx().coeff(1, 0));
  const auto p = small_int(-X.fy().coeff(0, 1));
  if (!p || !q || *p < 1 || *q < 1 || std::gcd(*p, *q) != 1) return std::nullopt;
  const int N = X.order();
  for (int m = 1; 1 + (*p + *q) * m <= N; ++m) {
    const Coefficient c = X.fy().coeff(*p * m, *q * m + 1);
    if (c.is_zero()) continue;
    return confirm(X, [&] {
      return NamedForm::pd_resonant_saddle(*p, *q, m, -X.fy().coeff(*p * 2 * m, *q * 2 * m + 1));
    });
  }
  return std::nullopt;
}

std::optional<NamedForm> as_pd_node(const PlanarVectorField& X) {
  const Coefficient lambda = X.fy().coeff(0, 1);
  if (lambda.is_zero()) return std::nullopt;
  const auto k = small_int(X.fx().coeff(1, 0) / lambda);
  if (!k || *k < 1 || *k > X.order()) return std::nullopt;
  if (X.fx().coeff(0, *k) != lambda) return std::nullopt;
  return confirm(X, [&] { return NamedForm::pd_node(lambda, *k); });
}

std::optional<NamedForm> as_pd_focus(const PlanarVectorField& X) {
  const Coefficient b = X.fy().coeff(1, 0);
  if (b.is_zero()) return std::nullopt;
  return confirm(X, [&] { return NamedForm::pd_focus(X.fx().coeff(1, 0), b); });
}

std::optional<NamedForm> as_pd_linear(const PlanarVectorField& X) {
  return confirm(X, [&] { return NamedForm::pd_linear(X.fx().coeff(1, 0), X.fy().coeff(0, 1)); });
}

/// Exponent e with B_coefficient = c^e * A_coefficient under y -> c y.
int homothety_weight(int component, int j) { return component == 0 ? -j : 1 - j; }

}  // namespace

std::string to_string(NamedKind k) {
  switch (k) {
    case NamedKind::Ecalle1: return "Ecalle1";
    case NamedKind::Ecalle2: return "Ecalle2";
    case NamedKind::Saddle: return "Saddle";
    case NamedKind::Brjuno: return "Brjuno";
    case NamedKind::FormalModel: return "FormalModel";
    case NamedKind::PDNode: return "PDNode";
    case NamedKind::PDLinear: return "PDLinear";
    case NamedKind::PDResonantSaddle: return "PDResonantSaddle";
    case NamedKind::PDSaddleNode: return "PDSaddleNode";
    case NamedKind::PDFocus: return "PDFocus";
  }
  return "?";
}

NamedForm NamedForm::ecalle1(Series1 f) {
  NamedForm r;
  r.kind = NamedKind::Ecalle1;
  r.mu = f.coeff(1);
  r.f = std::move(f);
  return r;
}

NamedForm NamedForm::ecalle2(Series1 f) {
  require(f[0].is_zero(), "Ecalle2 requires f(0) = 0");
  NamedForm r = ecalle1(std::move(f));
  r.kind = NamedKind::Ecalle2;
  return r;
}

NamedForm NamedForm::saddle(Series1 f, Coefficient mu) {
  require(f[0].is_one(), "Saddle requires f(0) = 1");
  require(!mu.is_zero(), "Saddle requires mu != 0");
  NamedForm r;
  r.kind = NamedKind::Saddle;
  r.f = std::move(f);
  r.mu = std::move(mu);
  return r;
}

NamedForm NamedForm::brjuno(Series1 f, int n) {
  require(n >= 0, "Brjuno requires n >= 0");
  const Coefficient& mu = f[0];
  require(!mu.is_real() || sgn(mu.re() + n) > 0, "Brjuno requires mu + n > 0");
  NamedForm r;
  r.kind = NamedKind::Brjuno;
  r.mu = mu;
  r.f = std::move(f);
  r.n = n;
  return r;
}

NamedForm NamedForm::formal_model(int k, Coefficient mu) {
  require(k >= 1, "FormalModel requires k >= 1");
  NamedForm r;
  r.kind = NamedKind::FormalModel;
  r.k = k;
  r.mu = std::move(mu);
  return r;
}

NamedForm NamedForm::pd_node(Coefficient lambda, int k) {
  require(!lambda.is_zero(), "PDNode requires lambda != 0");
  require(k >= 1, "PDNode requires k >= 1");
  NamedForm r;
  r.kind = NamedKind::PDNode;
  r.lambda1 = std::move(lambda);
  r.k = k;
  return r;
}

NamedForm NamedForm::pd_linear(Coefficient lambda1, Coefficient lambda2) {
  require(!lambda1.is_zero() || !lambda2.is_zero(), "PDLinear requires a nonzero eigenvalue");
  NamedForm r;
  r.kind = NamedKind::PDLinear;
  r.lambda1 = std::move(lambda1);
  r.lambda2 = std::move(lambda2);
  return r;
}

NamedForm NamedForm::pd_resonant_saddle(int p, int q, int k, Coefficient mu) {
  require(p >= 1 && q >= 1 && std::gcd(p, q) == 1, "PDResonantSaddle requires coprime p, q >= 1");
  require(k >= 1, "PDResonantSaddle requires k >= 1");
  NamedForm r;
  r.kind = NamedKind::PDResonantSaddle;
  r.p = p;
  r.q = q;
  r.k = k;
  r.mu = std::move(mu);
  return r;
}

NamedForm NamedForm::pd_saddle_node(int k, Coefficient mu) {
  require(k >= 1, "PDSaddleNode requires k >= 1");
  NamedForm r;
  r.kind = NamedKind::PDSaddleNode;
  r.k = k;
  r.mu = std::move(mu);
  return r;
}

NamedForm NamedForm::pd_focus(Coefficient a, Coefficient b) {
  require(a.is_real() && b.is_real(), "PDFocus requires real a, b");
  require(!b.is_zero(), "PDFocus requires b != 0");
  NamedForm r;
  r.kind = NamedKind::PDFocus;
  r.lambda1 = std::move(a);
  r.lambda2 = std::move(b);
  return r;
}

int NamedForm::natural_order() const {
  switch (kind) {
    case NamedKind::Ecalle1:
    case NamedKind::Ecalle2:
    case NamedKind::Saddle: return std::max(2, f.order() + 1);
    case NamedKind::Brjuno: return 2 + (n + 1) * f.order();
    case NamedKind::FormalModel: return k + 1;
    case NamedKind::PDNode: return std::max(k, 1);
    case NamedKind::PDLinear:
    case NamedKind::PDFocus: return 1;
    case NamedKind::PDResonantSaddle: return 1 + 2 * k * (p + q);
    case NamedKind::PDSaddleNode: return 2 * k + 1;
  }
  return 1;
}

std::string NamedForm::to_string() const {
  const std::string name = folia::to_string(kind);
  switch (kind) {
    case NamedKind::Ecalle1:
    case NamedKind::Ecalle2: return name + "(f = " + f.to_string('y') + ")";
    case NamedKind::Saddle: return name + "(f = " + f.to_string('y') + ", mu = " + mu.to_string() + ")";
    case NamedKind::Brjuno:
      return name + "(f = " + f.to_string('t') + ", n = " + std::to_string(n) + ")";
    case NamedKind::FormalModel:
    case NamedKind::PDSaddleNode: return name + "(k = " + std::to_string(k) + ", mu = " + mu.to_string() + ")";
    case NamedKind::PDNode:
      return name + "(lambda = " + lambda1.to_string() + ", k = " + std::to_string(k) + ")";
    case NamedKind::PDLinear:
      return name + "(lambda1 = " + lambda1.to_string() + ", lambda2 = " + lambda2.to_string() + ")";
    case NamedKind::PDResonantSaddle:
      return name + "(p = " + std::to_string(p) + ", q = " + std::to_string(q) + ", k = " + std::to_string(k) +
             ", mu = " + mu.to_string() + ")";
    case NamedKind::PDFocus: return name + "(a = " + lambda1.to_string() + ", b = " + lambda2.to_string() + ")";
  }
  return name;
}

bool operator==(const NamedForm& a, const NamedForm& b) {
  return a.kind == b.kind && same_series(a.f, b.f) && a.mu == b.mu && a.lambda1 == b.lambda1 &&
         a.lambda2 == b.lambda2 && a.k == b.k && a.n == b.n && a.p == b.p && a.q == b.q;
}

PlanarVectorField make_named(const NamedForm& form) { return make_named(form, form.natural_order()); }

PlanarVectorField make_named(const NamedForm& form, int order) {
  Series2 fx(order), fy(order);
  switch (form.kind) {
    case NamedKind::Ecalle1:
    case NamedKind::Ecalle2:
      add_term(fx, 2, 0, 1);
      add_term(fy, 0, 1, 1);
      for (int j = 0; j <= form.f.order(); ++j) add_term(fy, 1, j, form.f[j]);
      break;
    case NamedKind::Saddle:
      add_term(fx, 1, 0, -1);
      add_term(fy, 1, 1, form.mu);
      for (int j = 0; j <= form.f.order(); ++j) add_term(fy, 0, j + 1, form.mu * form.f[j]);
      break;
    case NamedKind::Brjuno:
      add_term(fx, 2, 0, 1);
      add_term(fy, 0, 1, 1);
      for (int m = 0; m <= form.f.order(); ++m) add_term(fy, 1 + form.n * m, 1 + m, form.f[m]);
      break;
    case NamedKind::FormalModel:
      add_term(fx, form.k + 1, 0, 1);
      add_term(fy, 0, 1, 1);
      add_term(fy, form.k, 1, form.mu);
      break;
    case NamedKind::PDNode:
      add_term(fx, 1, 0, form.lambda1 * Coefficient(form.k));
      add_term(fx, 0, form.k, form.lambda1);
      add_term(fy, 0, 1, form.lambda1);
      break;
    case NamedKind::PDLinear:
      add_term(fx, 1, 0, form.lambda1);
      add_term(fy, 0, 1, form.lambda2);
      break;
    case NamedKind::PDResonantSaddle: {
      const int p = form.p, q = form.q, k = form.k;
      add_term(fx, 1, 0, form.q);
      add_term(fy, 0, 1, -p);
      add_term(fy, p * k, q * k + 1, -1);
      add_term(fy, 2 * p * k, 2 * q * k + 1, -form.mu);
      break;
    }
    case NamedKind::PDSaddleNode:
      add_term(fx, 1, 0, 1);
      add_term(fy, 0, form.k + 1, 1);
      add_term(fy, 0, 2 * form.k + 1, form.mu);
      break;
    case NamedKind::PDFocus:
      add_term(fx, 1, 0, form.lambda1);
      add_term(fx, 0, 1, -form.lambda2);
      add_term(fy, 1, 0, form.lambda2);
      add_term(fy, 0, 1, form.lambda1);
      break;
  }
  return {std::move(fx), std::move(fy)};
}

std::optional<NamedForm> recognize(const PlanarVectorField& X) {
  if (!X.singular_at_origin()) return std::nullopt;
  using Recognizer = std::optional<NamedForm> (*)(const PlanarVectorField&);
  static constexpr Recognizer order[] = {
      as_formal_model, as_ecalle, as_brjuno, as_saddle, as_pd_saddle_node,
      as_pd_resonant_saddle, as_pd_node, as_pd_focus, as_pd_linear,
  };
  for (Recognizer r : order)
    if (auto form = r(X)) return form;
  return std::nullopt;
}

std::optional<Coefficient> homothety_orbit_equal(const NamedForm& A, const NamedForm& B) {
  if (A.kind != B.kind) return std::nullopt;
  const int order = std::max(A.natural_order(), B.natural_order());
  const PlanarVectorField fa = make_named(A, order), fb = make_named(B, order);
  const Series2* ca[2] = {&fa.fx(), &fa.fy()};
  const Series2* cb[2] = {&fb.fx(), &fb.fy()};

  struct Ratio {
    int weight;
    Coefficient value;
  };
  std::vector<Ratio> ratios;
  for (int comp = 0; comp < 2; ++comp) {
    for (int d = 0; d <= order; ++d)
      for (int j = 0; j <= d; ++j) {
        const Coefficient& a = ca[comp]->at(d - j, j);
        const Coefficient& b = cb[comp]->at(d - j, j);
        if (a.is_zero() != b.is_zero()) return std::nullopt;
        if (a.is_zero()) continue;
        const int w = homothety_weight(comp, j);
        if (w == 0) {
          if (a != b) return std::nullopt;
        } else {
          ratios.push_back({w, b / a});
        }
      }
  }
  if (ratios.empty()) return Coefficient(1);
  // c^w = value for every recorded monomial; candidates come from the first one.
  const Ratio& first = ratios.front();
  const Coefficient target = first.weight > 0 ? first.value : Coefficient(1) / first.value;
  for (const Coefficient& c : exact_roots(target, static_cast<unsigned>(std::abs(first.weight)))) {
    const bool all = std::all_of(ratios.begin(), ratios.end(),
                                 [&](const Ratio& r) { return pow(c, r.weight) == r.value; });
    if (all) return c;
  }
  return std::nullopt;
}

}  // namespace folia
