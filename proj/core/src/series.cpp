#include "folia/series.hpp"

#include <algorithm>
#include <sstream>

#include "folia/error.hpp"

namespace folia {

namespace {

constexpr const char* kModule = "series_core";

void require_same_order(int a, int b) {
  if (a != b) {
    fail(ErrorCode::TruncationMismatch, kModule,
         "orders " + std::to_string(a) + " and " + std::to_string(b) + " differ");
  }
}

std::string coefficient_factor(const Coefficient& c, bool& negative) {
  negative = false;
  if (c.is_real()) {
    Rational r = c.re();
    if (sgn(r) < 0) {
      negative = true;
      r = -r;
    }
    return r.get_str();
  }
  if (sgn(c.re()) == 0) {
    Rational r = c.im();
    if (sgn(r) < 0) {
      negative = true;
      r = -r;
    }
    return r == 1 ? "i" : r.get_str() + "*i";
  }
  return "(" + c.to_string() + ")";
}

std::string monomial_string(const Coefficient& c, const std::string& vars) {
  bool negative = false;
  std::string factor = coefficient_factor(c, negative);
  std::string body;
  if (vars.empty()) {
    body = factor;
  } else if (factor == "1") {
    body = vars;
  } else {
    body = factor + "*" + vars;
  }
  return (negative ? "- " : "+ ") + body;
}

std::string power_string(char var, int e) {
  if (e == 0) return "";
  if (e == 1) return std::string(1, var);
  return std::string(1, var) + "^" + std::to_string(e);
}

std::string join_terms(const std::vector<std::string>& terms) {
  if (terms.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const std::string& t = terms[k];
    if (k == 0) {
      out += t[0] == '-' ? "-" + t.substr(2) : t.substr(2);
    } else {
      out += " " + t;
    }
  }
  return out;
}

}  // namespace

// ---- Series1 -------------------------------------------------------------------

Series1::Series1(int order) : order_(order), coeffs_(static_cast<std::size_t>(order + 1)) {
  if (order < 0) fail(ErrorCode::TruncationMismatch, kModule, "negative truncation order");
}

Series1::Series1(int order, std::vector<Coefficient> coeffs) : Series1(order) {
  if (coeffs.size() > coeffs_.size()) {
    fail(ErrorCode::TruncationMismatch, kModule, "coefficient beyond truncation order");
  }
  std::move(coeffs.begin(), coeffs.end(), coeffs_.begin());
}

Series1 Series1::constant(const Coefficient& c, int order) {
  Series1 s(order);
  s.coeffs_[0] = c;
  return s;
}

Series1 Series1::variable(int order) { return monomial(1, Coefficient(1), order); }

Series1 Series1::monomial(int degree, const Coefficient& c, int order) {
  Series1 s(order);
  if (degree <= order) s.coeffs_[static_cast<std::size_t>(degree)] = c;
  return s;
}

Coefficient Series1::coeff(int k) const {
  if (k < 0 || k > order_) return {};
  return coeffs_[static_cast<std::size_t>(k)];
}

void Series1::set(int k, Coefficient c) {
  if (k < 0 || k > order_) fail(ErrorCode::TruncationMismatch, kModule, "index beyond truncation");
  coeffs_[static_cast<std::size_t>(k)] = std::move(c);
}

bool Series1::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const auto& c) { return c.is_zero(); });
}

std::optional<int> Series1::valuation() const {
  for (int k = 0; k <= order_; ++k)
    if (!coeffs_[static_cast<std::size_t>(k)].is_zero()) return k;
  return std::nullopt;
}

Series1 Series1::truncated(int order) const {
  if (order > order_) fail(ErrorCode::TruncationMismatch, kModule, "truncated() cannot raise the order");
  Series1 s(order);
  std::copy_n(coeffs_.begin(), order + 1, s.coeffs_.begin());
  return s;
}

Series1 Series1::extended(int order) const {
  if (order < order_) return truncated(order);
  Series1 s(order);
  std::copy(coeffs_.begin(), coeffs_.end(), s.coeffs_.begin());
  return s;
}

Series1& Series1::operator+=(const Series1& o) {
  require_same_order(order_, o.order_);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  return *this;
}

Series1& Series1::operator-=(const Series1& o) {
  require_same_order(order_, o.order_);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  return *this;
}

Series1& Series1::operator*=(const Coefficient& c) {
  for (auto& x : coeffs_) x *= c;
  return *this;
}

Series1 operator*(const Series1& a, const Series1& b) {
  require_same_order(a.order_, b.order_);
  Series1 r(a.order_);
  for (int i = 0; i <= a.order_; ++i) {
    const Coefficient& ai = a.coeffs_[static_cast<std::size_t>(i)];
    if (ai.is_zero()) continue;
    for (int j = 0; i + j <= a.order_; ++j) {
      const Coefficient& bj = b.coeffs_[static_cast<std::size_t>(j)];
      if (bj.is_zero()) continue;
      r.coeffs_[static_cast<std::size_t>(i + j)] += ai * bj;
    }
  }
  return r;
}

Series1 Series1::operator-() const {
  Series1 r(*this);
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

bool operator==(const Series1& a, const Series1& b) {
  return a.order_ == b.order_ && a.coeffs_ == b.coeffs_;
}

Coefficient Series1::evaluate(const Coefficient& x) const {
  Coefficient r;
  for (int k = order_; k >= 0; --k) r = r * x + coeffs_[static_cast<std::size_t>(k)];
  return r;
}

std::string Series1::to_string(char var) const {
  std::vector<std::string> terms;
  for (int k = 0; k <= order_; ++k) {
    const Coefficient& c = coeffs_[static_cast<std::size_t>(k)];
    if (!c.is_zero()) terms.push_back(monomial_string(c, power_string(var, k)));
  }
  return join_terms(terms);
}

// ---- univariate operations ------------------------------------------------------

Series1 inverse(const Series1& b) {
  if (b[0].is_zero()) fail(ErrorCode::DivisionByNonUnit, kModule, "divisor has zero constant term");
  const int n = b.order();
  Series1 c(n);
  Coefficient inv0 = Coefficient(1) / b[0];
  c.set(0, inv0);
  for (int k = 1; k <= n; ++k) {
    Coefficient acc;
    for (int j = 1; j <= k; ++j) {
      if (!b[j].is_zero()) acc += b[j] * c[k - j];
    }
    c.set(k, -(acc * inv0));
  }
  return c;
}

Series1 divide(const Series1& a, const Series1& b) {
  require_same_order(a.order(), b.order());
  return a * inverse(b);
}

Series1 derive(const Series1& f) {
  const int n = std::max(f.order() - 1, 0);
  Series1 r(n);
  for (int k = 1; k <= f.order(); ++k) r.set(k - 1, f[k] * Coefficient(k));
  return r;
}

Series1 integrate1(const Series1& f) {
  Series1 r(f.order() + 1);
  for (int k = 0; k <= f.order(); ++k) r.set(k + 1, f[k] / Coefficient(k + 1));
  return r;
}

Series1 compose1(const Series1& f, const Series1& g) {
  require_same_order(f.order(), g.order());
  if (!g[0].is_zero()) fail(ErrorCode::NonVanishingShift, kModule, "inner series has nonzero constant term");
  const int n = f.order();
  Series1 r = Series1::constant(f[n], n);
  for (int k = n - 1; k >= 0; --k) {
    r = r * g;
    r.set(0, r[0] + f[k]);
  }
  return r;
}

Series1 revert1(const Series1& f) {
  if (!f[0].is_zero()) fail(ErrorCode::NonVanishingShift, kModule, "series to revert has nonzero constant term");
  if (f.order() < 1 || f[1].is_zero()) {
    fail(ErrorCode::SingularLinearPart, kModule, "series to revert has zero linear coefficient");
  }
  const int n = f.order();
  Series1 nonlinear = f;
  nonlinear.set(1, Coefficient(0));
  const Coefficient inv1 = Coefficient(1) / f[1];
  Series1 id = Series1::variable(n);
  Series1 h = id * inv1;
  for (int it = 1; it < n; ++it) h = (id - compose1(nonlinear, h)) * inv1;
  return h;
}

Series1 exp1(const Series1& f) {
  if (!f[0].is_zero()) {
    fail(ErrorCode::ConstraintViolated, kModule, "exp of a series with nonzero constant term is not exact");
  }
  const int n = f.order();
  Series1 e(n);
  e.set(0, Coefficient(1));
  for (int k = 1; k <= n; ++k) {
    Coefficient acc;
    for (int j = 1; j <= k; ++j) {
      if (!f[j].is_zero()) acc += Coefficient(j) * f[j] * e[k - j];
    }
    e.set(k, acc / Coefficient(k));
  }
  return e;
}

Series1 log1(const Series1& f) {
  if (!f[0].is_one()) fail(ErrorCode::ConstraintViolated, kModule, "log needs constant term 1");
  if (f.order() == 0) return Series1(0);
  return integrate1(divide(derive(f), f.truncated(f.order() - 1)));
}

Series1 root1(const Series1& f, int q) {
  if (q <= 0) fail(ErrorCode::ConstraintViolated, kModule, "root index must be positive");
  Series1 l = log1(f);
  l *= Coefficient(Rational(1, q));
  return exp1(l);
}

Series1 pow1(const Series1& f, long n) {
  if (n < 0) return pow1(inverse(f), -n);
  Series1 result = Series1::constant(Coefficient(1), f.order());
  Series1 b = f;
  while (n > 0) {
    if (n & 1) result = result * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return result;
}

Series1 shift_down(const Series1& f, int k) {
  if (k > f.order()) fail(ErrorCode::TruncationTooShallow, kModule, "shift beyond truncation");
  for (int j = 0; j < k; ++j)
    if (!f[j].is_zero()) fail(ErrorCode::DivisionByNonUnit, kModule, "series not divisible by y^k");
  Series1 r(f.order() - k);
  for (int j = k; j <= f.order(); ++j) r.set(j - k, f[j]);
  return r;
}

Coefficient residue(const LaurentSlice& l) {
  if (l.pole_order <= 0) return {};
  const int idx = l.pole_order - 1;
  if (idx > l.series.order()) {
    fail(ErrorCode::TruncationTooShallow, kModule, "residue needs a deeper truncation");
  }
  return l.series[idx];
}

// ---- Series2 -------------------------------------------------------------------

Series2::Series2(int order) : order_(order) {
  if (order < 0) fail(ErrorCode::TruncationMismatch, kModule, "negative truncation order");
  coeffs_.resize(index(0, order) + 1);
}

Series2 Series2::constant(const Coefficient& c, int order) {
  Series2 s(order);
  s.coeffs_[0] = c;
  return s;
}

Series2 Series2::x(int order) { return monomial(1, 0, Coefficient(1), order); }
Series2 Series2::y(int order) { return monomial(0, 1, Coefficient(1), order); }

Series2 Series2::monomial(int i, int j, const Coefficient& c, int order) {
  Series2 s(order);
  if (i + j <= order) s.coeffs_[index(i, j)] = c;
  return s;
}

Series2 Series2::from_univariate(const Series1& s, Var v) {
  Series2 r(s.order());
  for (int k = 0; k <= s.order(); ++k) {
    if (v == Var::X) {
      r.coeffs_[index(k, 0)] = s[k];
    } else {
      r.coeffs_[index(0, k)] = s[k];
    }
  }
  return r;
}

Coefficient Series2::coeff(int i, int j) const {
  if (i < 0 || j < 0 || i + j > order_) return {};
  return coeffs_[index(i, j)];
}

void Series2::set(int i, int j, Coefficient c) {
  if (i < 0 || j < 0 || i + j > order_) {
    fail(ErrorCode::TruncationMismatch, kModule, "index beyond truncation");
  }
  coeffs_[index(i, j)] = std::move(c);
}

void Series2::add_to(int i, int j, const Coefficient& c) {
  if (i + j > order_) return;
  coeffs_[index(i, j)] += c;
}

bool Series2::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const auto& c) { return c.is_zero(); });
}

std::optional<int> Series2::valuation() const {
  for (int d = 0; d <= order_; ++d)
    for (int j = 0; j <= d; ++j)
      if (!coeffs_[index(d - j, j)].is_zero()) return d;
  return std::nullopt;
}

std::optional<int> Series2::valuation_in(Var v) const {
  std::optional<int> best;
  for_each_nonzero([&](int i, int j, const Coefficient&) {
    int e = v == Var::X ? i : j;
    if (!best || e < *best) best = e;
  });
  return best;
}

int Series2::degree_in(Var v) const {
  int best = -1;
  for_each_nonzero([&](int i, int j, const Coefficient&) { best = std::max(best, v == Var::X ? i : j); });
  return best;
}

Series2 Series2::homogeneous_part(int degree) const {
  Series2 r(order_);
  if (degree > order_) return r;
  for (int j = 0; j <= degree; ++j) r.coeffs_[index(degree - j, j)] = coeffs_[index(degree - j, j)];
  return r;
}

Series2 Series2::truncated(int order) const {
  if (order > order_) fail(ErrorCode::TruncationMismatch, kModule, "truncated() cannot raise the order");
  Series2 r(order);
  std::copy_n(coeffs_.begin(), r.coeffs_.size(), r.coeffs_.begin());
  return r;
}

Series2 Series2::extended(int order) const {
  if (order < order_) return truncated(order);
  Series2 r(order);
  std::copy(coeffs_.begin(), coeffs_.end(), r.coeffs_.begin());
  return r;
}

Series2& Series2::operator+=(const Series2& o) {
  require_same_order(order_, o.order_);
  for (std::size_t k = 0; k < coeffs_.size(); ++k)
    if (!o.coeffs_[k].is_zero()) coeffs_[k] += o.coeffs_[k];
  return *this;
}

Series2& Series2::operator-=(const Series2& o) {
  require_same_order(order_, o.order_);
  for (std::size_t k = 0; k < coeffs_.size(); ++k)
    if (!o.coeffs_[k].is_zero()) coeffs_[k] -= o.coeffs_[k];
  return *this;
}

Series2& Series2::operator*=(const Coefficient& c) {
  for (auto& x : coeffs_)
    if (!x.is_zero()) x *= c;
  return *this;
}

Series2 operator*(const Series2& a, const Series2& b) {
  require_same_order(a.order_, b.order_);
  const int n = a.order_;
  struct Term {
    int i, j;
    const Coefficient* c;
  };
  std::vector<Term> bt;
  b.for_each_nonzero([&](int i, int j, const Coefficient& c) { bt.push_back({i, j, &c}); });
  Series2 r(n);
  a.for_each_nonzero([&](int i, int j, const Coefficient& c) {
    const int room = n - i - j;
    for (const Term& t : bt) {
      if (t.i + t.j > room) break;
      r.coeffs_[Series2::index(i + t.i, j + t.j)] += c * *t.c;
    }
  });
  return r;
}

Series2 Series2::operator-() const {
  Series2 r(*this);
  for (auto& c : r.coeffs_)
    if (!c.is_zero()) c = -c;
  return r;
}

bool operator==(const Series2& a, const Series2& b) {
  return a.order_ == b.order_ && a.coeffs_ == b.coeffs_;
}

Series1 Series2::restrict_to_axis(Var kept) const {
  Series1 r(order_);
  for (int k = 0; k <= order_; ++k) r.set(k, kept == Var::X ? coeffs_[index(k, 0)] : coeffs_[index(0, k)]);
  return r;
}

Series1 Series2::slice(Var v, int k) const {
  if (k > order_) fail(ErrorCode::TruncationTooShallow, kModule, "slice beyond truncation");
  Series1 r(order_ - k);
  for (int m = 0; m <= order_ - k; ++m) r.set(m, v == Var::Y ? coeffs_[index(m, k)] : coeffs_[index(k, m)]);
  return r;
}

Series2 Series2::times_monomial(int i, int j) const {
  Series2 r(order_);
  for_each_nonzero([&](int a, int b, const Coefficient& c) { r.add_to(a + i, b + j, c); });
  return r;
}

Series2 Series2::divided_by_monomial(int i, int j) const {
  if (i + j > order_) fail(ErrorCode::TruncationTooShallow, kModule, "monomial divisor beyond truncation");
  Series2 r(order_ - i - j);
  for_each_nonzero([&](int a, int b, const Coefficient& c) {
    if (a < i || b < j) fail(ErrorCode::DivisionByNonUnit, kModule, "series not divisible by monomial");
    r.set(a - i, b - j, c);
  });
  return r;
}

Coefficient Series2::evaluate(const Coefficient& x, const Coefficient& y) const {
  Coefficient r;
  for (int i = order_; i >= 0; --i) {
    Coefficient inner;
    for (int j = order_ - i; j >= 0; --j) inner = inner * y + coeffs_[index(i, j)];
    r = r * x + inner;
  }
  return r;
}

std::string Series2::to_string() const {
  std::vector<std::string> terms;
  for_each_nonzero([&](int i, int j, const Coefficient& c) {
    std::string vars = power_string('x', i);
    std::string ys = power_string('y', j);
    if (!vars.empty() && !ys.empty()) vars += "*";
    vars += ys;
    terms.push_back(monomial_string(c, vars));
  });
  return join_terms(terms);
}

// ---- bivariate operations ------------------------------------------------------

Series2 inverse(const Series2& b) {
  if (b.constant_term().is_zero()) {
    fail(ErrorCode::DivisionByNonUnit, kModule, "divisor has zero constant term");
  }
  const int n = b.order();
  const Coefficient inv0 = Coefficient(1) / b.constant_term();
  struct Term {
    int i, j;
    const Coefficient* c;
  };
  std::vector<Term> bt;
  b.for_each_nonzero([&](int i, int j, const Coefficient& c) {
    if (i + j > 0) bt.push_back({i, j, &c});
  });
  Series2 c(n);
  c.set(0, 0, inv0);
  for (int d = 1; d <= n; ++d) {
    for (int j = 0; j <= d; ++j) {
      const int i = d - j;
      Coefficient acc;
      for (const Term& t : bt) {
        if (t.i + t.j > d) break;
        if (t.i <= i && t.j <= j) acc += *t.c * c.at(i - t.i, j - t.j);
      }
      if (!acc.is_zero()) c.set(i, j, -(acc * inv0));
    }
  }
  return c;
}

Series2 divide(const Series2& a, const Series2& b) {
  require_same_order(a.order(), b.order());
  return a * inverse(b);
}

Series2 derive(const Series2& f, Var v) {
  const int n = std::max(f.order() - 1, 0);
  Series2 r(n);
  f.for_each_nonzero([&](int i, int j, const Coefficient& c) {
    if (v == Var::X && i > 0 && i + j - 1 <= n) r.set(i - 1, j, c * Coefficient(i));
    if (v == Var::Y && j > 0 && i + j - 1 <= n) r.set(i, j - 1, c * Coefficient(j));
  });
  return r;
}

Series2 integrate(const Series2& f, Var v) {
  Series2 r(f.order() + 1);
  f.for_each_nonzero([&](int i, int j, const Coefficient& c) {
    if (v == Var::X) {
      r.set(i + 1, j, c / Coefficient(i + 1));
    } else {
      r.set(i, j + 1, c / Coefficient(j + 1));
    }
  });
  return r;
}

Series2 pow(const Series2& f, long n) {
  if (n < 0) return pow(inverse(f), -n);
  Series2 result = Series2::constant(Coefficient(1), f.order());
  Series2 b = f;
  while (n > 0) {
    if (n & 1) result = result * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return result;
}

Series2 compose2(const Series2& f, const Series2& u, const Series2& v) {
  require_same_order(f.order(), u.order());
  require_same_order(f.order(), v.order());
  if (!u.constant_term().is_zero() || !v.constant_term().is_zero()) {
    fail(ErrorCode::NonVanishingShift, kModule, "substituted series must vanish at the origin");
  }
  const int n = f.order();
  // Powers of v; they vanish once the exponent exceeds the truncation.
  std::vector<Series2> vpow;
  vpow.push_back(Series2::constant(Coefficient(1), n));
  for (int j = 1; j <= n; ++j) vpow.push_back(vpow.back() * v);

  auto inner = [&](int i) {
    Series2 s(n);
    for (int j = 0; i + j <= n; ++j) {
      const Coefficient& c = f.at(i, j);
      if (!c.is_zero()) s += vpow[static_cast<std::size_t>(j)] * c;
    }
    return s;
  };
  int top = f.degree_in(Var::X);
  if (top < 0) return Series2(n);
  Series2 r = inner(top);
  for (int i = top - 1; i >= 0; --i) r = r * u + inner(i);
  return r;
}

Series2 compose(const Series1& f, const Series2& g) {
  require_same_order(f.order(), g.order());
  if (!g.constant_term().is_zero()) {
    fail(ErrorCode::NonVanishingShift, kModule, "inner series has nonzero constant term");
  }
  const int n = f.order();
  Series2 r = Series2::constant(f[n], n);
  for (int k = n - 1; k >= 0; --k) {
    r = r * g;
    r.add_to(0, 0, f[k]);
  }
  return r;
}

SeriesPair invert_series_pair(const Series2& u, const Series2& v) {
  require_same_order(u.order(), v.order());
  if (!u.constant_term().is_zero() || !v.constant_term().is_zero()) {
    fail(ErrorCode::NonVanishingShift, kModule, "change of coordinates must fix the origin");
  }
  const int n = u.order();
  const Coefficient a = u.coeff(1, 0), b = u.coeff(0, 1), c = v.coeff(1, 0), d = v.coeff(0, 1);
  const Coefficient det = a * d - b * c;
  if (det.is_zero()) fail(ErrorCode::SingularLinearPart, kModule, "linear part is not invertible");
  // A^{-1} = (1/det) [[d, -b], [-c, a]]
  const Coefficient ia = d / det, ib = -b / det, ic = -c / det, id = a / det;

  // Nonlinear remainders of (u, v).
  Series2 hu = u, hv = v;
  for (Series2* h : {&hu, &hv}) {
    h->set(1, 0, Coefficient(0));
    h->set(0, 1, Coefficient(0));
  }
  // Fixed point  psi = A^{-1} ((x, y) - H(psi)); each pass fixes one more
  // degree, so pass m is carried out at truncation m.
  const int start = std::min(n, 1);
  Series2 pu = (Series2::x(start) * ia) + (Series2::y(start) * ib);
  Series2 pv = (Series2::x(start) * ic) + (Series2::y(start) * id);
  for (int m = 2; m <= n; ++m) {
    Series2 qu = pu.extended(m), qv = pv.extended(m);
    Series2 hu_m = compose2(hu.truncated(m), qu, qv);
    Series2 hv_m = compose2(hv.truncated(m), qu, qv);
    Series2 ru = Series2::x(m) - hu_m;
    Series2 rv = Series2::y(m) - hv_m;
    pu = ru * ia + rv * ib;
    pv = ru * ic + rv * id;
  }
  return {pu.extended(n), pv.extended(n)};
}

}  // namespace folia
