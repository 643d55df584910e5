#pragma once

// Independent reference implementations for the unit and acceptance tests.
// They work on sparse maps and naive loops so that they share no code paths
// with the dense kernels under test.

#include <map>
#include <random>
#include <utility>

#include "folia/series.hpp"
#include "folia/vfield.hpp"

namespace oracle {

using folia::Coefficient;
using folia::Rational;
using folia::Series1;
using folia::Series2;

using Poly = std::map<std::pair<int, int>, Coefficient>;

inline Poly to_poly(const Series2& s) {
  Poly p;
  s.for_each_nonzero([&](int i, int j, const Coefficient& c) { p[{i, j}] = c; });
  return p;
}

inline Series2 to_series(const Poly& p, int order) {
  Series2 s(order);
  for (const auto& [e, c] : p)
    if (e.first + e.second <= order && !c.is_zero()) s.add_to(e.first, e.second, c);
  return s;
}

inline Poly add(const Poly& a, const Poly& b, const Coefficient& scale = Coefficient(1)) {
  Poly r = a;
  for (const auto& [e, c] : b) r[e] += scale * c;
  return r;
}

inline Poly mul(const Poly& a, const Poly& b, int order) {
  Poly r;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      const int i = ea.first + eb.first, j = ea.second + eb.second;
      if (i + j <= order) r[{i, j}] += ca * cb;
    }
  return r;
}

inline Poly one() { return Poly{{{0, 0}, Coefficient(1)}}; }

inline Poly power(const Poly& a, int n, int order) {
  Poly r = one();
  for (int k = 0; k < n; ++k) r = mul(r, a, order);
  return r;
}

/// Term-by-term substitution f(u, v).
inline Poly substitute(const Poly& f, const Poly& u, const Poly& v, int order) {
  Poly r;
  for (const auto& [e, c] : f) {
    Poly t = mul(power(u, e.first, order), power(v, e.second, order), order);
    r = add(r, t, c);
  }
  return r;
}

/// 1/b by the geometric series in (1 - b/b0).
inline Poly reciprocal(const Poly& b, int order) {
  const Coefficient b0 = b.at({0, 0});
  Poly q;  // 1 - b/b0
  for (const auto& [e, c] : b)
    if (e != std::pair{0, 0}) q[e] = -(c / b0);
  Poly sum = one(), term = one();
  for (int k = 1; k <= order; ++k) {
    term = mul(term, q, order);
    sum = add(sum, term);
  }
  for (auto& [e, c] : sum) c = c / b0;
  return sum;
}

inline Poly partial(const Poly& f, bool in_x) {
  Poly r;
  for (const auto& [e, c] : f) {
    const int k = in_x ? e.first : e.second;
    if (k == 0) continue;
    r[in_x ? std::pair{e.first - 1, e.second} : std::pair{e.first, e.second - 1}] += c * Coefficient(k);
  }
  return r;
}

/// D(phi)^{-1} . (X o phi) expanded with Cramer's rule on sparse maps.
inline folia::PlanarVectorField pullback(const folia::PlanarVectorField& X, const Series2& u, const Series2& v) {
  const int n = X.order();
  const Poly pu = to_poly(u), pv = to_poly(v);
  const Poly F = substitute(to_poly(X.fx()), pu, pv, n);
  const Poly G = substitute(to_poly(X.fy()), pu, pv, n);
  const Poly ux = partial(pu, true), uy = partial(pu, false), vx = partial(pv, true), vy = partial(pv, false);
  const Poly det = add(mul(ux, vy, n), mul(uy, vx, n), Coefficient(-1));
  const Poly inv = reciprocal(det, n);
  const Poly a = mul(add(mul(vy, F, n), mul(uy, G, n), Coefficient(-1)), inv, n);
  const Poly b = mul(add(mul(ux, G, n), mul(vx, F, n), Coefficient(-1)), inv, n);
  return {to_series(a, n), to_series(b, n)};
}

// ---- random generation -----------------------------------------------------

struct Rng {
  std::mt19937_64 engine;
  explicit Rng(std::uint64_t seed) : engine(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(engine); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(engine); }

  Rational rational(long num_bound = 5, long den_bound = 4) {
    Rational r(integer(-num_bound, num_bound), integer(1, den_bound));
    r.canonicalize();
    return r;
  }
  Rational nonzero_rational(long num_bound = 5, long den_bound = 4) {
    for (;;) {
      Rational r = rational(num_bound, den_bound);
      if (sgn(r) != 0) return r;
    }
  }
  Coefficient coefficient(bool complex = false) {
    return complex ? Coefficient(rational(), rational()) : Coefficient(rational());
  }

  /// Random series with terms in degrees [lo, hi], each present with probability p.
  Series2 series2(int order, int lo, int hi, double p = 0.5, bool complex = false) {
    Series2 s(order);
    for (int d = lo; d <= std::min(hi, order); ++d)
      for (int j = 0; j <= d; ++j)
        if (coin(p)) s.set(d - j, j, coefficient(complex));
    return s;
  }
  Series1 series1(int order, int lo, int hi, double p = 0.7) {
    Series1 s(order);
    for (int d = lo; d <= std::min(hi, order); ++d)
      if (coin(p)) s.set(d, coefficient());
    return s;
  }

  /// Tangent-to-identity change whose nonlinear part has degree in [2, max_degree].
  folia::CoordinateChange tangent_change(int order, int max_degree, double p = 0.4) {
    return {Series2::x(order) + series2(order, 2, max_degree, p), Series2::y(order) + series2(order, 2, max_degree, p)};
  }
  /// Change with a random invertible linear part.
  folia::CoordinateChange general_change(int order, int max_degree, double p = 0.4) {
    for (;;) {
      folia::LinearPart m{rational(3, 2), rational(3, 2), rational(3, 2), rational(3, 2)};
      if (m.det().is_zero()) continue;
      folia::CoordinateChange lin = folia::CoordinateChange::linear(m, order);
      return {lin.u() + series2(order, 2, max_degree, p), lin.v() + series2(order, 2, max_degree, p)};
    }
  }
};

}  // namespace oracle
