#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "folia/coefficient.hpp"

namespace folia {

enum class Var { X, Y };

/// Truncated power series in one variable, exact coefficients of degree
/// 0..order. Binary operations require equal truncation orders; use
/// truncated()/extended() to change the order explicitly.
class Series1 {
 public:
  Series1() : Series1(0) {}
  explicit Series1(int order);
  /// Coefficients beyond `order` must be absent; missing ones are zero.
  Series1(int order, std::vector<Coefficient> coeffs);

  static Series1 constant(const Coefficient& c, int order);
  static Series1 variable(int order);
  static Series1 monomial(int degree, const Coefficient& c, int order);

  int order() const { return order_; }
  const Coefficient& operator[](int k) const { return coeffs_[static_cast<std::size_t>(k)]; }
  /// Zero when k is beyond the truncation.
  Coefficient coeff(int k) const;
  void set(int k, Coefficient c);
  std::span<const Coefficient> coefficients() const { return coeffs_; }

  bool is_zero() const;
  /// Lowest degree with a nonzero coefficient.
  std::optional<int> valuation() const;

  Series1 truncated(int order) const;
  Series1 extended(int order) const;

  Series1& operator+=(const Series1& o);
  Series1& operator-=(const Series1& o);
  Series1& operator*=(const Coefficient& c);
  friend Series1 operator+(Series1 a, const Series1& b) { return a += b; }
  friend Series1 operator-(Series1 a, const Series1& b) { return a -= b; }
  friend Series1 operator*(Series1 a, const Coefficient& c) { return a *= c; }
  friend Series1 operator*(const Coefficient& c, Series1 a) { return a *= c; }
  friend Series1 operator*(const Series1& a, const Series1& b);
  Series1 operator-() const;

  friend bool operator==(const Series1& a, const Series1& b);

  /// Value of the stored polynomial at `x`.
  Coefficient evaluate(const Coefficient& x) const;

  std::string to_string(char var = 'y') const;

 private:
  int order_;
  std::vector<Coefficient> coeffs_;
};

/// Truncated bivariate power series: coefficients of x^i y^j with
/// i + j <= order in dense triangular storage.
class Series2 {
 public:
  Series2() : Series2(0) {}
  explicit Series2(int order);

  static Series2 constant(const Coefficient& c, int order);
  static Series2 x(int order);
  static Series2 y(int order);
  static Series2 monomial(int i, int j, const Coefficient& c, int order);
  /// Embeds a univariate series as a function of `v` alone.
  static Series2 from_univariate(const Series1& s, Var v);

  int order() const { return order_; }
  const Coefficient& at(int i, int j) const { return coeffs_[index(i, j)]; }
  /// Zero when (i, j) is beyond the truncation.
  Coefficient coeff(int i, int j) const;
  void set(int i, int j, Coefficient c);
  void add_to(int i, int j, const Coefficient& c);

  bool is_zero() const;
  const Coefficient& constant_term() const { return coeffs_[0]; }
  /// Lowest total degree carrying a nonzero coefficient.
  std::optional<int> valuation() const;
  /// Lowest power of v dividing every stored term.
  std::optional<int> valuation_in(Var v) const;
  /// Highest power of x (resp. y) among nonzero terms; -1 for zero.
  int degree_in(Var v) const;
  Series2 homogeneous_part(int degree) const;

  Series2 truncated(int order) const;
  Series2 extended(int order) const;

  Series2& operator+=(const Series2& o);
  Series2& operator-=(const Series2& o);
  Series2& operator*=(const Coefficient& c);
  friend Series2 operator+(Series2 a, const Series2& b) { return a += b; }
  friend Series2 operator-(Series2 a, const Series2& b) { return a -= b; }
  friend Series2 operator*(Series2 a, const Coefficient& c) { return a *= c; }
  friend Series2 operator*(const Coefficient& c, Series2 a) { return a *= c; }
  friend Series2 operator*(const Series2& a, const Series2& b);
  Series2 operator-() const;

  friend bool operator==(const Series2& a, const Series2& b);

  /// f(x, 0) as a series in x, or f(0, y) as a series in y (v names the
  /// variable that is kept).
  Series1 restrict_to_axis(Var kept) const;
  /// Coefficient of v^k as a series in the other variable, of order N - k.
  Series1 slice(Var v, int k) const;

  /// Multiply by x^i y^j, dropping terms beyond the truncation.
  Series2 times_monomial(int i, int j) const;
  /// Exact division by x^i y^j; the result has order N - i - j.
  /// Throws DivisionByNonUnit when a stored term is not divisible.
  Series2 divided_by_monomial(int i, int j) const;

  Coefficient evaluate(const Coefficient& x, const Coefficient& y) const;

  std::string to_string() const;

  template <typename F>
  void for_each_nonzero(F&& f) const {
    for (int d = 0; d <= order_; ++d)
      for (int j = 0; j <= d; ++j) {
        const Coefficient& c = coeffs_[index(d - j, j)];
        if (!c.is_zero()) f(d - j, j, c);
      }
  }

  static constexpr std::size_t index(int i, int j) {
    const auto d = static_cast<std::size_t>(i + j);
    return d * (d + 1) / 2 + static_cast<std::size_t>(j);
  }

 private:
  int order_;
  std::vector<Coefficient> coeffs_;
};

/// y^{-pole_order} * series.
struct LaurentSlice {
  int pole_order = 0;
  Series1 series;
};

// ---- univariate operations -------------------------------------------------

Series1 inverse(const Series1& b);
Series1 divide(const Series1& a, const Series1& b);
/// Formal derivative; the result has order N - 1 (order 0 stays 0).
Series1 derive(const Series1& f);
/// Primitive vanishing at 0; the result has order N + 1.
Series1 integrate1(const Series1& f);
/// f(g) for g(0) = 0.
Series1 compose1(const Series1& f, const Series1& g);
/// Compositional inverse of f with f(0) = 0, f'(0) != 0.
Series1 revert1(const Series1& f);
/// exp(f) for f(0) = 0.
Series1 exp1(const Series1& f);
/// log(f) for f(0) = 1.
Series1 log1(const Series1& f);
/// f^(1/q) for f(0) = 1, principal branch (constant term 1).
Series1 root1(const Series1& f, int q);
Series1 pow1(const Series1& f, long n);
/// f / y^k for series divisible by y^k; order drops by k.
Series1 shift_down(const Series1& f, int k);

Coefficient residue(const LaurentSlice& l);

// ---- bivariate operations --------------------------------------------------

Series2 inverse(const Series2& b);
Series2 divide(const Series2& a, const Series2& b);
/// Formal partial derivative; order N - 1.
Series2 derive(const Series2& f, Var v);
/// Primitive in v vanishing on {v = 0}; order N + 1.
Series2 integrate(const Series2& f, Var v);
Series2 pow(const Series2& f, long n);
/// f(u, v) modulo truncation; u(0,0) = v(0,0) = 0 is required.
Series2 compose2(const Series2& f, const Series2& u, const Series2& v);
/// Univariate f evaluated at a bivariate g with g(0,0) = 0.
Series2 compose(const Series1& f, const Series2& g);

struct SeriesPair {
  Series2 u;
  Series2 v;
};

/// Compositional inverse of (u, v) modulo truncation.
SeriesPair invert_series_pair(const Series2& u, const Series2& v);

}  // namespace folia
