#pragma once

#include <optional>
#include <string>

#include "folia/vfield.hpp"

namespace folia {

enum class NamedKind {
  Ecalle1,           ///< x^2 dx + y dy + x f(y) dy
  Ecalle2,           ///< same shape with f(0) = 0
  Saddle,            ///< -x dx + mu (f(y) + x) y dy, f(0) = 1
  Brjuno,            ///< x^2 dx + y dy + x y f(x^n y) dy, f(0) = mu
  FormalModel,       ///< x^{k+1} dx + y dy + mu x^k y dy
  PDNode,            ///< lambda (k x + y^k) dx + lambda y dy
  PDLinear,          ///< lambda1 x dx + lambda2 y dy
  PDResonantSaddle,  ///< q x dx - (p + u^k + mu u^{2k}) y dy, u = x^p y^q
  PDSaddleNode,      ///< x dx + (y^k + mu y^{2k}) y dy
  PDFocus,           ///< (a x - b y) dx + (b x + a y) dy
};
std::string to_string(NamedKind k);

/// A named shape with its parameters. Only the fields used by `kind` are
/// meaningful; build values through the factory functions, which check the
/// defining constraints.
struct NamedForm {
  NamedKind kind = NamedKind::PDLinear;
  Series1 f;
  Coefficient mu;
  Coefficient lambda1;  ///< PDNode: lambda; PDFocus: a
  Coefficient lambda2;  ///< PDFocus: b
  int k = 0;
  int n = 0;
  int p = 0;
  int q = 0;

  static NamedForm ecalle1(Series1 f);
  static NamedForm ecalle2(Series1 f);
  static NamedForm saddle(Series1 f, Coefficient mu);
  static NamedForm brjuno(Series1 f, int n);
  static NamedForm formal_model(int k, Coefficient mu);
  static NamedForm pd_node(Coefficient lambda, int k);
  static NamedForm pd_linear(Coefficient lambda1, Coefficient lambda2);
  static NamedForm pd_resonant_saddle(int p, int q, int k, Coefficient mu);
  static NamedForm pd_saddle_node(int k, Coefficient mu);
  static NamedForm pd_focus(Coefficient a, Coefficient b);

  /// Smallest truncation order carrying every parameter of the form.
  int natural_order() const;
  std::string to_string() const;

  friend bool operator==(const NamedForm& a, const NamedForm& b);
};

/// The field of the form, truncated at `order`; terms of f beyond the
/// truncation are dropped.
PlanarVectorField make_named(const NamedForm& form, int order);
/// Same, at the form's natural order.
PlanarVectorField make_named(const NamedForm& form);

/// Exact coefficientwise match against the named shapes, tried in the order
/// FormalModel, Ecalle2, Brjuno, Ecalle1, Saddle, then the Poincare-Dulac
/// models.
std::optional<NamedForm> recognize(const PlanarVectorField& X);

/// c such that the change y -> c y carries the field of A to the field of B,
/// when A and B share a variant and such c exists.
std::optional<Coefficient> homothety_orbit_equal(const NamedForm& A, const NamedForm& B);

}  // namespace folia
