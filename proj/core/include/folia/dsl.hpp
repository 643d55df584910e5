#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "folia/vfield.hpp"

namespace folia {

/// Grammar (version "folia-field/1"):
///
///   field   := fterm (('+' | '-') fterm)*
///   fterm   := [term '*'] ('dx' | 'dy')
///   expr    := term (('+' | '-') term)*
///   term    := factor (('*' | '/') factor)*
///   factor  := '-' factor | power
///   power   := atom ['^' natural]
///   atom    := number | 'x' | 'y' | 'i' | name | '(' expr ')'
///   number  := digits ['.' digits]
///
/// Names other than x, y, i, dx, dy are bindings resolved at evaluation.
/// Division is only by expressions with nonzero constant term.
inline constexpr const char* kGrammarVersion = "folia-field/1";

struct Expr {
  enum class Kind { Number, X, Y, I, Name, Add, Sub, Mul, Div, Neg, Pow };
  Kind kind = Kind::Number;
  std::string text;  ///< Number literal or Name
  int exponent = 0;  ///< Pow
  std::shared_ptr<const Expr> lhs, rhs;
  std::size_t position = 0;

  friend bool operator==(const Expr& a, const Expr& b);
};

struct FieldTerm {
  bool negated = false;  ///< joined by '-' to the previous term
  std::shared_ptr<const Expr> coeff;  ///< null for a bare marker
  bool dy = false;

  friend bool operator==(const FieldTerm& a, const FieldTerm& b);
};

struct FieldExpression {
  std::vector<FieldTerm> terms;

  friend bool operator==(const FieldExpression& a, const FieldExpression& b) { return a.terms == b.terms; }
};

using Bindings = std::map<std::string, Coefficient>;

FieldExpression parse_field_expression(const std::string& text);
std::shared_ptr<const Expr> parse_expression(const std::string& text);

std::string print(const Expr& e);
std::string print(const FieldExpression& f);

Series2 evaluate(const Expr& e, const Bindings& bindings, int order);
PlanarVectorField evaluate(const FieldExpression& f, const Bindings& bindings, int order);

/// parse_field_expression then evaluate.
PlanarVectorField parse_field(const std::string& text, const Bindings& bindings, int order);
/// A constant such as "1/3", "-2.5" or "1/2 + 3/4*i".
Coefficient parse_scalar(const std::string& text, const Bindings& bindings = {});

}  // namespace folia
