#include "folia/dsl.hpp"

#include <cctype>
#include <functional>

#include "folia/error.hpp"

namespace folia {

namespace {

const char* kModule = "cli";

using ExprPtr = std::shared_ptr<const Expr>;

struct Token {
  enum class Kind { Number, Ident, Op, End };
  Kind kind = Kind::End;
  std::string text;
  std::size_t pos = 0;
};

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      ++i;
    } else if (std::isdigit(c)) {
      const std::size_t start = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (i < s.size() && s[i] == '.') {
        ++i;
        if (i == s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
          throw ParseError(i, "expected digits after '.'");
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      }
      out.push_back({Token::Kind::Number, s.substr(start, i - start), start});
    } else if (std::isalpha(c) || c == '_') {
      const std::size_t start = i;
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({Token::Kind::Ident, s.substr(start, i - start), start});
    } else if (std::string_view("+-*/^()").find(static_cast<char>(c)) != std::string_view::npos) {
      out.push_back({Token::Kind::Op, std::string(1, static_cast<char>(c)), i});
      ++i;
    } else {
      throw ParseError(i, std::string("unexpected character '") + static_cast<char>(c) + "'");
    }
  }
  out.push_back({Token::Kind::End, "", s.size()});
  return out;
}

ExprPtr node(Expr::Kind k, std::size_t pos, ExprPtr lhs = nullptr, ExprPtr rhs = nullptr) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->position = pos;
  e->lhs = std::move(lhs);
  e->rhs = std::move(rhs);
  return e;
}

bool is_marker(const Token& t) { return t.kind == Token::Kind::Ident && (t.text == "dx" || t.text == "dy"); }

class Parser {
 public:
  explicit Parser(const std::string& s) : toks_(tokenize(s)) {}

  FieldExpression field() {
    FieldExpression f;
    f.terms.push_back(field_term(false));
    while (peek_op("+") || peek_op("-")) {
      const bool neg = next().text == "-";
      f.terms.push_back(field_term(neg));
    }
    expect_end();
    return f;
  }

  ExprPtr whole_expression() {
    ExprPtr e = expr();
    expect_end();
    return e;
  }

 private:
  std::vector<Token> toks_;
  std::size_t at_ = 0;

  const Token& peek() const { return toks_[at_]; }
  const Token& next() { return toks_[at_++]; }
  bool peek_op(const char* op) const { return peek().kind == Token::Kind::Op && peek().text == op; }

  [[noreturn]] void error(const std::string& what) const { throw ParseError(peek().pos, what); }

  void expect_end() const {
    if (peek().kind != Token::Kind::End) error("unexpected '" + peek().text + "'");
  }

  FieldTerm field_term(bool negated) {
    FieldTerm t;
    t.negated = negated;
    if (is_marker(peek())) {
      t.dy = next().text == "dy";
      return t;
    }
    // term '*' marker: factors until the marker
    ExprPtr e = factor();
    for (;;) {
      if (peek_op("*")) {
        next();
        if (is_marker(peek())) {
          t.dy = next().text == "dy";
          t.coeff = e;
          return t;
        }
        const std::size_t pos = peek().pos;
        e = node(Expr::Kind::Mul, pos, e, factor());
      } else if (peek_op("/")) {
        const std::size_t pos = next().pos;
        e = node(Expr::Kind::Div, pos, e, factor());
      } else {
        error("expected '*dx' or '*dy' after a component coefficient");
      }
    }
  }

  ExprPtr expr() {
    ExprPtr e = term();
    while (peek_op("+") || peek_op("-")) {
      const Token& op = next();
      const auto kind = op.text == "+" ? Expr::Kind::Add : Expr::Kind::Sub;
      e = node(kind, op.pos, e, term());
    }
    return e;
  }

  ExprPtr term() {
    ExprPtr e = factor();
    while (peek_op("*") || peek_op("/")) {
      const Token& op = next();
      if (is_marker(peek())) throw ParseError(peek().pos, "component marker inside an expression");
      const auto kind = op.text == "*" ? Expr::Kind::Mul : Expr::Kind::Div;
      e = node(kind, op.pos, e, factor());
    }
    return e;
  }

  ExprPtr factor() {
    if (peek_op("-")) {
      const std::size_t pos = next().pos;
      return node(Expr::Kind::Neg, pos, factor());
    }
    return power();
  }

  ExprPtr power() {
    ExprPtr base = atom();
    if (!peek_op("^")) return base;
    const std::size_t pos = next().pos;
    const Token& t = peek();
    if (t.kind != Token::Kind::Number || t.text.find('.') != std::string::npos)
      error("exponent must be a natural number");
    next();
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Pow;
    e->position = pos;
    e->lhs = base;
    try {
      e->exponent = std::stoi(t.text);
    } catch (const std::out_of_range&) {
      throw ParseError(t.pos, "exponent too large");
    }
    return e;
  }

  ExprPtr atom() {
    const Token& t = peek();
    if (t.kind == Token::Kind::Number) {
      next();
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Number;
      e->text = t.text;
      e->position = t.pos;
      return e;
    }
    if (t.kind == Token::Kind::Ident) {
      if (is_marker(t)) error("component marker inside an expression");
      next();
      if (t.text == "x") return node(Expr::Kind::X, t.pos);
      if (t.text == "y") return node(Expr::Kind::Y, t.pos);
      if (t.text == "i") return node(Expr::Kind::I, t.pos);
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Name;
      e->text = t.text;
      e->position = t.pos;
      return e;
    }
    if (peek_op("(")) {
      next();
      ExprPtr e = expr();
      if (!peek_op(")")) error("expected ')'");
      next();
      return e;
    }
    error(t.kind == Token::Kind::End ? "unexpected end of input" : "unexpected '" + t.text + "'");
  }
};

int precedence(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div: return 2;
    case Expr::Kind::Neg: return 3;
    case Expr::Kind::Pow: return 4;
    default: return 5;
  }
}

std::string wrap(const Expr& e, bool paren) { return paren ? "(" + print(e) + ")" : print(e); }

Coefficient number_value(const std::string& text) {
  const auto dot = text.find('.');
  if (dot == std::string::npos) return Coefficient(Rational(mpz_class(text, 10)));
  const std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  mpz_class den = 1;
  for (std::size_t k = dot + 1; k < text.size(); ++k) den *= 10;
  Rational r(mpz_class(digits, 10), den);
  r.canonicalize();
  return Coefficient(r);
}

}  // namespace

bool operator==(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.text != b.text || a.exponent != b.exponent) return false;
  auto same = [](const ExprPtr& p, const ExprPtr& q) { return (!p && !q) || (p && q && *p == *q); };
  return same(a.lhs, b.lhs) && same(a.rhs, b.rhs);
}

bool operator==(const FieldTerm& a, const FieldTerm& b) {
  if (a.negated != b.negated || a.dy != b.dy || !a.coeff != !b.coeff) return false;
  return !a.coeff || *a.coeff == *b.coeff;
}

FieldExpression parse_field_expression(const std::string& text) { return Parser(text).field(); }

std::shared_ptr<const Expr> parse_expression(const std::string& text) { return Parser(text).whole_expression(); }

std::string print(const Expr& e) {
  const int p = precedence(e.kind);
  switch (e.kind) {
    case Expr::Kind::Number:
    case Expr::Kind::Name: return e.text;
    case Expr::Kind::X: return "x";
    case Expr::Kind::Y: return "y";
    case Expr::Kind::I: return "i";
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
    case Expr::Kind::Mul:
    case Expr::Kind::Div: {
      const char* op = e.kind == Expr::Kind::Add ? " + " : e.kind == Expr::Kind::Sub ? " - " : e.kind == Expr::Kind::Mul ? "*" : "/";
      // left-associative: the right operand needs parentheses at equal precedence
      return wrap(*e.lhs, precedence(e.lhs->kind) < p) + op + wrap(*e.rhs, precedence(e.rhs->kind) <= p);
    }
    case Expr::Kind::Neg: return "-" + wrap(*e.lhs, precedence(e.lhs->kind) < p);
    case Expr::Kind::Pow: return wrap(*e.lhs, precedence(e.lhs->kind) <= p) + "^" + std::to_string(e.exponent);
  }
  return "";
}

std::string print(const FieldExpression& f) {
  std::string out;
  for (std::size_t k = 0; k < f.terms.size(); ++k) {
    const FieldTerm& t = f.terms[k];
    if (k > 0) out += t.negated ? " - " : " + ";
    if (t.coeff) {
      // the coefficient is a product of factors: sums need parentheses
      out += wrap(*t.coeff, precedence(t.coeff->kind) < 2) + "*";
    }
    out += t.dy ? "dy" : "dx";
  }
  return out;
}

Series2 evaluate(const Expr& e, const Bindings& bindings, int order) {
  switch (e.kind) {
    case Expr::Kind::Number: return Series2::constant(number_value(e.text), order);
    case Expr::Kind::X: return Series2::x(order);
    case Expr::Kind::Y: return Series2::y(order);
    case Expr::Kind::I: return Series2::constant(Coefficient::i(), order);
    case Expr::Kind::Name: {
      const auto it = bindings.find(e.text);
      if (it == bindings.end()) throw ParseError(e.position, "unbound name '" + e.text + "'");
      return Series2::constant(it->second, order);
    }
    case Expr::Kind::Add: return evaluate(*e.lhs, bindings, order) + evaluate(*e.rhs, bindings, order);
    case Expr::Kind::Sub: return evaluate(*e.lhs, bindings, order) - evaluate(*e.rhs, bindings, order);
    case Expr::Kind::Mul: return evaluate(*e.lhs, bindings, order) * evaluate(*e.rhs, bindings, order);
    case Expr::Kind::Div: {
      const Series2 den = evaluate(*e.rhs, bindings, order);
      if (den.constant_term().is_zero())
        fail(ErrorCode::NonPolynomialDenominator, kModule,
             "divisor at position " + std::to_string(e.position) + " vanishes at the origin");
      return divide(evaluate(*e.lhs, bindings, order), den);
    }
    case Expr::Kind::Neg: return -evaluate(*e.lhs, bindings, order);
    case Expr::Kind::Pow: return pow(evaluate(*e.lhs, bindings, order), e.exponent);
  }
  return Series2(order);
}

PlanarVectorField evaluate(const FieldExpression& f, const Bindings& bindings, int order) {
  Series2 fx(order), fy(order);
  for (const FieldTerm& t : f.terms) {
    Series2 c = t.coeff ? evaluate(*t.coeff, bindings, order) : Series2::constant(1, order);
    if (t.negated) c = -c;
    (t.dy ? fy : fx) += c;
  }
  return {fx, fy};
}

PlanarVectorField parse_field(const std::string& text, const Bindings& bindings, int order) {
  return evaluate(parse_field_expression(text), bindings, order);
}

Coefficient parse_scalar(const std::string& text, const Bindings& bindings) {
  const ExprPtr e = parse_expression(text);
  std::function<void(const Expr&)> check = [&](const Expr& n) {
    if (n.kind == Expr::Kind::X || n.kind == Expr::Kind::Y) throw ParseError(n.position, "a constant cannot use x or y");
    if (n.lhs) check(*n.lhs);
    if (n.rhs) check(*n.rhs);
  };
  check(*e);
  return evaluate(*e, bindings, 0).constant_term();
}

}  // namespace folia
