#pragma once

/**
 * @file expr.hpp
 * @brief Univariate real expressions: parsing, evaluation, symbolic derivatives.
 *
 * Grammar (whitespace is insignificant):
 *
 *     expr   := term (('+' | '-') term)*
 *     term   := factor (('*' | '/') factor)*
 *     factor := '-' factor | power
 *     power  := atom ('^' factor)?
 *     atom   := number | 'x' | 'pi' | 'e' | func '(' expr ')' | '(' expr ')'
 *     func   := sin | cos | tan | exp | ln | sqrt
 *
 * So '^' binds tighter than unary minus (-x^2 == -(x^2)) and is
 * right-associative (x^2^3 == x^(2^3)).
 *
 * Expressions are immutable trees with shared subtrees; copying an Expr is a
 * reference-count bump.
 */

#include <charconv>
#include <cctype>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <variant>

#include "l1quad/errors.hpp"

namespace l1quad {

enum class UnaryOp { neg, sin, cos, tan, exp, ln, sqrt };
enum class BinaryOp { add, sub, mul, div, pow };

struct ExprNode;

/// Handle to an immutable expression tree.
class Expr {
 public:
  static Expr constant(double value);
  static Expr variable();
  static Expr unary(UnaryOp op, Expr child);
  static Expr binary(BinaryOp op, Expr lhs, Expr rhs);

  const ExprNode& node() const { return *node_; }

  /// True when the subtree mentions x.
  bool depends_on_x() const;

  /// Value of a Constant node, or nullptr for any other node kind.
  const double* constant_value() const;

 private:
  explicit Expr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const ExprNode> node_;
};

struct Constant {
  double value;
};
struct Variable {};
struct Unary {
  UnaryOp op;
  Expr child;
};
struct Binary {
  BinaryOp op;
  Expr lhs;
  Expr rhs;
};

struct ExprNode {
  std::variant<Constant, Variable, Unary, Binary> value;
  bool depends_on_x = false;
};

inline Expr Expr::constant(double value) {
  return Expr(std::make_shared<const ExprNode>(ExprNode{Constant{value}, false}));
}
inline Expr Expr::variable() {
  return Expr(std::make_shared<const ExprNode>(ExprNode{Variable{}, true}));
}
inline Expr Expr::unary(UnaryOp op, Expr child) {
  const bool dep = child.depends_on_x();
  return Expr(std::make_shared<const ExprNode>(ExprNode{Unary{op, std::move(child)}, dep}));
}
inline Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs) {
  const bool dep = lhs.depends_on_x() || rhs.depends_on_x();
  return Expr(std::make_shared<const ExprNode>(
      ExprNode{Binary{op, std::move(lhs), std::move(rhs)}, dep}));
}
inline bool Expr::depends_on_x() const { return node_->depends_on_x; }
inline const double* Expr::constant_value() const {
  const auto* c = std::get_if<Constant>(&node_->value);
  return c ? &c->value : nullptr;
}

inline std::string_view op_name(UnaryOp op) {
  switch (op) {
    case UnaryOp::neg: return "-";
    case UnaryOp::sin: return "sin";
    case UnaryOp::cos: return "cos";
    case UnaryOp::tan: return "tan";
    case UnaryOp::exp: return "exp";
    case UnaryOp::ln: return "ln";
    case UnaryOp::sqrt: return "sqrt";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse() {
    skip_space();
    if (pos_ == text_.size()) throw ParseError("empty expression", pos_);
    Expr e = parse_expr();
    skip_space();
    if (pos_ != text_.size()) {
      throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    }
    return e;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  Expr parse_expr() {
    Expr lhs = parse_term();
    for (char c = peek(); c == '+' || c == '-'; c = peek()) {
      ++pos_;
      Expr rhs = parse_term();
      lhs = Expr::binary(c == '+' ? BinaryOp::add : BinaryOp::sub, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Expr parse_term() {
    Expr lhs = parse_factor();
    for (char c = peek(); c == '*' || c == '/'; c = peek()) {
      if (c == '*' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '*') {
        throw ParseError("'**' is not an operator (use '^')", pos_);
      }
      ++pos_;
      Expr rhs = parse_factor();
      lhs = Expr::binary(c == '*' ? BinaryOp::mul : BinaryOp::div, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Expr parse_factor() {
    if (peek() == '-') {
      ++pos_;
      return Expr::unary(UnaryOp::neg, parse_factor());
    }
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_atom();
    if (peek() == '^') {
      ++pos_;
      return Expr::binary(BinaryOp::pow, std::move(base), parse_factor());
    }
    return base;
  }

  Expr parse_atom() {
    const char c = peek();
    const std::size_t start = pos_;
    if (c == '\0') throw ParseError("unexpected end of input", pos_);
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (c == '(') {
      ++pos_;
      Expr inner = parse_expr();
      expect(')');
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string_view name = text_.substr(start, pos_ - start);
      if (name == "x") return Expr::variable();
      if (name == "pi") return Expr::constant(std::numbers::pi);
      if (name == "e") return Expr::constant(std::numbers::e);
      UnaryOp op;
      if (name == "sin") op = UnaryOp::sin;
      else if (name == "cos") op = UnaryOp::cos;
      else if (name == "tan") op = UnaryOp::tan;
      else if (name == "exp") op = UnaryOp::exp;
      else if (name == "ln") op = UnaryOp::ln;
      else if (name == "sqrt") op = UnaryOp::sqrt;
      else throw ParseError("unknown identifier '" + std::string(name) + "'", start);
      expect('(');
      Expr arg = parse_expr();
      expect(')');
      return Expr::unary(op, std::move(arg));
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  Expr parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_, ++n;
      return n;
    };
    std::size_t n = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      n += digits();
    }
    if (n == 0) throw ParseError("malformed number", start);
    // Exponent part only when a digit follows, so "2e" is not a number.
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
      if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
        pos_ = look;
        digits();
      }
    }
    double value = 0.0;
    const char* first = text_.data() + start;
    const char* last = text_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) throw ParseError("malformed number", start);
    return Expr::constant(value);
  }

  void expect(char c) {
    if (peek() != c) {
      throw ParseError(std::string("expected '") + c + "'", pos_);
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Expr parse(std::string_view text) { return detail::Parser(text).parse(); }

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace detail {

inline double checked(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string("non-finite result in ") + what);
  return v;
}

inline double eval_pow(const Expr& base, const Expr& exponent, double u, double v) {
  if (!exponent.depends_on_x()) {
    if (u < 0.0 && v != std::floor(v)) throw DomainError("negative base with non-integer exponent");
    if (u == 0.0 && v < 0.0) throw DomainError("division by zero in ^");
    return checked(std::pow(u, v), "^");
  }
  (void)base;
  if (!(u > 0.0)) throw DomainError("base of a variable exponent must be positive");
  return checked(std::exp(v * std::log(u)), "^");
}

inline double eval(const Expr& e, double x) {
  return std::visit(
      [&](const auto& n) -> double {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Constant>) {
          return n.value;
        } else if constexpr (std::is_same_v<T, Variable>) {
          return x;
        } else if constexpr (std::is_same_v<T, Unary>) {
          const double u = eval(n.child, x);
          switch (n.op) {
            case UnaryOp::neg: return -u;
            case UnaryOp::sin: return std::sin(u);
            case UnaryOp::cos: return std::cos(u);
            case UnaryOp::tan: return checked(std::tan(u), "tan");
            case UnaryOp::exp: return checked(std::exp(u), "exp");
            case UnaryOp::ln:
              if (!(u > 0.0)) throw DomainError("ln of non-positive argument");
              return std::log(u);
            case UnaryOp::sqrt:
              if (u < 0.0) throw DomainError("sqrt of negative argument");
              return std::sqrt(u);
          }
          return u;
        } else {
          const double u = eval(n.lhs, x);
          const double v = eval(n.rhs, x);
          switch (n.op) {
            case BinaryOp::add: return checked(u + v, "+");
            case BinaryOp::sub: return checked(u - v, "-");
            case BinaryOp::mul: return checked(u * v, "*");
            case BinaryOp::div:
              if (v == 0.0) throw DomainError("division by zero");
              return checked(u / v, "/");
            case BinaryOp::pow: return eval_pow(n.lhs, n.rhs, u, v);
          }
          return u;
        }
      },
      e.node().value);
}

}  // namespace detail

/// Evaluates `e` at x. Throws DomainError outside the expression's domain.
inline double evaluate(const Expr& e, double x) { return detail::eval(e, x); }

// ---------------------------------------------------------------------------
// Simplifying constructors and differentiation
// ---------------------------------------------------------------------------

namespace detail {

inline bool is_const(const Expr& e, double v) {
  const double* c = e.constant_value();
  return c && *c == v;
}

// Fold an operation on constants, keeping the node when folding is not finite.
inline Expr fold_or(Expr built) {
  if (built.depends_on_x()) return built;
  try {
    return Expr::constant(evaluate(built, 0.0));
  } catch (const DomainError&) {
    return built;
  }
}

}  // namespace detail

inline Expr make_neg(Expr a) {
  if (const double* c = a.constant_value()) return Expr::constant(-*c);
  if (const auto* u = std::get_if<Unary>(&a.node().value); u && u->op == UnaryOp::neg) return u->child;
  return Expr::unary(UnaryOp::neg, std::move(a));
}

inline Expr make_unary(UnaryOp op, Expr a) {
  if (op == UnaryOp::neg) return make_neg(std::move(a));
  return detail::fold_or(Expr::unary(op, std::move(a)));
}

inline Expr make_add(Expr a, Expr b) {
  if (detail::is_const(a, 0.0)) return b;
  if (detail::is_const(b, 0.0)) return a;
  return detail::fold_or(Expr::binary(BinaryOp::add, std::move(a), std::move(b)));
}

inline Expr make_sub(Expr a, Expr b) {
  if (detail::is_const(b, 0.0)) return a;
  if (detail::is_const(a, 0.0)) return make_neg(std::move(b));
  return detail::fold_or(Expr::binary(BinaryOp::sub, std::move(a), std::move(b)));
}

inline Expr make_mul(Expr a, Expr b) {
  if (detail::is_const(a, 0.0) || detail::is_const(b, 0.0)) return Expr::constant(0.0);
  if (detail::is_const(a, 1.0)) return b;
  if (detail::is_const(b, 1.0)) return a;
  if (detail::is_const(a, -1.0)) return make_neg(std::move(b));
  if (detail::is_const(b, -1.0)) return make_neg(std::move(a));
  return detail::fold_or(Expr::binary(BinaryOp::mul, std::move(a), std::move(b)));
}

inline Expr make_div(Expr a, Expr b) {
  if (detail::is_const(a, 0.0)) return Expr::constant(0.0);
  if (detail::is_const(b, 1.0)) return a;
  return detail::fold_or(Expr::binary(BinaryOp::div, std::move(a), std::move(b)));
}

inline Expr make_pow(Expr a, Expr b) {
  if (detail::is_const(b, 1.0)) return a;
  if (detail::is_const(b, 0.0)) return Expr::constant(1.0);
  return detail::fold_or(Expr::binary(BinaryOp::pow, std::move(a), std::move(b)));
}

/// Exact symbolic derivative with respect to x, lightly simplified.
inline Expr differentiate(const Expr& e) {
  if (!e.depends_on_x()) return Expr::constant(0.0);
  return std::visit(
      [&](const auto& n) -> Expr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Constant>) {
          return Expr::constant(0.0);
        } else if constexpr (std::is_same_v<T, Variable>) {
          return Expr::constant(1.0);
        } else if constexpr (std::is_same_v<T, Unary>) {
          const Expr& u = n.child;
          Expr du = differentiate(u);
          switch (n.op) {
            case UnaryOp::neg: return make_neg(du);
            case UnaryOp::sin: return make_mul(du, make_unary(UnaryOp::cos, u));
            case UnaryOp::cos: return make_mul(du, make_neg(make_unary(UnaryOp::sin, u)));
            case UnaryOp::tan:
              return make_div(du, make_pow(make_unary(UnaryOp::cos, u), Expr::constant(2.0)));
            case UnaryOp::exp: return make_mul(du, e);
            case UnaryOp::ln: return make_div(du, u);
            case UnaryOp::sqrt: return make_div(du, make_mul(Expr::constant(2.0), e));
          }
          return du;
        } else {
          const Expr& u = n.lhs;
          const Expr& v = n.rhs;
          switch (n.op) {
            case BinaryOp::add: return make_add(differentiate(u), differentiate(v));
            case BinaryOp::sub: return make_sub(differentiate(u), differentiate(v));
            case BinaryOp::mul:
              return make_add(make_mul(differentiate(u), v), make_mul(u, differentiate(v)));
            case BinaryOp::div:
              return make_div(make_sub(make_mul(differentiate(u), v), make_mul(u, differentiate(v))),
                              make_pow(v, Expr::constant(2.0)));
            case BinaryOp::pow:
              if (!v.depends_on_x()) {
                // c * u^(c-1) * u'
                Expr lowered = make_pow(u, make_sub(v, Expr::constant(1.0)));
                return make_mul(make_mul(v, lowered), differentiate(u));
              } else {
                // u^v * (v' ln u + v u' / u)
                Expr inner = make_add(make_mul(differentiate(v), make_unary(UnaryOp::ln, u)),
                                      make_div(make_mul(v, differentiate(u)), u));
                return make_mul(e, inner);
              }
          }
          return Expr::constant(0.0);
        }
      },
      e.node().value);
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

namespace detail {

// Binding strength of the construct a node renders as.
enum Prec { kSum = 1, kProduct = 2, kNegation = 3, kPower = 4, kAtom = 5 };

inline int precedence(const Expr& e) {
  return std::visit(
      [](const auto& n) -> int {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Constant>) {
          return std::signbit(n.value) ? kNegation : kAtom;
        } else if constexpr (std::is_same_v<T, Variable>) {
          return kAtom;
        } else if constexpr (std::is_same_v<T, Unary>) {
          return n.op == UnaryOp::neg ? kNegation : kAtom;
        } else {
          switch (n.op) {
            case BinaryOp::add:
            case BinaryOp::sub: return kSum;
            case BinaryOp::mul:
            case BinaryOp::div: return kProduct;
            case BinaryOp::pow: return kPower;
          }
          return kAtom;
        }
      },
      e.node().value);
}

inline std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

void render_into(const Expr& e, std::string& out);

inline void render_child(const Expr& child, int min_prec, std::string& out) {
  if (precedence(child) < min_prec) {
    out += '(';
    render_into(child, out);
    out += ')';
  } else {
    render_into(child, out);
  }
}

inline void render_into(const Expr& e, std::string& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Constant>) {
          out += format_number(n.value);
        } else if constexpr (std::is_same_v<T, Variable>) {
          out += 'x';
        } else if constexpr (std::is_same_v<T, Unary>) {
          if (n.op == UnaryOp::neg) {
            out += '-';
            render_child(n.child, kNegation, out);
          } else {
            out += op_name(n.op);
            out += '(';
            render_into(n.child, out);
            out += ')';
          }
        } else {
          switch (n.op) {
            case BinaryOp::add:
            case BinaryOp::sub:
              render_child(n.lhs, kSum, out);
              out += n.op == BinaryOp::add ? " + " : " - ";
              render_child(n.rhs, kProduct, out);
              break;
            case BinaryOp::mul:
            case BinaryOp::div:
              render_child(n.lhs, kProduct, out);
              out += n.op == BinaryOp::mul ? '*' : '/';
              render_child(n.rhs, kNegation, out);
              break;
            case BinaryOp::pow:
              render_child(n.lhs, kAtom, out);
              out += '^';
              render_child(n.rhs, kNegation, out);
              break;
          }
        }
      },
      e.node().value);
}

}  // namespace detail

/// Text form that parses back to an equivalent tree.
inline std::string render(const Expr& e) {
  std::string out;
  detail::render_into(e, out);
  return out;
}

// ---------------------------------------------------------------------------
// (f, f', f'') bundles
// ---------------------------------------------------------------------------

struct OpenInterval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double t) const { return lo < t && t < hi; }
};

/// A C² function given by its value and first two derivatives.
struct DifferentiableFunction {
  std::function<double(double)> f;
  std::function<double(double)> df;
  std::function<double(double)> d2f;
  OpenInterval domain{};
};

/// Bundles e, e' and e'' as evaluators. Domain errors surface when called.
inline DifferentiableFunction to_differentiable(const Expr& e) {
  Expr d1 = differentiate(e);
  Expr d2 = differentiate(d1);
  return DifferentiableFunction{
      [e](double x) { return evaluate(e, x); },
      [d1](double x) { return evaluate(d1, x); },
      [d2](double x) { return evaluate(d2, x); },
      OpenInterval{},
  };
}

}  // namespace l1quad
