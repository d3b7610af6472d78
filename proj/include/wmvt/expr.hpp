#pragma once

// Closed-form scalar functions of one variable x.
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := atom ('^' number)?
//   atom   := 'x' | number | func '(' expr ')' | '(' expr ')' | '-' atom
//   func   := exp | log | sin | cos | sqrt
//
// Trees are immutable and shared; copying an Expr is cheap.

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

#include "wmvt/jet.hpp"

namespace wmvt {

class Expr {
 public:
  enum class Op { Var, Const, Neg, Exp, Log, Sin, Cos, Sqrt, Add, Sub, Mul, Div, Pow };

  /// The variable x.
  Expr();

  static Expr variable() { return Expr(); }
  static Expr constant(double value);

  Op op() const { return node_->op; }
  /// Literal value for Const, exponent for Pow.
  double value() const { return node_->value; }
  /// Operand of unaries, base of Pow, left side of binaries.
  const Expr& lhs() const { return *node_->lhs; }
  const Expr& rhs() const { return *node_->rhs; }

  bool is_unary() const;
  bool is_binary() const;

  /// Parenthesised only where precedence requires; reparses to an equal tree.
  std::string to_string() const;

  friend bool operator==(const Expr& a, const Expr& b);

  friend Expr operator-(const Expr& a);
  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr exp(const Expr& a);
  friend Expr log(const Expr& a);
  friend Expr sin(const Expr& a);
  friend Expr cos(const Expr& a);
  friend Expr sqrt(const Expr& a);
  /// `exponent` must be finite and non-negative (the grammar has no signed exponents).
  friend Expr pow(const Expr& a, double exponent);

 private:
  struct Node {
    Op op;
    double value = 0.0;
    std::shared_ptr<const Expr> lhs;
    std::shared_ptr<const Expr> rhs;
  };

  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Expr make(Op op, double value, const Expr* lhs, const Expr* rhs);

  std::shared_ptr<const Node> node_;
};

Expr exp(const Expr& a);
Expr log(const Expr& a);
Expr sin(const Expr& a);
Expr cos(const Expr& a);
Expr sqrt(const Expr& a);
Expr pow(const Expr& a, double exponent);

inline Expr operator+(const Expr& a, double b) { return a + Expr::constant(b); }
inline Expr operator+(double a, const Expr& b) { return Expr::constant(a) + b; }
inline Expr operator-(const Expr& a, double b) { return a - Expr::constant(b); }
inline Expr operator-(double a, const Expr& b) { return Expr::constant(a) - b; }
inline Expr operator*(double a, const Expr& b) { return Expr::constant(a) * b; }
inline Expr operator*(const Expr& a, double b) { return a * Expr::constant(b); }
inline Expr operator/(const Expr& a, double b) { return a / Expr::constant(b); }

/// Throws ParseError (with byte offset) on malformed input or unknown identifiers.
Expr parse(std::string_view source);

/// Plain evaluation. Throws DomainError where the expression is undefined.
double eval(const Expr& e, double x);

/// Taylor expansion of `e` at `point` up to `order`.
template <typename Scalar = double>
Jet<Scalar> jet_eval(const Expr& e, std::type_identity_t<Scalar> point, int order) {
  using J = Jet<Scalar>;
  if (order < 0) throw std::invalid_argument("jet order must be non-negative");
  switch (e.op()) {
    case Expr::Op::Var:
      return J::variable(point, order);
    case Expr::Op::Const:
      return J::constant(point, order, Scalar(e.value()));
    case Expr::Op::Neg:
      return -jet_eval<Scalar>(e.lhs(), point, order);
    case Expr::Op::Exp:
      return exp(jet_eval<Scalar>(e.lhs(), point, order));
    case Expr::Op::Log:
      return log(jet_eval<Scalar>(e.lhs(), point, order));
    case Expr::Op::Sin:
      return sin(jet_eval<Scalar>(e.lhs(), point, order));
    case Expr::Op::Cos:
      return cos(jet_eval<Scalar>(e.lhs(), point, order));
    case Expr::Op::Sqrt:
      return sqrt(jet_eval<Scalar>(e.lhs(), point, order));
    case Expr::Op::Pow:
      return pow(jet_eval<Scalar>(e.lhs(), point, order), Scalar(e.value()));
    case Expr::Op::Add:
      return jet_eval<Scalar>(e.lhs(), point, order) + jet_eval<Scalar>(e.rhs(), point, order);
    case Expr::Op::Sub:
      return jet_eval<Scalar>(e.lhs(), point, order) - jet_eval<Scalar>(e.rhs(), point, order);
    case Expr::Op::Mul:
      return jet_eval<Scalar>(e.lhs(), point, order) * jet_eval<Scalar>(e.rhs(), point, order);
    case Expr::Op::Div:
      return jet_eval<Scalar>(e.lhs(), point, order) / jet_eval<Scalar>(e.rhs(), point, order);
  }
  throw std::logic_error("unhandled expression node");
}

}  // namespace wmvt
