#pragma once

#include <cmath>
#include <memory>
#include <string>
#include <type_traits>

#include "curvlab/error.hpp"
#include "curvlab/jet.hpp"

namespace curvlab {

/// Immutable expression tree over constants, coordinates and named parameters.
///
/// The node set is exactly what metric components need: + - * /, integer
/// powers and exp. Subtrees are shared, so copying an Expr is cheap.
class Expr {
public:
  enum class Kind { Constant, Variable, Parameter, Add, Sub, Mul, Div, Neg, Pow, Exp };

  Expr() : Expr(constant(0.0)) {}

  static Expr constant(double value);
  /// Coordinate x_{index+1}; index is 0-based.
  static Expr variable(int index);
  static Expr parameter(std::string name);
  static Expr binary(Kind kind, Expr lhs, Expr rhs);
  static Expr negate(Expr operand);
  static Expr power(Expr base, int exponent);
  static Expr exponential(Expr operand);

  Kind kind() const { return node_->kind; }
  double value() const { return node_->value; }
  int index() const { return node_->index; }  // variable index or exponent
  const std::string& name() const { return node_->name; }
  const Expr& lhs() const { return *node_->lhs; }
  const Expr& rhs() const { return *node_->rhs; }

  bool is_constant(double v) const { return kind() == Kind::Constant && value() == v; }

  /// Highest coordinate index referenced, or -1.
  int max_variable() const;

  /// Fully parenthesized text accepted by the metric-file grammar.
  std::string to_string() const;

private:
  struct Node {
    Kind kind = Kind::Constant;
    double value = 0.0;
    int index = 0;
    std::string name;
    std::shared_ptr<const Expr> lhs;
    std::shared_ptr<const Expr> rhs;
  };
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// Structural equality of two trees.
bool operator==(const Expr& a, const Expr& b);

inline Expr operator+(Expr a, Expr b) { return Expr::binary(Expr::Kind::Add, std::move(a), std::move(b)); }
inline Expr operator-(Expr a, Expr b) { return Expr::binary(Expr::Kind::Sub, std::move(a), std::move(b)); }
inline Expr operator*(Expr a, Expr b) { return Expr::binary(Expr::Kind::Mul, std::move(a), std::move(b)); }
inline Expr operator/(Expr a, Expr b) { return Expr::binary(Expr::Kind::Div, std::move(a), std::move(b)); }
inline Expr operator-(Expr a) { return Expr::negate(std::move(a)); }
inline Expr operator+(double a, Expr b) { return Expr::constant(a) + std::move(b); }
inline Expr operator*(double a, Expr b) { return Expr::constant(a) * std::move(b); }
inline Expr pow(Expr base, int exponent) { return Expr::power(std::move(base), exponent); }
inline Expr exp(Expr e) { return Expr::exponential(std::move(e)); }

namespace detail {
template <class Real>
Real ipow(Real x, int n) requires std::is_floating_point_v<Real> {
  return std::pow(x, n);
}
inline Jet ipow(const Jet& x, int n) { return jet_pow(x, n); }
template <class Real>
Real exp_of(Real x) requires std::is_floating_point_v<Real> {
  return std::exp(x);
}
inline Jet exp_of(const Jet& x) { return jet_exp(x); }
}  // namespace detail

/// Evaluate `e` in the scalar type produced by `ctx`.
///
/// Context must provide constant(double), variable(int) and
/// parameter(const std::string&), each returning Scalar.
template <class Scalar, class Context>
Scalar evaluate(const Expr& e, const Context& ctx) {
  using K = Expr::Kind;
  switch (e.kind()) {
    case K::Constant: return ctx.constant(e.value());
    case K::Variable: return ctx.variable(e.index());
    case K::Parameter: return ctx.parameter(e.name());
    case K::Add: return evaluate<Scalar>(e.lhs(), ctx) + evaluate<Scalar>(e.rhs(), ctx);
    case K::Sub: return evaluate<Scalar>(e.lhs(), ctx) - evaluate<Scalar>(e.rhs(), ctx);
    case K::Mul: return evaluate<Scalar>(e.lhs(), ctx) * evaluate<Scalar>(e.rhs(), ctx);
    case K::Div: {
      Scalar den = evaluate<Scalar>(e.rhs(), ctx);
      if constexpr (std::is_floating_point_v<Scalar>) {
        if (den == Scalar(0)) throw GeometryError("division by zero while evaluating metric expression");
      }
      return evaluate<Scalar>(e.lhs(), ctx) / den;
    }
    case K::Neg: return -evaluate<Scalar>(e.lhs(), ctx);
    case K::Pow: return detail::ipow(evaluate<Scalar>(e.lhs(), ctx), e.index());
    case K::Exp: return detail::exp_of(evaluate<Scalar>(e.lhs(), ctx));
  }
  throw Error("unreachable expression kind");
}

}  // namespace curvlab
