#include "curvlab/expression.hpp"

#include <algorithm>
#include <cstdio>

namespace curvlab {

Expr Expr::constant(double value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Constant;
  n->value = value;
  return Expr(std::move(n));
}

Expr Expr::variable(int index) {
  if (index < 0) throw ArgumentError("negative coordinate index");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Variable;
  n->index = index;
  return Expr(std::move(n));
}

Expr Expr::parameter(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Parameter;
  n->name = std::move(name);
  return Expr(std::move(n));
}

Expr Expr::binary(Kind kind, Expr lhs, Expr rhs) {
  if (kind != Kind::Add && kind != Kind::Sub && kind != Kind::Mul && kind != Kind::Div) {
    throw ArgumentError("Expr::binary: not a binary operator");
  }
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->lhs = std::make_shared<const Expr>(std::move(lhs));
  n->rhs = std::make_shared<const Expr>(std::move(rhs));
  return Expr(std::move(n));
}

Expr Expr::negate(Expr operand) {
  // -literal is a literal, matching what the parser produces
  if (operand.kind() == Kind::Constant) return constant(-operand.value());
  auto n = std::make_shared<Node>();
  n->kind = Kind::Neg;
  n->lhs = std::make_shared<const Expr>(std::move(operand));
  return Expr(std::move(n));
}

Expr Expr::power(Expr base, int exponent) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Pow;
  n->index = exponent;
  n->lhs = std::make_shared<const Expr>(std::move(base));
  return Expr(std::move(n));
}

Expr Expr::exponential(Expr operand) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Exp;
  n->lhs = std::make_shared<const Expr>(std::move(operand));
  return Expr(std::move(n));
}

int Expr::max_variable() const {
  switch (kind()) {
    case Kind::Constant:
    case Kind::Parameter: return -1;
    case Kind::Variable: return index();
    case Kind::Neg:
    case Kind::Pow:
    case Kind::Exp: return lhs().max_variable();
    default: return std::max(lhs().max_variable(), rhs().max_variable());
  }
}

std::string Expr::to_string() const {
  switch (kind()) {
    case Kind::Constant: {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", value());
      return value() < 0 || std::signbit(value()) ? "(" + std::string(buf) + ")" : std::string(buf);
    }
    case Kind::Variable: return "x" + std::to_string(index() + 1);
    case Kind::Parameter: return name();
    case Kind::Add: return "(" + lhs().to_string() + " + " + rhs().to_string() + ")";
    case Kind::Sub: return "(" + lhs().to_string() + " - " + rhs().to_string() + ")";
    case Kind::Mul: return "(" + lhs().to_string() + " * " + rhs().to_string() + ")";
    case Kind::Div: return "(" + lhs().to_string() + " / " + rhs().to_string() + ")";
    case Kind::Neg: return "(-" + lhs().to_string() + ")";
    case Kind::Pow: {
      std::string base = lhs().to_string();
      // a bare unsigned literal followed by ^ would still parse, but keep powers visually unambiguous
      if (lhs().kind() == Kind::Constant && base.front() != '(') base = "(" + base + ")";
      return base + "^" + std::to_string(index());
    }
    case Kind::Exp: return "exp(" + lhs().to_string() + ")";
  }
  return {};
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.kind() != b.kind()) return false;
  using K = Expr::Kind;
  switch (a.kind()) {
    case K::Constant: return a.value() == b.value();
    case K::Variable: return a.index() == b.index();
    case K::Parameter: return a.name() == b.name();
    case K::Neg:
    case K::Exp: return a.lhs() == b.lhs();
    case K::Pow: return a.index() == b.index() && a.lhs() == b.lhs();
    default: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

}  // namespace curvlab
