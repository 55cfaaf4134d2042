#pragma once

#include <memory>
#include <string>
#include <utility>
#include <variant>

#include "ballvol/interval.hpp"
#include "ballvol/quantity.hpp"

namespace ballvol {

/// Immutable expression in the dimension n with exact constants, evaluated to
/// certified enclosures. Used for bound sides and truncated series.
class Expr {
 public:
  enum class Op { kConst, kEuler, kDimension, kQuantity, kNeg, kAdd, kSub, kMul, kDiv, kLog, kExp, kSqrt, kPowInt, kPow };

  Expr(long value) : Expr(PiExpression(value)) {}                // NOLINT(google-explicit-constructor)
  Expr(const Rational& value) : Expr(PiExpression(value)) {}     // NOLINT(google-explicit-constructor)
  Expr(const PiExpression& value) {                              // NOLINT(google-explicit-constructor)
    auto node = std::make_shared<Node>();
    node->op = Op::kConst;
    node->constant = value;
    node_ = std::move(node);
  }

  static Expr n() { return leaf(Op::kDimension); }
  static Expr pi() { return Expr(PiExpression::pi()); }
  static Expr euler() { return leaf(Op::kEuler); }
  static Expr quantity(QuantityKind kind) {
    auto node = std::make_shared<Node>();
    node->op = Op::kQuantity;
    node->quantity = kind;
    return Expr(std::move(node));
  }

  friend Expr operator-(const Expr& a) { return unary(Op::kNeg, a); }
  friend Expr operator+(const Expr& a, const Expr& b) { return binary(Op::kAdd, a, b); }
  friend Expr operator-(const Expr& a, const Expr& b) { return binary(Op::kSub, a, b); }
  friend Expr operator*(const Expr& a, const Expr& b) { return binary(Op::kMul, a, b); }
  friend Expr operator/(const Expr& a, const Expr& b) { return binary(Op::kDiv, a, b); }
  friend Expr log(const Expr& a) { return unary(Op::kLog, a); }
  friend Expr exp(const Expr& a) { return unary(Op::kExp, a); }
  friend Expr sqrt(const Expr& a) { return unary(Op::kSqrt, a); }
  friend Expr pow(const Expr& base, const Expr& exponent) { return binary(Op::kPow, base, exponent); }
  friend Expr powi(const Expr& base, long k) {
    auto node = std::make_shared<Node>();
    node->op = Op::kPowInt;
    node->args[0] = base.node_;
    node->power = k;
    return Expr(std::move(node));
  }

  Op op() const { return node_->op; }

  /// Enclosure at dimension n and working precision `prec` bits. Throws
  /// DomainError when a log/sqrt/division leaves its domain.
  PrecInterval enclose(long n, mpfr_prec_t prec) const { return eval(*node_, n, prec); }

  std::string str() const { return render(*node_); }

 private:
  struct Node {
    Op op = Op::kConst;
    PiExpression constant;
    QuantityKind quantity = QuantityKind::kRatio;
    long power = 0;
    std::shared_ptr<const Node> args[2];
  };

  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static Expr leaf(Op op) {
    auto node = std::make_shared<Node>();
    node->op = op;
    return Expr(std::move(node));
  }
  static Expr unary(Op op, const Expr& a) {
    auto node = std::make_shared<Node>();
    node->op = op;
    node->args[0] = a.node_;
    return Expr(std::move(node));
  }
  static Expr binary(Op op, const Expr& a, const Expr& b) {
    auto node = std::make_shared<Node>();
    node->op = op;
    node->args[0] = a.node_;
    node->args[1] = b.node_;
    return Expr(std::move(node));
  }

  static PrecInterval eval(const Node& node, long n, mpfr_prec_t prec) {
    auto arg = [&](int i) { return eval(*node.args[i], n, prec); };
    switch (node.op) {
      case Op::kConst: return PrecInterval::from_pi_expression(node.constant, prec);
      case Op::kEuler: return PrecInterval::e(prec);
      case Op::kDimension: return PrecInterval::from_long(n, prec);
      case Op::kQuantity: return target_quantity(node.quantity, n, prec);
      case Op::kNeg: return -arg(0);
      case Op::kAdd: return arg(0) + arg(1);
      case Op::kSub: return arg(0) - arg(1);
      case Op::kMul: return arg(0) * arg(1);
      case Op::kDiv: return arg(0) / arg(1);
      case Op::kLog: return log(arg(0));
      case Op::kExp: return exp(arg(0));
      case Op::kSqrt: return sqrt(arg(0));
      case Op::kPowInt: return powi(arg(0), node.power);
      case Op::kPow: return pow(arg(0), arg(1));
    }
    throw std::logic_error("bad expression node");
  }

  static std::string render(const Node& node) {
    auto arg = [&](int i) { return render(*node.args[i]); };
    // Products and quotients need grouping on the right of '/' and under '^'.
    auto grouped = [&](int i) {
      const Op op = node.args[i]->op;
      return op == Op::kMul || op == Op::kDiv || op == Op::kPowInt || op == Op::kPow ? "(" + arg(i) + ")" : arg(i);
    };
    switch (node.op) {
      case Op::kConst: {
        const auto s = node.constant.str();
        return node.constant.terms().size() > 1 || s.find_first_of("/-*") != std::string::npos ? "(" + s + ")" : s;
      }
      case Op::kEuler: return "e";
      case Op::kDimension: return "n";
      case Op::kQuantity: return std::string(quantity_name(node.quantity));
      case Op::kNeg: return "-(" + arg(0) + ")";
      case Op::kAdd: return "(" + arg(0) + " + " + arg(1) + ")";
      case Op::kSub: return "(" + arg(0) + " - " + arg(1) + ")";
      case Op::kMul: return arg(0) + "*" + arg(1);
      case Op::kDiv: return arg(0) + "/" + grouped(1);
      case Op::kLog: return "ln(" + arg(0) + ")";
      case Op::kExp: return "exp(" + arg(0) + ")";
      case Op::kSqrt: return "sqrt(" + arg(0) + ")";
      case Op::kPowInt: return grouped(0) + "^" + std::to_string(node.power);
      case Op::kPow: return grouped(0) + "^" + grouped(1);
    }
    return "?";
  }

  std::shared_ptr<const Node> node_;
};

/// sum_k coeffs[k] * var^(stride k) with exact coefficients, from index `first`
/// through index `last`.
template <typename Coeffs>
Expr power_sum(const Coeffs& coeffs, const Expr& var, std::size_t first, std::size_t last, int stride = 1) {
  Expr acc(0L);
  bool empty = true;
  for (std::size_t k = first; k <= last && k < coeffs.size(); ++k) {
    const PiExpression c(coeffs[k]);
    if (c.is_zero()) continue;
    const long p = stride * static_cast<long>(k);
    Expr term = p == 0 ? Expr(c) : Expr(c) * powi(var, p);
    acc = empty ? term : acc + term;
    empty = false;
  }
  return acc;
}

}  // namespace ballvol
