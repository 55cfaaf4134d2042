#pragma once

#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

#include "ballvol/rational.hpp"

namespace ballvol {

/// Exact value of the form sum_k q_k * pi^k with rational q_k and integer k.
/// Zero coefficients are never stored.
class PiExpression {
 public:
  using Terms = std::map<int, Rational>;

  PiExpression() = default;
  PiExpression(Rational q) { add_term(0, std::move(q)); }  // NOLINT(google-explicit-constructor)
  PiExpression(long q) : PiExpression(Rational(q)) {}       // NOLINT(google-explicit-constructor)

  static PiExpression monomial(Rational q, int pi_power) {
    PiExpression e;
    e.add_term(pi_power, std::move(q));
    return e;
  }
  static PiExpression pi(int power = 1) { return monomial(Rational(1), power); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0); }
  bool is_monomial() const { return terms_.size() == 1; }

  Rational coefficient(int pi_power) const {
    auto it = terms_.find(pi_power);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// The rational value; throws unless the expression has no pi content.
  Rational rational() const {
    if (!is_rational()) throw std::logic_error("PiExpression is not rational: " + str());
    return coefficient(0);
  }

  /// Coefficient and exponent of a single-term expression.
  std::pair<Rational, int> as_monomial() const {
    if (!is_monomial()) throw std::logic_error("PiExpression is not a monomial: " + str());
    return {terms_.begin()->second, terms_.begin()->first};
  }

  PiExpression& operator+=(const PiExpression& o) {
    for (const auto& [k, q] : o.terms_) add_term(k, q);
    return *this;
  }
  PiExpression& operator-=(const PiExpression& o) {
    for (const auto& [k, q] : o.terms_) add_term(k, -q);
    return *this;
  }
  PiExpression& operator*=(const PiExpression& o) { return *this = *this * o; }

  PiExpression operator-() const {
    PiExpression e;
    for (const auto& [k, q] : terms_) e.terms_.emplace(k, -q);
    return e;
  }

  friend PiExpression operator+(PiExpression a, const PiExpression& b) { return a += b; }
  friend PiExpression operator-(PiExpression a, const PiExpression& b) { return a -= b; }
  friend PiExpression operator*(const PiExpression& a, const PiExpression& b) {
    PiExpression out;
    for (const auto& [ka, qa] : a.terms_)
      for (const auto& [kb, qb] : b.terms_) out.add_term(ka + kb, qa * qb);
    return out;
  }

  /// Exact division by a single-term expression.
  friend PiExpression operator/(const PiExpression& a, const PiExpression& monomial_divisor) {
    const auto [q, k] = monomial_divisor.as_monomial();
    PiExpression out;
    for (const auto& [ka, qa] : a.terms_) out.add_term(ka - k, qa / q);
    return out;
  }

  friend bool operator==(const PiExpression& a, const PiExpression& b) { return a.terms_ == b.terms_; }

  /// Human-readable form, e.g. "1/2*pi^2", "2 + 4/3*pi", "1/16*pi^-1", "-pi".
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [k, q] : terms_) {
      std::string coeff = q.str();
      if (!first) {
        if (q.sign() < 0) {
          out += " - ";
          coeff = (-q).str();
        } else {
          out += " + ";
        }
      }
      first = false;
      if (k == 0) {
        out += coeff;
      } else {
        out += coeff == "1" ? "pi" : coeff == "-1" ? "-pi" : coeff + "*pi";
        if (k != 1) out += "^" + std::to_string(k);
      }
    }
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const PiExpression& e) { return os << e.str(); }

 private:
  void add_term(int k, const Rational& q) {
    if (q.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(k, q);
    if (!inserted) {
      it->second += q;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Terms terms_;
};

}  // namespace ballvol
