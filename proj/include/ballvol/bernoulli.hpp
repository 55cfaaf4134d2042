#pragma once

#include <mutex>
#include <stdexcept>
#include <vector>

#include "ballvol/rational.hpp"

namespace ballvol {

/// Bernoulli numbers (convention B_1 = -1/2) and the monomial coefficients of
/// the Bernoulli polynomials, grown on demand. Access is serialized; every
/// query behaves as a pure function of its arguments.
class BernoulliTable {
 public:
  static BernoulliTable& shared() {
    static BernoulliTable table;
    return table;
  }

  Rational number(int j) {
    if (j < 0) throw std::invalid_argument("bernoulli_number: negative index");
    std::lock_guard lock(mutex_);
    extend_numbers(j);
    return numbers_[static_cast<size_t>(j)];
  }

  /// Coefficients a_0..a_t of B_t(x) = sum_i a_i x^i.
  std::vector<Rational> polynomial(int t) {
    if (t < 0) throw std::invalid_argument("bernoulli polynomial: negative degree");
    std::lock_guard lock(mutex_);
    extend_numbers(t);
    while (static_cast<int>(polys_.size()) <= t) {
      const int deg = static_cast<int>(polys_.size());
      // B_t(x) = sum_k C(t,k) B_k x^(t-k)
      std::vector<Rational> coeffs(static_cast<size_t>(deg) + 1);
      Rational binom(1);
      for (int k = 0; k <= deg; ++k) {
        coeffs[static_cast<size_t>(deg - k)] = binom * numbers_[static_cast<size_t>(k)];
        binom = binom * Rational(deg - k) / Rational(k + 1);
      }
      polys_.push_back(std::move(coeffs));
    }
    return polys_[static_cast<size_t>(t)];
  }

 private:
  BernoulliTable() { numbers_.emplace_back(1); }

  // sum_{k=0}^{m} C(m+1,k) B_k = 0, solved for B_m.
  void extend_numbers(int j) {
    while (static_cast<int>(numbers_.size()) <= j) {
      const int m = static_cast<int>(numbers_.size());
      Rational acc(0);
      Rational binom(1);  // C(m+1, k)
      for (int k = 0; k < m; ++k) {
        acc += binom * numbers_[static_cast<size_t>(k)];
        binom = binom * Rational(m + 1 - k) / Rational(k + 1);
      }
      numbers_.push_back(-acc / Rational(m + 1));
    }
  }

  std::mutex mutex_;
  std::vector<Rational> numbers_;
  std::vector<std::vector<Rational>> polys_;
};

inline Rational bernoulli_number(int j) { return BernoulliTable::shared().number(j); }

/// Exact B_t(x).
inline Rational bernoulli_poly_eval(int t, const Rational& x) {
  const auto coeffs = BernoulliTable::shared().polynomial(t);
  Rational acc(0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

/// B_t(1/2) == (2^(1-t) - 1) B_t, checked exactly.
inline bool half_argument_check(int t) {
  const Rational lhs = bernoulli_poly_eval(t, Rational(1, 2));
  const Rational rhs = (pow(Rational(2), 1 - t) - Rational(1)) * bernoulli_number(t);
  return lhs == rhs;
}

/// B_t(1) == (-1)^t B_t, checked exactly.
inline bool reflection_at_one_check(int t) {
  const Rational sign = t % 2 == 0 ? Rational(1) : Rational(-1);
  return bernoulli_poly_eval(t, Rational(1)) == sign * bernoulli_number(t);
}

}  // namespace ballvol
