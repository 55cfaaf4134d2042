#pragma once

#include <deque>
#include <mutex>
#include <stdexcept>
#include <utility>

#include "ballvol/pi_expression.hpp"

namespace ballvol {

/// Exact volume of the unit ball in dimension n: q * pi^floor(n/2).
struct OmegaValue {
  long n = 0;
  PiExpression value;

  Rational coefficient() const { return value.as_monomial().first; }
  int pi_power() const { return value.as_monomial().second; }
};

namespace detail {

// Memo of Omega_0, Omega_1, ... built with Omega_n = Omega_{n-2} * 2*pi/n.
class OmegaMemo {
 public:
  static OmegaMemo& shared() {
    static OmegaMemo memo;
    return memo;
  }

  PiExpression get(long n) {
    std::lock_guard lock(mutex_);
    while (static_cast<long>(values_.size()) <= n) {
      const long m = static_cast<long>(values_.size());
      values_.push_back(values_[static_cast<size_t>(m - 2)] * PiExpression::monomial(Rational(2, m), 1));
    }
    return values_[static_cast<size_t>(n)];
  }

 private:
  OmegaMemo() {
    values_.emplace_back(Rational(1));  // Gamma(1) = 1
    values_.emplace_back(Rational(2));
  }

  std::mutex mutex_;
  std::deque<PiExpression> values_;
};

inline void require_positive(long n, const char* what) {
  if (n < 1) throw std::invalid_argument(std::string(what) + ": n must be >= 1");
}

}  // namespace detail

inline OmegaValue omega_exact(long n) {
  if (n < 0) throw std::invalid_argument("omega_exact: n must be >= 0");
  return {n, detail::OmegaMemo::shared().get(n)};
}

/// Omega_{n-1} / Omega_n.
inline PiExpression ratio_exact(long n) {
  detail::require_positive(n, "ratio_exact");
  return omega_exact(n - 1).value / omega_exact(n).value;
}

/// Omega_n^2 / (Omega_{n-1} Omega_{n+1}).
inline PiExpression geo_ratio_exact(long n) {
  detail::require_positive(n, "geo_ratio_exact");
  const auto mid = omega_exact(n).value;
  return (mid * mid) / (omega_exact(n - 1).value * omega_exact(n + 1).value);
}

struct SumRatio {
  PiExpression numerator;    // Omega_n
  PiExpression denominator;  // Omega_{n-1} + Omega_{n+1}
};

inline SumRatio sum_ratio_exact(long n) {
  detail::require_positive(n, "sum_ratio_exact");
  return {omega_exact(n).value, omega_exact(n - 1).value + omega_exact(n + 1).value};
}

}  // namespace ballvol
