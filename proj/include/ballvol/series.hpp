#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ballvol/rational.hpp"

namespace ballvol {

/// Power series a_0 + a_1 x + ... known exactly through x^order.
class Series {
 public:
  Series() = default;
  explicit Series(std::size_t order) : coeffs_(order + 1) {}
  Series(std::vector<Rational> coeffs, std::size_t order) : coeffs_(std::move(coeffs)) {
    coeffs_.resize(order + 1);
  }

  std::size_t order() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  const Rational& operator[](std::size_t i) const { return coeffs_.at(i); }
  Rational& operator[](std::size_t i) { return coeffs_.at(i); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  Series truncated(std::size_t order) const { return Series(coeffs_, std::min(order, this->order())); }

  /// ln(1 + a x)
  static Series log1p_linear(const Rational& a, std::size_t order) {
    Series s(order);
    Rational power = a;
    for (std::size_t j = 1; j <= order; ++j) {
      s[j] = (j % 2 == 1 ? power : -power) / Rational(static_cast<long>(j));
      power *= a;
    }
    return s;
  }

  /// x / (1 - a x) = x + a x^2 + a^2 x^3 + ...
  static Series geometric_shift(const Rational& a, std::size_t order) {
    Series s(order);
    Rational power(1);
    for (std::size_t j = 1; j <= order; ++j) {
      s[j] = power;
      power *= a;
    }
    return s;
  }

  Series& operator+=(const Series& o) {
    const auto ord = std::min(order(), o.order());
    coeffs_.resize(ord + 1);
    for (std::size_t i = 0; i <= ord; ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  Series& operator-=(const Series& o) {
    const auto ord = std::min(order(), o.order());
    coeffs_.resize(ord + 1);
    for (std::size_t i = 0; i <= ord; ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }

  friend Series operator*(const Series& a, const Series& b) {
    const auto ord = std::min(a.order(), b.order());
    Series out(ord);
    for (std::size_t i = 0; i <= ord; ++i) {
      if (a[i].is_zero()) continue;
      for (std::size_t j = 0; i + j <= ord; ++j) out[i + j] += a[i] * b[j];
    }
    return out;
  }
  friend Series operator*(Series a, const Rational& k) {
    for (auto& c : a.coeffs_) c *= k;
    return a;
  }

  /// Multiplicative inverse; the constant term must be non-zero.
  Series inverse() const {
    if (coeffs_.empty() || coeffs_[0].is_zero())
      throw std::domain_error("series inverse needs a non-zero constant term");
    Series out(order());
    out[0] = Rational(1) / coeffs_[0];
    for (std::size_t n = 1; n <= order(); ++n) {
      Rational acc(0);
      for (std::size_t k = 1; k <= n; ++k) acc += coeffs_[k] * out[n - k];
      out[n] = -acc / coeffs_[0];
    }
    return out;
  }

  /// Divides by x^k; the first k coefficients must vanish. Loses k orders.
  Series shift_down(std::size_t k) const {
    if (k > order()) throw std::domain_error("series shift beyond known order");
    for (std::size_t i = 0; i < k; ++i)
      if (!coeffs_[i].is_zero()) throw std::domain_error("series shift of a non-vanishing term");
    return Series(std::vector<Rational>(coeffs_.begin() + static_cast<std::ptrdiff_t>(k), coeffs_.end()),
                  order() - k);
  }

  /// f(g(x)) with g(0) = 0.
  Series compose(const Series& inner) const {
    if (!inner[0].is_zero()) throw std::domain_error("series composition needs inner(0) = 0");
    const auto ord = std::min(order(), inner.order());
    Series out(ord);
    Series power(ord);
    power[0] = Rational(1);
    for (std::size_t k = 0; k <= ord; ++k) {
      if (!coeffs_[k].is_zero())
        for (std::size_t i = 0; i <= ord; ++i) out[i] += coeffs_[k] * power[i];
      power = power * inner.truncated(ord);
    }
    return out;
  }

  friend bool operator==(const Series& a, const Series& b) { return a.coeffs_ == b.coeffs_; }

 private:
  std::vector<Rational> coeffs_;
};

/// Ratio of two series that both vanish at 0 to first order; the result is
/// known through order min(num, den) - 1.
inline Series divide_vanishing(const Series& num, const Series& den) {
  return num.shift_down(1) * den.shift_down(1).inverse();
}

}  // namespace ballvol
