#pragma once

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>

#include <gmp.h>
#include <mpfr.h>

#include "ballvol/pi_expression.hpp"

namespace ballvol {

/// Raised when an operation leaves its real domain. kUndefined means the
/// argument enclosure lies entirely outside the domain; kIndeterminate means it
/// straddles the boundary and more precision may resolve it.
class DomainError : public std::runtime_error {
 public:
  enum class Kind { kUndefined, kIndeterminate };
  DomainError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Closed interval [lo, hi] of MPFR reals at a fixed working precision.
/// Every operation rounds outward, so the enclosed real stays enclosed.
class PrecInterval {
 public:
  explicit PrecInterval(mpfr_prec_t prec_bits = 128) {
    mpfr_init2(lo_, prec_bits);
    mpfr_init2(hi_, prec_bits);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
  }
  PrecInterval(const PrecInterval& o) {
    mpfr_init2(lo_, o.prec_bits());
    mpfr_init2(hi_, o.prec_bits());
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }
  PrecInterval(PrecInterval&& o) noexcept : PrecInterval(2) { swap(o); }
  PrecInterval& operator=(PrecInterval o) noexcept {
    swap(o);
    return *this;
  }
  ~PrecInterval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
  }

  void swap(PrecInterval& o) noexcept {
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
  }

  static PrecInterval from_rational(const Rational& q, mpfr_prec_t prec) {
    PrecInterval r(prec);
    mpfr_set_q(r.lo_, q.get().get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, q.get().get_mpq_t(), MPFR_RNDU);
    return r;
  }
  static PrecInterval from_long(long v, mpfr_prec_t prec) {
    PrecInterval r(prec);
    mpfr_set_si(r.lo_, v, MPFR_RNDD);
    mpfr_set_si(r.hi_, v, MPFR_RNDU);
    return r;
  }
  static PrecInterval from_integer(const mpz_class& z, mpfr_prec_t prec) {
    PrecInterval r(prec);
    mpfr_set_z(r.lo_, z.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi_, z.get_mpz_t(), MPFR_RNDU);
    return r;
  }
  /// [lo, hi] from two decimal strings, rounded outward.
  static PrecInterval from_decimal(const std::string& lo, const std::string& hi, mpfr_prec_t prec) {
    PrecInterval r(prec);
    if (mpfr_set_str(r.lo_, lo.c_str(), 10, MPFR_RNDD) != 0 || mpfr_set_str(r.hi_, hi.c_str(), 10, MPFR_RNDU) != 0)
      throw std::invalid_argument("malformed decimal interval");
    return r;
  }
  static PrecInterval pi(mpfr_prec_t prec) {
    PrecInterval r(prec);
    mpfr_const_pi(r.lo_, MPFR_RNDD);
    mpfr_const_pi(r.hi_, MPFR_RNDU);
    return r;
  }
  static PrecInterval e(mpfr_prec_t prec) {
    PrecInterval one = from_long(1, prec);
    return exp(one);
  }
  /// sum q_k pi^k
  static PrecInterval from_pi_expression(const PiExpression& value, mpfr_prec_t prec) {
    PrecInterval acc(prec);
    if (value.is_zero()) return acc;
    const PrecInterval p = pi(prec);
    for (const auto& [k, q] : value.terms()) acc = acc + from_rational(q, prec) * powi(p, k);
    return acc;
  }

  mpfr_prec_t prec_bits() const { return mpfr_get_prec(lo_); }
  mpfr_srcptr lower() const { return lo_; }
  mpfr_srcptr upper() const { return hi_; }
  double lower_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
  double upper_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }
  double mid_d() const { return 0.5 * (lower_d() + upper_d()); }

  bool is_positive() const { return mpfr_sgn(lo_) > 0; }
  bool is_negative() const { return mpfr_sgn(hi_) < 0; }
  bool contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }
  bool contains(const PrecInterval& inner) const {
    return mpfr_lessequal_p(lo_, inner.lo_) && mpfr_lessequal_p(inner.hi_, hi_);
  }
  bool certainly_less(const PrecInterval& o) const { return mpfr_less_p(hi_, o.lo_); }

  /// Upper bound of hi - lo.
  double width() const {
    mpfr_t w;
    mpfr_init2(w, 64);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    const double out = mpfr_get_d(w, MPFR_RNDU);
    mpfr_clear(w);
    return out;
  }
  /// floor(log2(hi - lo)); very negative for tight enclosures, large for a point.
  long width_log2() const {
    mpfr_t w;
    mpfr_init2(w, 64);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    const long out = mpfr_zero_p(w) ? -(1L << 40) : mpfr_get_exp(w) - 1;
    mpfr_clear(w);
    return out;
  }

  friend PrecInterval operator-(const PrecInterval& a) {
    PrecInterval r(a.prec_bits());
    mpfr_neg(r.lo_, a.hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
    return r;
  }
  friend PrecInterval operator+(const PrecInterval& a, const PrecInterval& b) {
    PrecInterval r(result_prec(a, b));
    mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
  }
  friend PrecInterval operator-(const PrecInterval& a, const PrecInterval& b) {
    PrecInterval r(result_prec(a, b));
    mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return r;
  }
  friend PrecInterval operator*(const PrecInterval& a, const PrecInterval& b) {
    const auto prec = result_prec(a, b);
    PrecInterval r(prec);
    mpfr_t t;
    mpfr_init2(t, prec);
    mpfr_srcptr xs[2] = {a.lo_, a.hi_};
    mpfr_srcptr ys[2] = {b.lo_, b.hi_};
    mpfr_set_inf(r.lo_, 1);
    mpfr_set_inf(r.hi_, -1);
    for (auto x : xs) {
      for (auto y : ys) {
        mpfr_mul(t, x, y, MPFR_RNDD);
        mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
        mpfr_mul(t, x, y, MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
      }
    }
    mpfr_clear(t);
    return r;
  }
  friend PrecInterval operator/(const PrecInterval& a, const PrecInterval& b) {
    if (b.contains_zero()) {
      const bool point_zero = mpfr_zero_p(b.lo_) && mpfr_zero_p(b.hi_);
      throw DomainError(point_zero ? DomainError::Kind::kUndefined : DomainError::Kind::kIndeterminate,
                        "division by an interval containing 0");
    }
    const auto prec = result_prec(a, b);
    PrecInterval inv(prec);
    mpfr_ui_div(inv.lo_, 1, b.hi_, MPFR_RNDD);
    mpfr_ui_div(inv.hi_, 1, b.lo_, MPFR_RNDU);
    return a * inv;
  }

  friend PrecInterval log(const PrecInterval& a) {
    if (mpfr_sgn(a.hi_) <= 0) throw DomainError(DomainError::Kind::kUndefined, "log of a non-positive value");
    if (mpfr_sgn(a.lo_) <= 0) throw DomainError(DomainError::Kind::kIndeterminate, "log argument encloses 0");
    PrecInterval r(a.prec_bits());
    mpfr_log(r.lo_, a.lo_, MPFR_RNDD);
    mpfr_log(r.hi_, a.hi_, MPFR_RNDU);
    return r;
  }
  friend PrecInterval exp(const PrecInterval& a) {
    PrecInterval r(a.prec_bits());
    mpfr_exp(r.lo_, a.lo_, MPFR_RNDD);
    mpfr_exp(r.hi_, a.hi_, MPFR_RNDU);
    return r;
  }
  friend PrecInterval sqrt(const PrecInterval& a) {
    if (mpfr_sgn(a.hi_) < 0) throw DomainError(DomainError::Kind::kUndefined, "sqrt of a negative value");
    if (mpfr_sgn(a.lo_) < 0) throw DomainError(DomainError::Kind::kIndeterminate, "sqrt radicand encloses 0");
    PrecInterval r(a.prec_bits());
    mpfr_sqrt(r.lo_, a.lo_, MPFR_RNDD);
    mpfr_sqrt(r.hi_, a.hi_, MPFR_RNDU);
    return r;
  }
  /// a^k for integer k (negative k divides).
  friend PrecInterval powi(const PrecInterval& a, long k) {
    if (k < 0) return from_long(1, a.prec_bits()) / powi(a, -k);
    PrecInterval result = from_long(1, a.prec_bits());
    PrecInterval base = a;
    for (long e = k; e > 0; e >>= 1) {
      if (e & 1) result = result * base;
      if (e > 1) base = square(base);
    }
    return result;
  }
  /// base^exponent = exp(exponent * ln base) for base > 0.
  friend PrecInterval pow(const PrecInterval& base, const PrecInterval& exponent) {
    return exp(exponent * log(base));
  }
  friend PrecInterval square(const PrecInterval& a) {
    PrecInterval r = a * a;
    if (a.contains_zero()) mpfr_set_zero(r.lo_, 1);
    return r;
  }

  /// Decimal rendering with `digits` significant digits, round-to-nearest.
  /// Scientific by default; `general` picks %g style (no trailing zeros).
  static std::string format(mpfr_srcptr x, int digits, bool general = false) {
    if (mpfr_zero_p(x)) return "0";
    char* buf = nullptr;
    if (general)
      mpfr_asprintf(&buf, "%.*RNg", std::max(digits, 1), x);
    else
      mpfr_asprintf(&buf, "%.*RNe", std::max(digits - 1, 0), x);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
  }

  /// The longest decimal (up to `digits` significant digits) on which both
  /// endpoints agree; "[lo, hi]" when they share no leading digit.
  std::string to_decimal(int digits, bool general = false) const {
    if (mpfr_equal_p(lo_, hi_)) return format(lo_, digits, general);
    for (int d = digits; d >= 1; --d) {
      const auto a = format(lo_, d, general);
      if (a == format(hi_, d, general)) return a;
    }
    return "[" + format(lo_, 6) + ", " + format(hi_, 6) + "]";
  }

 private:
  static mpfr_prec_t result_prec(const PrecInterval& a, const PrecInterval& b) {
    return std::max(a.prec_bits(), b.prec_bits());
  }

  mpfr_t lo_;
  mpfr_t hi_;
};

}  // namespace ballvol
