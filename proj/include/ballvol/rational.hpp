#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include <gmpxx.h>

namespace ballvol {

/// Arbitrary-precision signed rational, always kept in lowest terms with a
/// positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den) : Rational(mpz_class(num), mpz_class(den)) {}
  Rational(mpz_class num, mpz_class den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    value_ = mpq_class(std::move(num), std::move(den));
    value_.canonicalize();
  }
  explicit Rational(mpq_class q) : value_(std::move(q)) { value_.canonicalize(); }

  /// Accepts "num/den" or a bare integer, base 10, optional leading sign.
  static Rational parse(std::string_view text) {
    const auto slash = text.find('/');
    const std::string num(text.substr(0, slash));
    const std::string den = slash == std::string_view::npos ? std::string("1")
                                                             : std::string(text.substr(slash + 1));
    mpz_class n, d;
    if (num.empty() || den.empty() || n.set_str(strip_plus(num), 10) != 0 ||
        d.set_str(strip_plus(den), 10) != 0) {
      throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    }
    return Rational(std::move(n), std::move(d));
  }

  const mpz_class& numerator() const { return value_.get_num(); }
  const mpz_class& denominator() const { return value_.get_den(); }
  const mpq_class& get() const { return value_; }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return denominator() == 1; }

  /// "num/den"; integers print without the denominator.
  std::string str() const { return is_integer() ? numerator().get_str() : fraction(); }
  /// Always "num/den", the serialized form.
  std::string fraction() const { return numerator().get_str() + "/" + denominator().get_str(); }

  double to_double() const { return value_.get_d(); }

  Rational operator-() const { return Rational(mpq_class(-value_)); }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("rational division by zero");
    value_ /= o.value_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  static std::string strip_plus(const std::string& s) {
    return !s.empty() && s.front() == '+' ? s.substr(1) : s;
  }

  mpq_class value_{0};
};

/// Integer power; negative exponents invert (zero base with negative exponent throws).
inline Rational pow(const Rational& base, long exponent) {
  if (exponent < 0) return Rational(1) / pow(base, -exponent);
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.numerator().get_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), base.denominator().get_mpz_t(), static_cast<unsigned long>(exponent));
  return Rational(std::move(num), std::move(den));
}

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

/// Generalized binomial coefficient v(v-1)...(v-k+1)/k!.
inline Rational binomial_general(const Rational& v, long k) {
  if (k < 0) throw std::invalid_argument("binomial_general: negative k");
  Rational out(1);
  for (long i = 0; i < k; ++i) {
    out *= (v - Rational(i));
    out /= Rational(i + 1);
  }
  return out;
}

}  // namespace ballvol
