#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ballvol/ball.hpp"
#include "ballvol/interval.hpp"

namespace ballvol {

/// The expressions in Omega_n that the bounds bracket.
enum class QuantityKind {
  kLogOmegaPerN,  // (1/n) ln Omega_n
  kLogOmegaDiff,  // (1/n) ln Omega_n - (1/(n+1)) ln Omega_{n+1}
  kLogRatio,      // ln(Omega_{n-1} / Omega_n)
  kRatio,         // Omega_{n-1} / Omega_n
  kSumRatio,      // Omega_n / (Omega_{n-1} + Omega_{n+1})
  kGeoRatio,      // Omega_n^2 / (Omega_{n-1} Omega_{n+1})
  kGeoLog,        // ln of kGeoRatio
};

inline std::string_view quantity_name(QuantityKind q) {
  switch (q) {
    case QuantityKind::kLogOmegaPerN: return "LOG_OMEGA_PER_N";
    case QuantityKind::kLogOmegaDiff: return "LOG_OMEGA_DIFF";
    case QuantityKind::kLogRatio: return "LOG_RATIO";
    case QuantityKind::kRatio: return "RATIO";
    case QuantityKind::kSumRatio: return "SUM_RATIO";
    case QuantityKind::kGeoRatio: return "GEO_RATIO";
    case QuantityKind::kGeoLog: return "GEO_LOG";
  }
  return "?";
}

namespace detail {

inline PrecInterval log_rational(const Rational& q, mpfr_prec_t prec) {
  if (q.sign() <= 0) throw DomainError(DomainError::Kind::kUndefined, "log of a non-positive rational");
  return log(PrecInterval::from_integer(q.numerator(), prec)) - log(PrecInterval::from_integer(q.denominator(), prec));
}

// ln(q pi^k) = ln q + k ln pi
inline PrecInterval log_monomial(const PiExpression& value, mpfr_prec_t prec) {
  const auto [q, k] = value.as_monomial();
  PrecInterval out = log_rational(q, prec);
  if (k != 0) out = out + PrecInterval::from_long(k, prec) * log(PrecInterval::pi(prec));
  return out;
}

inline PrecInterval log_omega(long n, mpfr_prec_t prec) { return log_monomial(omega_exact(n).value, prec); }

}  // namespace detail

/// Certified enclosure of a quantity at dimension n >= 1, computed from the
/// exact pi-monomials (no floating Gamma).
inline PrecInterval target_quantity(QuantityKind kind, long n, mpfr_prec_t prec) {
  if (n < 1) throw std::invalid_argument("target_quantity: n must be >= 1");
  switch (kind) {
    case QuantityKind::kLogOmegaPerN:
      return detail::log_omega(n, prec) / PrecInterval::from_long(n, prec);
    case QuantityKind::kLogOmegaDiff:
      return detail::log_omega(n, prec) / PrecInterval::from_long(n, prec) -
             detail::log_omega(n + 1, prec) / PrecInterval::from_long(n + 1, prec);
    case QuantityKind::kLogRatio:
      return detail::log_monomial(ratio_exact(n), prec);
    case QuantityKind::kRatio:
      return PrecInterval::from_pi_expression(ratio_exact(n), prec);
    case QuantityKind::kSumRatio: {
      const auto s = sum_ratio_exact(n);
      return PrecInterval::from_pi_expression(s.numerator, prec) / PrecInterval::from_pi_expression(s.denominator, prec);
    }
    case QuantityKind::kGeoRatio:
      return PrecInterval::from_pi_expression(geo_ratio_exact(n), prec);
    case QuantityKind::kGeoLog:
      return detail::log_monomial(geo_ratio_exact(n), prec);
  }
  throw std::invalid_argument("unknown quantity");
}

}  // namespace ballvol
