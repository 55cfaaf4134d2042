#pragma once

#include <algorithm>
#include <cctype>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ballvol/coeffs.hpp"
#include "ballvol/expr.hpp"

namespace ballvol {

enum class Side { kLower, kUpper };

inline std::string_view side_name(Side s) { return s == Side::kLower ? "lower" : "upper"; }

/// One parameterization of a two-sided inequality. A missing side is a
/// one-sided statement.
struct BoundVariant {
  std::string name;
  std::optional<Expr> lower;
  std::optional<Expr> upper;
  // Sides whose printed form is known to disagree with the exact values; the
  // scan records their outcome instead of asserting it.
  bool audit_lower = false;
  bool audit_upper = false;
  std::string note;

  const std::optional<Expr>& side(Side s) const { return s == Side::kLower ? lower : upper; }
  bool audited(Side s) const { return s == Side::kLower ? audit_lower : audit_upper; }
};

/// lower(n) < quantity(n) < upper(n), claimed from the stated n per side.
struct BoundCase {
  std::string id;
  QuantityKind quantity = QuantityKind::kRatio;
  std::vector<BoundVariant> variants;
  long claimed_lower_from = 1;
  long claimed_upper_from = 1;
  std::string source;

  long claimed_from(Side s) const { return s == Side::kLower ? claimed_lower_from : claimed_upper_from; }

  const BoundVariant& variant(std::string_view name) const {
    for (const auto& v : variants)
      if (v.name == name) return v;
    throw std::invalid_argument("case " + id + " has no variant '" + std::string(name) + "'");
  }
};

namespace detail {

inline Rational q(long num, long den = 1) { return Rational(num, den); }

inline Expr inv_n() { return Expr(1L) / Expr::n(); }

// (1/n) ln[ (pi (n + a))^(-1/2) (2 pi e / n)^(n/2) ]
inline Expr log_stirling_omega_per_n(const Expr& a) {
  const Expr n = Expr::n();
  const Expr pi = Expr::pi();
  return (Expr(q(-1, 2)) * log(pi * (n + a)) + n / 2L * log(Expr(2L) * pi * Expr::euler() / n)) / n;
}

// -(n+1)/(2n) ln(n/2) + (1/2) ln(pi e) - ln(2 pi)/(2n)
inline Expr log_omega_head() {
  const Expr n = Expr::n();
  const Expr pi = Expr::pi();
  return -((n + 1L) / (Expr(2L) * n)) * log(n / 2L) + Expr(q(1, 2)) * log(pi * Expr::euler()) -
         log(Expr(2L) * pi) / (Expr(2L) * n);
}

// Psi(n) = -(n+1)/(2n) ln(n/2) + (n+2)/(2n+2) ln((n+1)/2) - ln(2 pi)/(2n(n+1))
inline Expr psi_head() {
  const Expr n = Expr::n();
  const Expr pi = Expr::pi();
  return -((n + 1L) / (Expr(2L) * n)) * log(n / 2L) + (n + 2L) / (Expr(2L) * n + 2L) * log((n + 1L) / 2L) -
         log(Expr(2L) * pi) / (Expr(2L) * n * (n + 1L));
}

// sum_k c_k / n^k from (power, coefficient) pairs
inline Expr inverse_poly(std::initializer_list<std::pair<long, PiExpression>> terms) {
  std::optional<Expr> acc;
  for (const auto& [p, c] : terms) {
    Expr t = p == 0 ? Expr(c) : Expr(c) / powi(Expr::n(), p);
    acc = acc ? *acc + t : t;
  }
  return acc ? *acc : Expr(0L);
}

inline PiExpression pi_poly(std::initializer_list<std::pair<int, Rational>> terms) {
  PiExpression out;
  for (const auto& [k, c] : terms) out += PiExpression::monomial(c, k);
  return out;
}

inline std::vector<BoundCase> build_catalog() {
  const Expr n = Expr::n();
  const Expr pi = Expr::pi();
  const Expr e = Expr::euler();
  const Expr ln2 = log(Expr(2L)), ln3 = log(Expr(3L)), lnpi = log(pi);
  std::vector<BoundCase> cat;

  {
    const Expr mu = inverse_poly({{2, q(1, 6)}, {4, q(-1, 45)}, {6, q(8, 315)}, {8, q(-8, 105)}});
    const Expr head = log_omega_head();
    BoundCase c{"NEW_AB", QuantityKind::kLogOmegaPerN, {}, 1, 1, "alpha(n) < (1/n) ln Omega_n < beta(n)"};
    c.variants.push_back({"closed_form", head - mu - inverse_poly({{10, q(128, 297)}}), head - mu, false, false,
                          "n^-10 coefficient 128/297 = 2^8 B_10 / (5*9)"});
    c.variants.push_back({"printed", head - mu - inverse_poly({{10, q(1, 128)}}), head - mu, true, false,
                          "n^-10 coefficient 1/128 as printed"});
    cat.push_back(std::move(c));
  }
  {
    const Expr theta = inverse_poly({{0, q(1, 3)}, {1, q(1, 18)}, {2, q(-31, 810)}});
    const Expr nu = theta - inverse_poly({{3, q(139, 9720)}});
    BoundCase c{"NEW_33", QuantityKind::kLogOmegaPerN, {}, 3, 1,
                "(pi(n+theta))^-1/2 (2 pi e/n)^(n/2) < Omega_n < (pi(n+nu))^-1/2 (2 pi e/n)^(n/2)"};
    c.variants.push_back({"default", log_stirling_omega_per_n(theta), log_stirling_omega_per_n(nu), false, false,
                          "compared on the (1/n) ln scale"});
    cat.push_back(std::move(c));
  }
  {
    const Expr lower = psi_head() - inverse_poly({{3, q(1, 3)}});
    BoundCase c{"NEW_PSI", QuantityKind::kLogOmegaDiff, {}, 1, 1,
                "Psi(n) - 1/(3n^3) < (1/n) ln Omega_n - (1/(n+1)) ln Omega_{n+1} < Psi(n) - 1/(3n^3) + 1/(2n^4)"};
    c.variants.push_back({"default", lower, lower + inverse_poly({{4, q(1, 2)}}), false, false, ""});
    cat.push_back(std::move(c));
  }
  {
    const Expr a = Expr(q(1, 2)) * log(n / (Expr(2L) * pi)) +
                   inverse_poly({{1, q(1, 4)}, {3, q(-1, 24)}, {5, q(1, 20)}, {7, q(-17, 112)}});
    BoundCase c{"NEW_AB_RATIO", QuantityKind::kLogRatio, {}, 1, 1, "a(n) < ln(Omega_{n-1}/Omega_n) < b(n)"};
    c.variants.push_back({"default", a, a + inverse_poly({{9, q(31, 36)}}), false, false, ""});
    cat.push_back(std::move(c));
  }
  {
    const Expr cn = inverse_poly({{0, q(1)}, {1, q(1, 4)}, {2, q(1, 32)}, {3, q(-5, 128)}, {4, q(-21, 2048)},
                                  {5, q(399, 8192)}});
    const Expr dn = cn + inverse_poly({{6, q(869, 65536)}});
    const Expr scale = sqrt(n / (Expr(2L) * pi));
    BoundCase c{"NEW_CD", QuantityKind::kRatio, {}, 12, 1,
                "sqrt(n/(2 pi)) c(n) < Omega_{n-1}/Omega_n < sqrt(n/(2 pi)) d(n)"};
    c.variants.push_back({"default", scale * cn, scale * dn, false, false, ""});
    cat.push_back(std::move(c));
  }
  {
    const PiExpression inv_pi = PiExpression::pi(-1);
    const Expr upper_radicand = (n + Expr(q(1, 2))) / (Expr(2L) * pi) +
                                inverse_poly({{1, Rational(1, 16) * inv_pi}, {2, Rational(-1, 32) * inv_pi}});
    const Expr lower_radicand = upper_radicand + inverse_poly({{3, Rational(-5, 256) * inv_pi}});
    BoundCase c{"NEW_SQRT", QuantityKind::kRatio, {}, 1, 2, "truncations of the squared-ratio series under a root"};
    c.variants.push_back({"default", sqrt(lower_radicand), sqrt(upper_radicand), false, false, ""});
    cat.push_back(std::move(c));
  }
  {
    const Expr head = Expr(2L) * pi / (n + Expr(4L) * pi + Expr(q(1, 2)));
    const Expr eps1 = inverse_poly({{3, pi_poly({{1, q(-1, 4)}, {2, q(4)}, {3, q(-8)}})}});
    const Expr eps2 = eps1 + inverse_poly({{4, pi_poly({{1, q(3, 8)}, {2, q(-7)}, {3, q(-12)}, {4, q(64)}})}});
    BoundCase c{"NEW_O6", QuantityKind::kSumRatio, {}, 1, 1,
                "sqrt(2 pi/(n+4 pi+1/2) + eps1(n)) < Omega_n/(Omega_{n-1}+Omega_{n+1}) < sqrt(2 pi/(n+4 pi+1/2) + eps2(n))"};
    c.variants.push_back({"default", sqrt(head + eps1), sqrt(head + eps2), true, false,
                          "lower radicand is negative for small n"});
    cat.push_back(std::move(c));
  }
  {
    const Expr p = inverse_poly({{1, q(1, 2)}, {2, q(-1, 2)}, {3, q(5, 12)}, {4, q(-1, 4)}, {5, q(1, 10)}, {6, q(-1, 6)}});
    BoundCase c{"NEW_PQ", QuantityKind::kGeoLog, {}, 1, 1, "p(n) < ln(Omega_n^2/(Omega_{n-1}Omega_{n+1})) < q(n)"};
    c.variants.push_back({"default", p, p + inverse_poly({{6, q(1, 6)}}), false, false, ""});
    cat.push_back(std::move(c));
  }
  {
    const Expr r = inverse_poly({{0, q(1)}, {1, q(1, 2)}, {2, q(-3, 8)}, {3, q(3, 16)}});
    BoundCase c{"NEW_RS", QuantityKind::kGeoRatio, {}, 6, 1, "r(n) < Omega_n^2/(Omega_{n-1}Omega_{n+1}) < s(n)"};
    c.variants.push_back({"default", r, r + inverse_poly({{4, q(3, 128)}}), false, false, ""});
    cat.push_back(std::move(c));
  }
  {
    const Expr base = Expr(1L) + inv_n();
    const Expr lower_exp = inverse_poly({{0, q(1, 2)}, {1, q(-1, 4)}, {2, q(1, 8)}});
    const Expr upper_exp = lower_exp + inverse_poly({{3, q(1, 48)}});
    BoundCase c{"NEW_OO", QuantityKind::kGeoRatio, {}, 5, 1, "(1+1/n)^(1/2-1/(4n)+1/(8n^2)[+1/(48n^3)])"};
    c.variants.push_back({"default", pow(base, lower_exp), pow(base, upper_exp), false, false, ""});
    cat.push_back(std::move(c));
  }
  {
    BoundCase c{"CL_CHEN_OMEGA", QuantityKind::kLogOmegaPerN, {}, 1, 1,
                "Chen-Lin: (pi(n+a))^-1/2 (2 pi e/n)^(n/2) <= Omega_n < (pi(n+b))^-1/2 (2 pi e/n)^(n/2)"};
    c.variants.push_back({"default", log_stirling_omega_per_n(e / 2L - 1L), log_stirling_omega_per_n(Expr(q(1, 3))),
                          false, false, "a = e/2 - 1, b = 1/3; equality at n = 1"});
    cat.push_back(std::move(c));
  }
  {
    const Expr two_pi = Expr(2L) * pi;
    BoundCase c{"CL_BORG_ALZ_QV", QuantityKind::kRatio, {}, 1, 1,
                "sqrt((n+a)/(2 pi)) <= Omega_{n-1}/Omega_n <= sqrt((n+b)/(2 pi))"};
    c.variants.push_back({"borgwardt", sqrt(n / two_pi), sqrt((n + 1L) / two_pi), false, false, "a = 0, b = 1"});
    c.variants.push_back({"alzer_qiu_vuorinen", sqrt((n + Expr(q(1, 2))) / two_pi),
                          sqrt((n + pi / 2L - 1L) / two_pi), false, false, "a = 1/2, b = pi/2 - 1"});
    cat.push_back(std::move(c));
  }
  {
    const Expr alpha = Expr(3L) * pi * sqrt(Expr(2L)) / (Expr(4L) * pi + 6L);
    const Expr beta = sqrt(Expr(2L) * pi);
    BoundCase c{"CL_ALZ_SUM", QuantityKind::kSumRatio, {}, 1, 1,
                "Alzer: alpha*/sqrt(n) <= Omega_n/(Omega_{n-1}+Omega_{n+1}) < beta*/sqrt(n)"};
    c.variants.push_back({"default", alpha / sqrt(n), beta / sqrt(n), false, false,
                          "alpha* = 3 pi sqrt(2)/(4 pi + 6), beta* = sqrt(2 pi); equality at n = 2"});
    cat.push_back(std::move(c));
  }
  {
    const PiExpression a = pi_poly({{0, q(-1)}, {1, q(1, 2)}, {2, q(1)}, {3, q(1, 2)}});  // pi(1+pi)^2/2 - 1
    const PiExpression b = pi_poly({{0, q(1, 2)}, {1, q(4)}});
    BoundCase c{"CL_CHEN_SUM", QuantityKind::kSumRatio, {}, 1, 1,
                "Chen-Lin: sqrt(2 pi/(n+a)) <= Omega_n/(Omega_{n-1}+Omega_{n+1}) < sqrt(2 pi/(n+b))"};
    c.variants.push_back({"default", sqrt(Expr(2L) * pi / (n + a)), sqrt(Expr(2L) * pi / (n + b)), false, false,
                          "a = pi(1+pi)^2/2 - 1, b = 1/2 + 4 pi; equality at n = 1"});
    cat.push_back(std::move(c));
  }
  {
    const Expr base = inverse_poly({{0, q(1)}, {1, q(1, 2)}, {2, q(-3, 8)}});
    const Expr mu = (Expr(2L) * ln2 - lnpi) / (Expr(2L) * ln3 - Expr(3L) * ln2);
    BoundCase c{"CL_CHEN_GEO", QuantityKind::kGeoRatio, {}, 1, 1,
                "Chen-Lin: (1+1/(2n)-3/(8n^2))^lambda < Omega_n^2/(Omega_{n-1}Omega_{n+1}) <= (...)^mu"};
    c.variants.push_back({"default", base, pow(base, mu), false, false,
                          "lambda = 1, mu = (2 ln 2 - ln pi)/(2 ln 3 - 3 ln 2); equality at n = 1"});
    cat.push_back(std::move(c));
  }
  {
    BoundCase c{"CL_AND_KR", QuantityKind::kGeoRatio, {}, 1, 1,
                "Anderson et al., Klain-Rota: 1 < Omega_n^2/(Omega_{n-1}Omega_{n+1}) < 1 + 1/n"};
    c.variants.push_back({"default", Expr(1L), Expr(1L) + inv_n(), false, false, ""});
    cat.push_back(std::move(c));
  }
  {
    const Expr base = Expr(1L) + inv_n();
    BoundCase c{"CL_ALZ_POW", QuantityKind::kGeoRatio, {}, 1, 1,
                "Alzer: (1+1/n)^alpha <= Omega_n^2/(Omega_{n-1}Omega_{n+1}) < (1+1/n)^beta"};
    c.variants.push_back({"default", pow(base, Expr(2L) - lnpi / ln2), pow(base, Expr(q(1, 2))), false, false,
                          "alpha = 2 - log2(pi), beta = 1/2; equality at n = 1"});
    cat.push_back(std::move(c));
  }
  {
    const Expr base = Expr(1L) + Expr(1L) / (n + 1L);
    BoundCase c{"CL_MERKLE", QuantityKind::kGeoRatio, {}, 1, 1,
                "Merkle: (1+1/(n+1))^(1/2) < Omega_n^2/(Omega_{n-1}Omega_{n+1})"};
    c.variants.push_back({"default", pow(base, Expr(q(1, 2))), std::nullopt, false, false, "one-sided"});
    cat.push_back(std::move(c));
  }
  {
    const Expr base = Expr(1L) + Expr(1L) / (n + 1L);
    const Expr beta = (Expr(2L) * ln2 - lnpi) / (ln3 - ln2);
    BoundCase c{"CL_CHEN_POW", QuantityKind::kGeoRatio, {}, 1, 1,
                "Chen-Lin: (1+1/(n+1))^alpha < Omega_n^2/(Omega_{n-1}Omega_{n+1}) <= (1+1/(n+1))^beta"};
    c.variants.push_back({"default", pow(base, Expr(q(1, 2))), pow(base, beta), false, false,
                          "alpha = 1/2, beta = (2 ln 2 - ln pi)/(ln 3 - ln 2); equality at n = 1"});
    cat.push_back(std::move(c));
  }
  return cat;
}

inline std::string upper_case(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
  return out;
}

}  // namespace detail

/// Every inequality audited by the harness: ten new bounds and nine classical ones.
inline const std::vector<BoundCase>& bound_catalog() {
  static const std::vector<BoundCase> catalog = detail::build_catalog();
  return catalog;
}

/// Case lookup, case-insensitive.
inline const BoundCase& find_case(std::string_view id) {
  const auto key = detail::upper_case(id);
  for (const auto& c : bound_catalog())
    if (c.id == key) return c;
  throw std::invalid_argument("unknown case id '" + std::string(id) + "'");
}

struct CaseSelection {
  const BoundCase* bound_case = nullptr;
  const BoundVariant* variant = nullptr;
};

/// Parses "CASE" (first variant) or "CASE:variant".
inline CaseSelection select_case(std::string_view spec) {
  const auto colon = spec.find(':');
  const BoundCase& c = find_case(spec.substr(0, colon));
  if (colon == std::string_view::npos) return {&c, &c.variants.front()};
  return {&c, &c.variant(spec.substr(colon + 1))};
}

/// Exact element of the rational span of {ln 2, ln 3, ln pi}.
struct LogForm {
  Rational ln2, ln3, lnpi;

  /// ln(2^a 3^b pi^k) for a monomial whose rational part has no other prime.
  static LogForm of(const PiExpression& monomial) {
    const auto [q, k] = monomial.as_monomial();
    if (q.sign() <= 0) throw std::invalid_argument("LogForm::of: non-positive value");
    mpz_class num = q.numerator(), den = q.denominator();
    const long a = strip_prime(num, 2) - strip_prime(den, 2);
    const long b = strip_prime(num, 3) - strip_prime(den, 3);
    if (num != 1 || den != 1) throw std::invalid_argument("LogForm::of: prime other than 2 and 3");
    return {Rational(a), Rational(b), Rational(k)};
  }

  friend LogForm operator+(const LogForm& a, const LogForm& b) { return {a.ln2 + b.ln2, a.ln3 + b.ln3, a.lnpi + b.lnpi}; }
  friend LogForm operator-(const LogForm& a, const LogForm& b) { return {a.ln2 - b.ln2, a.ln3 - b.ln3, a.lnpi - b.lnpi}; }
  friend LogForm operator*(const Rational& r, const LogForm& a) { return {r * a.ln2, r * a.ln3, r * a.lnpi}; }
  friend bool operator==(const LogForm& a, const LogForm& b) = default;

  /// r with *this == r * other, if one exists.
  std::optional<Rational> ratio_to(const LogForm& other) const {
    std::optional<Rational> r;
    const Rational* mine[3] = {&ln2, &ln3, &lnpi};
    const Rational* theirs[3] = {&other.ln2, &other.ln3, &other.lnpi};
    for (int i = 0; i < 3; ++i) {
      if (theirs[i]->is_zero()) {
        if (!mine[i]->is_zero()) return std::nullopt;
        continue;
      }
      const Rational cand = *mine[i] / *theirs[i];
      if (r && *r != cand) return std::nullopt;
      r = cand;
    }
    return r;
  }

 private:
  static long strip_prime(mpz_class& z, unsigned long p) {
    long v = 0;
    while (mpz_divisible_ui_p(z.get_mpz_t(), p)) {
      z /= p;
      ++v;
    }
    return v;
  }
};

/// True iff base^(num/den) == target exactly, all three logs living in the
/// span of {ln 2, ln 3, ln pi}.
inline bool log_power_identity(const LogForm& exponent_num, const LogForm& exponent_den, const PiExpression& base,
                               const PiExpression& target) {
  const auto r = LogForm::of(base).ratio_to(exponent_den);
  return r && (*r * exponent_num == LogForm::of(target));
}

}  // namespace ballvol
