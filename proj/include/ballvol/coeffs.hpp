#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ballvol/bernoulli.hpp"
#include "ballvol/pi_expression.hpp"
#include "ballvol/series.hpp"

namespace ballvol {

enum class SeriesId { BTail, Psi, Mu, C, S, Lambda, D, T, TShiftMixed, TShiftFull };

/// Expansion variable: powers of 1/n or of 1/(n+1).
enum class Variable { InvN, InvNPlus1 };

inline constexpr int kDefaultSeriesOrder = 12;

inline std::string_view series_name(SeriesId id) {
  switch (id) {
    case SeriesId::BTail: return "b";
    case SeriesId::Psi: return "psi";
    case SeriesId::Mu: return "mu";
    case SeriesId::C: return "c";
    case SeriesId::S: return "s";
    case SeriesId::Lambda: return "lambda";
    case SeriesId::D: return "d";
    case SeriesId::T: return "t";
    case SeriesId::TShiftMixed: return "tshift_mixed";
    case SeriesId::TShiftFull: return "tshift_full";
  }
  return "?";
}

inline std::optional<SeriesId> parse_series(std::string_view name) {
  for (auto id : {SeriesId::BTail, SeriesId::Psi, SeriesId::Mu, SeriesId::C, SeriesId::S, SeriesId::Lambda,
                  SeriesId::D, SeriesId::T, SeriesId::TShiftMixed, SeriesId::TShiftFull}) {
    if (series_name(id) == name) return id;
  }
  return std::nullopt;
}

inline std::string_view variable_name(Variable v) { return v == Variable::InvN ? "inv_n" : "inv_n_plus_1"; }

/// A coefficient family stored from index 0 (explicit zeros below start_index).
/// Entry i multiplies var^(stride * i).
struct CoeffSeries {
  SeriesId id = SeriesId::C;
  std::vector<PiExpression> coeffs;
  int start_index = 0;
  Variable variable = Variable::InvN;
  int stride = 1;

  std::size_t size() const { return coeffs.size(); }
  int power(std::size_t i) const { return stride * static_cast<int>(i); }
  Rational rational(std::size_t i) const { return coeffs.at(i).rational(); }

  std::vector<Rational> rationals() const {
    std::vector<Rational> out;
    out.reserve(coeffs.size());
    for (const auto& c : coeffs) out.push_back(c.rational());
    return out;
  }
};

namespace detail {

inline CoeffSeries make_series(SeriesId id, const std::vector<Rational>& values, int start, Variable var = Variable::InvN,
                               int stride = 1) {
  CoeffSeries s{id, {}, start, var, stride};
  s.coeffs.reserve(values.size());
  for (const auto& v : values) s.coeffs.emplace_back(v);
  return s;
}

inline Rational sign_power(int j) { return j % 2 == 0 ? Rational(1) : Rational(-1); }

// (-1)^k [B_{k+1}(1/2) - B_{k+1}(1)] 2^k
inline Rational ratio_bernoulli_weight(int k) {
  const Rational diff = bernoulli_poly_eval(k + 1, Rational(1, 2)) - bernoulli_poly_eval(k + 1, Rational(1));
  return sign_power(k) * diff * pow(Rational(2), k);
}

// (-1)^k {2B_{k+1}(1) - B_{k+1}(1/2) - B_{k+1}(3/2)} 2^k
inline Rational geo_bernoulli_weight(int k) {
  const Rational diff = Rational(2) * bernoulli_poly_eval(k + 1, Rational(1)) -
                        bernoulli_poly_eval(k + 1, Rational(1, 2)) - bernoulli_poly_eval(k + 1, Rational(3, 2));
  return sign_power(k) * diff * pow(Rational(2), k);
}

// e_0 = 1, e_j = (1/j) sum_{k=1}^{j} w_k e_{j-k}
inline std::vector<Rational> weighted_recursion(const std::vector<Rational>& weight, int order) {
  std::vector<Rational> e(static_cast<std::size_t>(order) + 1);
  e[0] = Rational(1);
  for (int j = 1; j <= order; ++j) {
    Rational acc(0);
    for (int k = 1; k <= j; ++k) acc += weight[static_cast<std::size_t>(k)] * e[static_cast<std::size_t>(j - k)];
    e[static_cast<std::size_t>(j)] = acc / Rational(j);
  }
  return e;
}

inline void require_order(int order, int minimum, const char* what) {
  if (order < minimum) throw std::invalid_argument(std::string(what) + ": order below " + std::to_string(minimum));
}

}  // namespace detail

/// Entry j is b_j = 2^(2j-2) B_2j / (j(2j-1)), the coefficient of n^(-2j) in
/// the Stirling-type tail of (1/n) ln Omega_n.
inline CoeffSeries b_tail_coeffs(int count) {
  detail::require_order(count, 1, "b_tail_coeffs");
  std::vector<Rational> b(static_cast<std::size_t>(count) + 1);
  for (int j = 1; j <= count; ++j)
    b[static_cast<std::size_t>(j)] = pow(Rational(2), 2 * j - 2) * bernoulli_number(2 * j) / Rational(j * (2 * j - 1));
  return detail::make_series(SeriesId::BTail, b, 1, Variable::InvN, 2);
}

/// mu_j of ln(Omega_{n-1}/Omega_n) = (1/2) ln(n/(2 pi)) + sum mu_j n^-j.
inline CoeffSeries mu_coeffs(int order) {
  detail::require_order(order, 1, "mu_coeffs");
  std::vector<Rational> mu(static_cast<std::size_t>(order) + 1);
  for (int j = 1; j <= order; ++j) mu[static_cast<std::size_t>(j)] = detail::ratio_bernoulli_weight(j) / Rational(j * (j + 1));
  return detail::make_series(SeriesId::Mu, mu, 1);
}

/// lambda_j of ln(Omega_n^2 / (Omega_{n-1} Omega_{n+1})) = sum lambda_j n^-j.
inline CoeffSeries lambda_coeffs(int order) {
  detail::require_order(order, 1, "lambda_coeffs");
  std::vector<Rational> lambda(static_cast<std::size_t>(order) + 1);
  for (int j = 1; j <= order; ++j)
    lambda[static_cast<std::size_t>(j)] = detail::geo_bernoulli_weight(j) / Rational(j * (j + 1));
  return detail::make_series(SeriesId::Lambda, lambda, 1);
}

/// Coefficients of exp(sum_{k>=1} g_k x^k) through x^order. g[0] is ignored.
inline std::vector<Rational> exp_transform(const std::vector<Rational>& g, int order) {
  if (static_cast<int>(g.size()) <= order) throw std::invalid_argument("exp_transform: g shorter than order");
  std::vector<Rational> weight(static_cast<std::size_t>(order) + 1);
  for (int k = 1; k <= order; ++k) weight[static_cast<std::size_t>(k)] = Rational(k) * g[static_cast<std::size_t>(k)];
  return detail::weighted_recursion(weight, order);
}

/// c_j of Omega_{n-1}/Omega_n = sqrt(n/(2 pi)) sum c_j n^-j, from the
/// Bernoulli-weighted recursion.
inline CoeffSeries c_coeffs(int order) {
  detail::require_order(order, 0, "c_coeffs");
  std::vector<Rational> weight(static_cast<std::size_t>(order) + 1);
  for (int k = 1; k <= order; ++k) weight[static_cast<std::size_t>(k)] = detail::ratio_bernoulli_weight(k) / Rational(k + 1);
  return detail::make_series(SeriesId::C, detail::weighted_recursion(weight, order), 0);
}

/// d_j of Omega_n^2 / (Omega_{n-1} Omega_{n+1}) = sum d_j n^-j.
inline CoeffSeries d_coeffs(int order) {
  detail::require_order(order, 0, "d_coeffs");
  std::vector<Rational> weight(static_cast<std::size_t>(order) + 1);
  for (int k = 1; k <= order; ++k) weight[static_cast<std::size_t>(k)] = detail::geo_bernoulli_weight(k) / Rational(k + 1);
  return detail::make_series(SeriesId::D, detail::weighted_recursion(weight, order), 0);
}

/// sum_{k=0}^{m} c_k c_{m-k}: coefficient of n^-m in (sum c_j n^-j)^2.
inline Rational c_square_coefficient(const std::vector<Rational>& c, int m) {
  Rational acc(0);
  for (int k = 0; k <= m; ++k) acc += c.at(static_cast<std::size_t>(k)) * c.at(static_cast<std::size_t>(m - k));
  return acc;
}

/// s_j (rational multiples of 1/pi) of
/// (Omega_{n-1}/Omega_n)^2 = (n + 1/2)/(2 pi) + sum_{j>=1} s_j n^-j.
inline CoeffSeries s_coeffs(int order) {
  detail::require_order(order, 1, "s_coeffs");
  const auto c = c_coeffs(order + 1).rationals();
  CoeffSeries s{SeriesId::S, {PiExpression{}}, 1, Variable::InvN, 1};
  for (int j = 1; j <= order; ++j)
    s.coeffs.push_back(PiExpression::monomial(c_square_coefficient(c, j + 1) / Rational(2), -1));
  return s;
}

/// The n^0 term of (n/(2 pi)) (sum c_j n^-j)^2, i.e. 2 c_1 / (2 pi); equals 1/(4 pi).
inline PiExpression s_constant_term() {
  const auto c = c_coeffs(1).rationals();
  return PiExpression::monomial(c_square_coefficient(c, 1) / Rational(2), -1);
}

/// t_j of Omega_n^2/(Omega_{n-1}Omega_{n+1}) ~ (1 + 1/n)^(sum t_j n^-j), solved
/// forward from sum_{j=1}^{m} (-1)^(j+1) t_{m-j} / j = lambda_m.
inline CoeffSeries t_coeffs(int order) {
  detail::require_order(order, 0, "t_coeffs");
  const auto lambda = lambda_coeffs(order + 1).rationals();
  std::vector<Rational> t(static_cast<std::size_t>(order) + 1);
  for (int m = 1; m <= order + 1; ++m) {
    Rational rest(0);
    for (int j = 2; j <= m; ++j)
      rest += detail::sign_power(j + 1) * t[static_cast<std::size_t>(m - j)] / Rational(j);
    t[static_cast<std::size_t>(m - 1)] = lambda[static_cast<std::size_t>(m)] - rest;
  }
  return detail::make_series(SeriesId::T, t, 0);
}

/// Coefficients (indexed by power of 1/n, through n^-order) of
/// n^(-2s) - (n+1)^(-2s), expanded by composing x^(2s) with x/(1+x).
inline std::vector<Rational> tail_reexpand(int s, int order) {
  if (s < 1) throw std::invalid_argument("tail_reexpand: s must be >= 1");
  if (order < 0) throw std::invalid_argument("tail_reexpand: negative order");
  const auto ord = static_cast<std::size_t>(order);
  Series monomial(ord);
  if (2 * s <= order) monomial[static_cast<std::size_t>(2 * s)] = Rational(1);
  const Series shifted = monomial.compose(Series::geometric_shift(Rational(-1), ord));
  return (monomial - shifted).coeffs();
}

/// psi_m of (1/n) ln Omega_n - (1/(n+1)) ln Omega_{n+1} ~ Psi(n) - sum psi_m n^-m:
///   psi_m = sum_{k>=1, s>=1, k+2s=m} (-1)^(k+1) C(2s-1+k, k) b_s.
inline CoeffSeries psi_coeffs(int order) {
  detail::require_order(order, 1, "psi_coeffs");
  const auto b = b_tail_coeffs(std::max(1, order / 2)).rationals();
  std::vector<Rational> psi(static_cast<std::size_t>(order) + 1);
  for (int m = 3; m <= order; ++m) {
    Rational acc(0);
    for (int s = 1; 2 * s < m; ++s) {
      const int k = m - 2 * s;
      acc += detail::sign_power(k + 1) * binomial_general(Rational(2 * s - 1 + k), k) * b[static_cast<std::size_t>(s)];
    }
    psi[static_cast<std::size_t>(m)] = acc;
  }
  return detail::make_series(SeriesId::Psi, psi, 3);
}

/// psi_m by subtracting two instances of the b-tail expansion term by term.
inline std::vector<Rational> psi_by_subtraction(int order) {
  const auto b = b_tail_coeffs(std::max(1, order / 2)).rationals();
  std::vector<Rational> psi(static_cast<std::size_t>(order) + 1);
  for (int s = 1; 2 * s <= order; ++s) {
    const auto tail = tail_reexpand(s, order);
    for (std::size_t i = 0; i < psi.size(); ++i) psi[i] += b[static_cast<std::size_t>(s)] * tail[i];
  }
  return psi;
}

/// Re-expresses (1 + 1/n)^T(n) as (1 + 1/(n+shift))^E. Returns E in powers of
/// 1/n (mixed) and in powers of 1/(n+shift) (full), each through `order`.
inline std::pair<CoeffSeries, CoeffSeries> shift_exponent_series(const CoeffSeries& t, int order,
                                                                 const Rational& shift = Rational(1)) {
  if (static_cast<int>(t.size()) <= order) throw std::invalid_argument("shift_exponent_series: t too short");
  const auto ord = static_cast<std::size_t>(order);
  Series exponent(t.rationals(), ord + 1);
  exponent[ord + 1] = Rational(0);  // multiplied by the vanishing constant of ln(1+x)
  const Series log_target = exponent * Series::log1p_linear(Rational(1), ord + 1);

  // ln(1 + x/(1 + shift x)) = ln(1 + (1+shift) x) - ln(1 + shift x)
  const Series mixed_base =
      Series::log1p_linear(Rational(1) + shift, ord + 1) - Series::log1p_linear(shift, ord + 1);
  const Series mixed = divide_vanishing(log_target, mixed_base);

  // x = y / (1 - shift y)
  const Series log_target_full = log_target.compose(Series::geometric_shift(shift, ord + 1));
  const Series full = divide_vanishing(log_target_full, Series::log1p_linear(Rational(1), ord + 1));

  return {detail::make_series(SeriesId::TShiftMixed, mixed.truncated(ord).coeffs(), 0, Variable::InvN),
          detail::make_series(SeriesId::TShiftFull, full.truncated(ord).coeffs(), 0, Variable::InvNPlus1)};
}

/// Generates `count` entries of a family starting at its first index
/// (b: b_1..b_count; c: c_0..c_{count-1}; mu: mu_1..mu_count; ...).
inline CoeffSeries generate_series(SeriesId id, int count) {
  if (count < 1) throw std::invalid_argument("generate_series: count must be >= 1");
  auto trim = [count](CoeffSeries s) {
    s.coeffs.resize(static_cast<std::size_t>(s.start_index + count));
    return s;
  };
  switch (id) {
    case SeriesId::BTail: return b_tail_coeffs(count);
    case SeriesId::Psi: return trim(psi_coeffs(count + 2));
    case SeriesId::Mu: return mu_coeffs(count);
    case SeriesId::C: return trim(c_coeffs(count - 1));
    case SeriesId::S: return s_coeffs(count);
    case SeriesId::Lambda: return lambda_coeffs(count);
    case SeriesId::D: return trim(d_coeffs(count - 1));
    case SeriesId::T: return trim(t_coeffs(count - 1));
    case SeriesId::TShiftMixed: return shift_exponent_series(t_coeffs(count - 1), count - 1).first;
    case SeriesId::TShiftFull: return shift_exponent_series(t_coeffs(count - 1), count - 1).second;
  }
  throw std::invalid_argument("unknown series");
}

}  // namespace ballvol
