#pragma once

#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ballvol/harness.hpp"

namespace ballvol {

using json = nlohmann::json;

inline constexpr int kReportDigits = 30;

// --- exact values ------------------------------------------------------------

inline json to_json(const Rational& r) { return r.fraction(); }

/// [{"pi_pow": k, "coeff": "num/den"}, ...]
inline json to_json(const PiExpression& e) {
  json out = json::array();
  for (const auto& [k, q] : e.terms()) out.push_back({{"pi_pow", k}, {"coeff", q.fraction()}});
  return out;
}

inline Rational rational_from_json(const json& j) { return Rational::parse(j.get<std::string>()); }

inline PiExpression pi_expression_from_json(const json& j) {
  PiExpression out;
  for (const auto& term : j) out += PiExpression::monomial(rational_from_json(term.at("coeff")), term.at("pi_pow").get<int>());
  return out;
}

/// Rational families serialize each coefficient as "num/den"; the s family
/// uses the pi-expression form.
inline json to_json(const CoeffSeries& s) {
  json coeffs = json::array();
  for (const auto& c : s.coeffs) coeffs.push_back(s.id == SeriesId::S ? to_json(c) : to_json(c.rational()));
  return {{"series", series_name(s.id)},
          {"variable", variable_name(s.variable)},
          {"start_index", s.start_index},
          {"stride", s.stride},
          {"coeffs", coeffs}};
}

inline CoeffSeries coeff_series_from_json(const json& j) {
  const auto id = parse_series(j.at("series").get<std::string>());
  if (!id) throw std::invalid_argument("unknown series in JSON");
  CoeffSeries s;
  s.id = *id;
  s.variable = j.at("variable").get<std::string>() == "inv_n" ? Variable::InvN : Variable::InvNPlus1;
  s.start_index = j.at("start_index").get<int>();
  s.stride = j.at("stride").get<int>();
  for (const auto& c : j.at("coeffs"))
    s.coeffs.push_back(c.is_string() ? PiExpression(rational_from_json(c)) : pi_expression_from_json(c));
  return s;
}

// --- verify reports ------------------------------------------------------------

namespace detail {

inline json decimal_or_null(const std::optional<PrecInterval>& v, int digits) {
  return v ? json(v->to_decimal(digits)) : json(nullptr);
}

inline json optional_n(const std::optional<long>& n) { return n ? json(*n) : json(nullptr); }

inline json side_summary_json(const SideSummary& s) {
  return {{"first_certified_n", optional_n(s.first_certified_n)},
          {"stable_from", optional_n(s.stable_from)},
          {"first_defined_n", optional_n(s.first_defined_n)},
          {"certified_hold", s.hold},
          {"certified_fail", s.fail},
          {"undefined", s.undefined},
          {"undecided", s.undecided}};
}

inline std::string side_status(const SideRecord& s) { return s.present ? std::string(status_name(s.status)) : "absent"; }

inline std::string case_label(const VerifyReport& r) {
  return find_case(r.case_id).variants.size() > 1 ? r.case_id + ":" + r.variant : r.case_id;
}

}  // namespace detail

/// {case, variant, quantity, n_from, n_to, prec_bits, records: [...], summary}
inline json to_json(const VerifyReport& r, int digits = kReportDigits) {
  json records = json::array();
  for (const auto& rec : r.records) {
    records.push_back({{"n", rec.n},
                       {"lower", detail::decimal_or_null(rec.lower.bound, digits)},
                       {"value", rec.value.to_decimal(digits)},
                       {"upper", detail::decimal_or_null(rec.upper.bound, digits)},
                       {"margin_lo", detail::decimal_or_null(rec.lower.margin, digits)},
                       {"margin_hi", detail::decimal_or_null(rec.upper.margin, digits)},
                       {"status", status_name(rec.status)},
                       {"lower_status", detail::side_status(rec.lower)},
                       {"upper_status", detail::side_status(rec.upper)}});
  }
  json violations = json::array();
  for (const auto& v : r.summary.violations)
    violations.push_back({{"n", v.n},
                          {"side", side_name(v.side)},
                          {"status", status_name(v.status)},
                          {"in_claimed_range", v.claimed},
                          {"audited", v.audited}});
  const BoundCase& c = find_case(r.case_id);
  json summary = {{"first_certified_n", detail::optional_n(r.summary.first_certified_n)},
                  {"claimed_lower_from", c.variant(r.variant).lower ? json(c.claimed_lower_from) : json(nullptr)},
                  {"claimed_upper_from", c.variant(r.variant).upper ? json(c.claimed_upper_from) : json(nullptr)},
                  {"lower", detail::side_summary_json(r.summary.lower)},
                  {"upper", detail::side_summary_json(r.summary.upper)},
                  {"violations", violations},
                  {"claimed_range_failure", r.has_claimed_failure()},
                  {"min_positive_margin", detail::decimal_or_null(r.summary.min_positive_margin, 6)},
                  {"precision_used", r.summary.max_prec_bits}};
  return {{"case", r.case_id},
          {"variant", r.variant},
          {"quantity", quantity_name(r.quantity)},
          {"n_from", r.n_from},
          {"n_to", r.n_to},
          {"prec_bits", r.prec_bits},
          {"records", records},
          {"summary", summary}};
}

inline void write_csv_header(std::ostream& os) { os << "case,n,lower,value,upper,margin_lo,margin_hi,status\n"; }

/// One row per n; a missing side or undefined bound leaves its cells empty.
inline void write_csv(std::ostream& os, const VerifyReport& r, int digits = kReportDigits) {
  auto cell = [digits](const std::optional<PrecInterval>& v) {
    if (!v) return std::string();
    auto s = v->to_decimal(digits);
    return s.front() == '[' ? "\"" + s + "\"" : s;
  };
  const auto label = detail::case_label(r);
  for (const auto& rec : r.records) {
    os << label << ',' << rec.n << ',' << cell(rec.lower.bound) << ',' << cell(rec.value) << ','
       << cell(rec.upper.bound) << ',' << cell(rec.lower.margin) << ',' << cell(rec.upper.margin) << ','
       << status_name(rec.status) << '\n';
  }
}

inline void write_table(std::ostream& os, const VerifyReport& r, int digits = 12) {
  os << detail::case_label(r) << "  (" << quantity_name(r.quantity) << ", n = " << r.n_from << ".." << r.n_to << ")\n";
  os << std::left << std::setw(7) << "n" << std::setw(digits + 9) << "margin_lo" << std::setw(digits + 9) << "margin_hi"
     << "status\n";
  auto cell = [digits](const SideRecord& s) {
    if (!s.present) return std::string("-");
    if (!s.margin) return std::string(status_name(s.status));
    return s.margin->to_decimal(digits);
  };
  for (const auto& rec : r.records)
    os << std::left << std::setw(7) << rec.n << std::setw(digits + 9) << cell(rec.lower) << std::setw(digits + 9)
       << cell(rec.upper) << status_name(rec.status) << '\n';
  auto first = [](const std::optional<long>& n) { return n ? std::to_string(*n) : std::string("none"); };
  os << "lower: first certified n = " << first(r.summary.lower.first_certified_n)
     << ", stable from " << first(r.summary.lower.stable_from) << "\n";
  os << "upper: first certified n = " << first(r.summary.upper.first_certified_n)
     << ", stable from " << first(r.summary.upper.stable_from) << "\n";
  os << "claimed-range failures: " << (r.has_claimed_failure() ? "yes" : "none") << "\n";
}

// --- other harness outputs ---------------------------------------------------

inline json to_json(const Discrepancy& d) {
  return {{"case", d.case_id},
          {"variant", d.variant},
          {"side", side_name(d.side)},
          {"documented", d.documented},
          {"claimed_from", d.claimed_from},
          {"fail_count", d.fail_count},
          {"undefined_count", d.undefined_count},
          {"first_failing_n", detail::optional_n(d.first_failing_n)},
          {"last_failing_n", detail::optional_n(d.last_failing_n)},
          {"first_defined_n", detail::optional_n(d.first_defined_n)},
          {"first_certified_n", detail::optional_n(d.first_certified_n)},
          {"stable_from", detail::optional_n(d.stable_from)},
          {"alternate_variant", d.alternate_variant.empty() ? json(nullptr) : json(d.alternate_variant)},
          {"alternate_first_certified_n", detail::optional_n(d.alternate_first_certified_n)}};
}

inline json to_json(const DecayEstimate& d) {
  return {{"series", series_name(d.series)},
          {"trunc", d.trunc},
          {"n1", d.n1},
          {"n2", d.n2},
          {"order", d.order ? json(d.order->to_decimal(8)) : json(nullptr)},
          {"order_lo", d.order ? json(d.order->lower_d()) : json(nullptr)},
          {"order_hi", d.order ? json(d.order->upper_d()) : json(nullptr)},
          {"decided", d.decided},
          {"prec_bits", d.prec_bits}};
}

inline json to_json(const SharpnessTable& t, int digits = 12) {
  json rows = json::array();
  for (const auto& r : t.rows)
    rows.push_back({{"n", r.n},
                    {"new_width", detail::decimal_or_null(r.new_width, digits)},
                    {"classical_width", detail::decimal_or_null(r.classical_width, digits)},
                    {"width_ratio", detail::decimal_or_null(r.width_ratio, digits)},
                    {"narrower", r.narrower},
                    {"nested", r.nested},
                    {"status", status_name(r.status)}});
  return {{"new", t.new_case}, {"classical", t.classical_case}, {"quantity", quantity_name(t.quantity)}, {"rows", rows}};
}

inline json to_json(const MonotonicityReport& m) {
  json sufficient = json::array();
  for (const auto& s : m.sufficient)
    sufficient.push_back({{"variant", s.variant},
                          {"first_certified_n", detail::optional_n(s.first_certified_n)},
                          {"stable_from", detail::optional_n(s.stable_from)},
                          {"certified_hold", s.hold},
                          {"not_certified", s.not_certified}});
  return {{"n_from", m.n_from},
          {"n_to", m.n_to},
          {"direct_certified_hold", m.direct_hold},
          {"direct_not_certified", m.direct_not_certified},
          {"direct_all_hold", m.direct_all_hold()},
          {"sufficient_condition", sufficient}};
}

}  // namespace ballvol
