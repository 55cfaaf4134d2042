#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <future>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "ballvol/bounds.hpp"

namespace ballvol {

enum class Status { kCertifiedHold, kCertifiedFail, kUndefined, kUndecided };

inline std::string_view status_name(Status s) {
  switch (s) {
    case Status::kCertifiedHold: return "certified_hold";
    case Status::kCertifiedFail: return "certified_fail";
    case Status::kUndefined: return "undefined";
    case Status::kUndecided: return "undecided";
  }
  return "?";
}

/// Working precision starts at start_bits and doubles on an indeterminate
/// sign up to cap_bits.
struct PrecisionPolicy {
  mpfr_prec_t start_bits = 128;
  mpfr_prec_t cap_bits = 4096;

  /// Defaults, with start_bits overridden by BALLVOL_PREC when set.
  static PrecisionPolicy from_env() {
    PrecisionPolicy p;
    if (const char* env = std::getenv("BALLVOL_PREC")) {
      const long bits = std::strtol(env, nullptr, 10);
      if (bits >= 32) p.start_bits = bits;
      p.cap_bits = std::max(p.cap_bits, p.start_bits);
    }
    return p;
  }
};

struct SideRecord {
  bool present = false;
  bool claimed = false;  // n lies in the stated range for this side
  Status status = Status::kUndecided;
  std::optional<PrecInterval> bound;
  std::optional<PrecInterval> margin;  // target - lower, or upper - target
  mpfr_prec_t prec_bits = 0;
};

struct VerifyRecord {
  long n = 0;
  PrecInterval value;
  SideRecord lower;
  SideRecord upper;
  Status status = Status::kUndecided;
};

struct Violation {
  long n = 0;
  Side side = Side::kLower;
  Status status = Status::kCertifiedFail;
  bool claimed = false;
  bool audited = false;
};

struct SideSummary {
  std::optional<long> first_certified_n;
  std::optional<long> stable_from;  // start of the trailing run of certified_hold
  std::optional<long> first_defined_n;
  long hold = 0, fail = 0, undefined = 0, undecided = 0;
};

struct VerifySummary {
  SideSummary lower, upper;
  std::optional<long> first_certified_n;  // first n with both sides certified
  std::vector<Violation> violations;     // certified_fail and undefined sides
  std::optional<PrecInterval> min_positive_margin;
  mpfr_prec_t max_prec_bits = 0;
};

struct VerifyReport {
  std::string case_id;
  std::string variant;
  QuantityKind quantity = QuantityKind::kRatio;
  long n_from = 1, n_to = 1;
  mpfr_prec_t prec_bits = 128;
  std::vector<VerifyRecord> records;
  VerifySummary summary;

  /// certified_fail inside a claimed range, optionally ignoring audited sides.
  bool has_claimed_failure(bool include_audited = false) const {
    return std::any_of(summary.violations.begin(), summary.violations.end(), [&](const Violation& v) {
      return v.status == Status::kCertifiedFail && v.claimed && (include_audited || !v.audited);
    });
  }
  bool has_claimed_undecided() const {
    return std::any_of(records.begin(), records.end(), [](const VerifyRecord& r) {
      return (r.lower.claimed && r.lower.status == Status::kUndecided) ||
             (r.upper.claimed && r.upper.status == Status::kUndecided);
    });
  }
  const SideSummary& side_summary(Side s) const { return s == Side::kLower ? summary.lower : summary.upper; }
};

namespace detail {

// Target enclosures reused across both sides and across precision retries.
class TargetCache {
 public:
  TargetCache(QuantityKind kind, long n) : kind_(kind), n_(n) {}
  const PrecInterval& at(mpfr_prec_t prec) {
    auto it = cache_.find(prec);
    if (it == cache_.end()) it = cache_.emplace(prec, target_quantity(kind_, n_, prec)).first;
    return it->second;
  }

 private:
  QuantityKind kind_;
  long n_;
  std::map<mpfr_prec_t, PrecInterval> cache_;
};

inline SideRecord evaluate_side(const Expr& bound, Side side, TargetCache& target, long n,
                                const PrecisionPolicy& policy) {
  SideRecord rec;
  rec.present = true;
  for (mpfr_prec_t prec = policy.start_bits;; prec *= 2) {
    rec.prec_bits = prec;
    try {
      PrecInterval b = bound.enclose(n, prec);
      const PrecInterval& t = target.at(prec);
      PrecInterval m = side == Side::kLower ? t - b : b - t;
      const bool hold = m.is_positive(), fail = m.is_negative();
      rec.bound = std::move(b);
      rec.margin = std::move(m);
      if (hold || fail) {
        rec.status = hold ? Status::kCertifiedHold : Status::kCertifiedFail;
        return rec;
      }
    } catch (const DomainError& e) {
      rec.bound.reset();
      rec.margin.reset();
      if (e.kind() == DomainError::Kind::kUndefined) {
        rec.status = Status::kUndefined;
        return rec;
      }
    }
    if (prec >= policy.cap_bits) {
      rec.status = Status::kUndecided;
      return rec;
    }
  }
}

inline Status combine(const SideRecord& lo, const SideRecord& hi) {
  auto rank = [](const SideRecord& s) {
    if (!s.present) return 0;
    switch (s.status) {
      case Status::kCertifiedHold: return 0;
      case Status::kUndecided: return 1;
      case Status::kUndefined: return 2;
      case Status::kCertifiedFail: return 3;
    }
    return 0;
  };
  const int r = std::max(rank(lo), rank(hi));
  return r == 0 ? Status::kCertifiedHold : r == 1 ? Status::kUndecided : r == 2 ? Status::kUndefined : Status::kCertifiedFail;
}

inline VerifyRecord verify_point(const BoundCase& c, const BoundVariant& v, long n, const PrecisionPolicy& policy) {
  TargetCache target(c.quantity, n);
  VerifyRecord rec{n, target.at(policy.start_bits), {}, {}, Status::kUndecided};
  if (v.lower) rec.lower = evaluate_side(*v.lower, Side::kLower, target, n, policy);
  if (v.upper) rec.upper = evaluate_side(*v.upper, Side::kUpper, target, n, policy);
  rec.lower.claimed = v.lower && n >= c.claimed_lower_from;
  rec.upper.claimed = v.upper && n >= c.claimed_upper_from;
  rec.status = combine(rec.lower, rec.upper);
  return rec;
}

inline void summarize_side(SideSummary& s, const SideRecord& r, long n) {
  if (!r.present) return;
  switch (r.status) {
    case Status::kCertifiedHold:
      ++s.hold;
      if (!s.first_certified_n) s.first_certified_n = n;
      if (!s.stable_from) s.stable_from = n;
      break;
    case Status::kCertifiedFail: ++s.fail; s.stable_from.reset(); break;
    case Status::kUndefined: ++s.undefined; s.stable_from.reset(); break;
    case Status::kUndecided: ++s.undecided; s.stable_from.reset(); break;
  }
  if (r.status != Status::kUndefined && !s.first_defined_n) s.first_defined_n = n;
}

inline VerifySummary summarize(const std::vector<VerifyRecord>& records, const BoundVariant& v) {
  VerifySummary s;
  for (const auto& r : records) {
    summarize_side(s.lower, r.lower, r.n);
    summarize_side(s.upper, r.upper, r.n);
    if (r.status == Status::kCertifiedHold && !s.first_certified_n) s.first_certified_n = r.n;
    for (Side side : {Side::kLower, Side::kUpper}) {
      const SideRecord& sr = side == Side::kLower ? r.lower : r.upper;
      if (!sr.present) continue;
      s.max_prec_bits = std::max(s.max_prec_bits, sr.prec_bits);
      if (sr.status == Status::kCertifiedFail || sr.status == Status::kUndefined)
        s.violations.push_back({r.n, side, sr.status, sr.claimed, v.audited(side)});
      if (sr.status == Status::kCertifiedHold &&
          (!s.min_positive_margin || mpfr_less_p(sr.margin->lower(), s.min_positive_margin->lower())))
        s.min_positive_margin = *sr.margin;
    }
  }
  return s;
}

inline unsigned default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

}  // namespace detail

/// Scans one case variant over [n_from, n_to]. Chunks run concurrently; the
/// report is identical for any worker count.
inline VerifyReport verify_case(const CaseSelection& sel, long n_from, long n_to,
                                const PrecisionPolicy& policy = PrecisionPolicy::from_env(), unsigned workers = 0) {
  if (n_from < 1 || n_to < n_from) throw std::invalid_argument("verify_case: need 1 <= n_from <= n_to");
  const BoundCase& c = *sel.bound_case;
  const BoundVariant& v = *sel.variant;
  omega_exact(n_to + 1);  // fill the memo before fanning out

  if (workers == 0) workers = detail::default_workers();
  const long total = n_to - n_from + 1;
  const long chunk = (total + static_cast<long>(workers) - 1) / static_cast<long>(workers);
  std::vector<std::future<std::vector<VerifyRecord>>> parts;
  for (long start = n_from; start <= n_to; start += chunk) {
    const long stop = std::min(n_to, start + chunk - 1);
    parts.push_back(std::async(workers > 1 ? std::launch::async : std::launch::deferred, [&, start, stop] {
      std::vector<VerifyRecord> out;
      out.reserve(static_cast<std::size_t>(stop - start + 1));
      for (long n = start; n <= stop; ++n) out.push_back(detail::verify_point(c, v, n, policy));
      return out;
    }));
  }
  VerifyReport report{c.id, v.name, c.quantity, n_from, n_to, policy.start_bits, {}, {}};
  report.records.reserve(static_cast<std::size_t>(total));
  for (auto& part : parts)
    for (auto& rec : part.get()) report.records.push_back(std::move(rec));
  report.summary = detail::summarize(report.records, v);
  return report;
}

/// "CASE" scans every variant; "CASE:variant" scans one.
inline std::vector<VerifyReport> verify_case(std::string_view case_spec, long n_from, long n_to,
                                             const PrecisionPolicy& policy = PrecisionPolicy::from_env(),
                                             unsigned workers = 0) {
  std::vector<VerifyReport> out;
  if (case_spec.find(':') != std::string_view::npos) {
    out.push_back(verify_case(select_case(case_spec), n_from, n_to, policy, workers));
    return out;
  }
  const BoundCase& c = find_case(case_spec);
  for (const auto& v : c.variants) out.push_back(verify_case(CaseSelection{&c, &v}, n_from, n_to, policy, workers));
  return out;
}

// --- monotonicity of Omega_n^(1/n) ------------------------------------------

struct SufficientConditionReport {
  std::string variant;
  std::optional<long> first_certified_n;
  std::optional<long> stable_from;
  long hold = 0;
  std::vector<long> not_certified;  // fail or undecided
};

struct MonotonicityReport {
  long n_from = 1, n_to = 1;
  long direct_hold = 0;
  std::vector<long> direct_not_certified;
  std::vector<SufficientConditionReport> sufficient;

  bool direct_all_hold() const { return direct_not_certified.empty() && direct_hold == n_to - n_from + 1; }
};

namespace detail {

// Sign of an interval-valued function of the precision, escalating on ambiguity.
template <typename F>
Status certify_positive(F&& f, const PrecisionPolicy& policy) {
  for (mpfr_prec_t prec = policy.start_bits;; prec *= 2) {
    try {
      const PrecInterval v = f(prec);
      if (v.is_positive()) return Status::kCertifiedHold;
      if (v.is_negative()) return Status::kCertifiedFail;
    } catch (const DomainError& e) {
      if (e.kind() == DomainError::Kind::kUndefined) return Status::kUndefined;
    }
    if (prec >= policy.cap_bits) return Status::kUndecided;
  }
}

}  // namespace detail

/// Certifies Omega_n^(1/n) > Omega_{n+1}^(1/(n+1)) from exact values, and
/// separately the sufficient condition alpha(n) - beta(n+1) > 0 per NEW_AB variant.
inline MonotonicityReport monotonicity_check(long n_from, long n_to,
                                             const PrecisionPolicy& policy = PrecisionPolicy::from_env()) {
  if (n_from < 1 || n_to < n_from) throw std::invalid_argument("monotonicity_check: need 1 <= n_from <= n_to");
  MonotonicityReport report{n_from, n_to, 0, {}, {}};
  omega_exact(n_to + 2);
  for (long n = n_from; n <= n_to; ++n) {
    const Status s = detail::certify_positive(
        [n](mpfr_prec_t prec) { return target_quantity(QuantityKind::kLogOmegaDiff, n, prec); }, policy);
    if (s == Status::kCertifiedHold)
      ++report.direct_hold;
    else
      report.direct_not_certified.push_back(n);
  }
  const BoundCase& ab = find_case("NEW_AB");
  for (const auto& v : ab.variants) {
    SufficientConditionReport sr{v.name, std::nullopt, std::nullopt, 0, {}};
    for (long n = n_from; n <= n_to; ++n) {
      const Status s = detail::certify_positive(
          [&, n](mpfr_prec_t prec) { return v.lower->enclose(n, prec) - v.upper->enclose(n + 1, prec); }, policy);
      if (s == Status::kCertifiedHold) {
        ++sr.hold;
        if (!sr.first_certified_n) sr.first_certified_n = n;
        if (!sr.stable_from) sr.stable_from = n;
      } else {
        sr.not_certified.push_back(n);
        sr.stable_from.reset();
      }
    }
    report.sufficient.push_back(std::move(sr));
  }
  return report;
}

// --- truncation decay orders -------------------------------------------------

/// The quantity whose expansion a coefficient family describes, and the
/// expansion variable.
struct FamilyTarget {
  Expr target;
  Expr variable;
};

inline FamilyTarget family_target(SeriesId id) {
  const Expr n = Expr::n();
  const Expr pi = Expr::pi();
  const Expr inv_n = Expr(1L) / n;
  const Expr inv_n1 = Expr(1L) / (n + 1L);
  switch (id) {
    case SeriesId::BTail:
      return {detail::log_omega_head() - Expr::quantity(QuantityKind::kLogOmegaPerN), inv_n};
    case SeriesId::Psi:
      return {detail::psi_head() - Expr::quantity(QuantityKind::kLogOmegaDiff), inv_n};
    case SeriesId::Mu:
      return {Expr::quantity(QuantityKind::kLogRatio) - Expr(Rational(1, 2)) * log(n / (Expr(2L) * pi)), inv_n};
    case SeriesId::C:
      return {Expr::quantity(QuantityKind::kRatio) / sqrt(n / (Expr(2L) * pi)), inv_n};
    case SeriesId::S:
      return {powi(Expr::quantity(QuantityKind::kRatio), 2) - (n + Expr(Rational(1, 2))) / (Expr(2L) * pi), inv_n};
    case SeriesId::Lambda: return {Expr::quantity(QuantityKind::kGeoLog), inv_n};
    case SeriesId::D: return {Expr::quantity(QuantityKind::kGeoRatio), inv_n};
    case SeriesId::T: return {Expr::quantity(QuantityKind::kGeoLog) / log(Expr(1L) + inv_n), inv_n};
    case SeriesId::TShiftMixed: return {Expr::quantity(QuantityKind::kGeoLog) / log(Expr(1L) + inv_n1), inv_n};
    case SeriesId::TShiftFull: return {Expr::quantity(QuantityKind::kGeoLog) / log(Expr(1L) + inv_n1), inv_n1};
  }
  throw std::invalid_argument("unknown series");
}

/// Family coefficients covering every power of the variable up to `last_power`.
inline CoeffSeries family_coefficients(SeriesId id, int last_power) {
  if (last_power < 0) throw std::invalid_argument("family_coefficients: negative order");
  const int order = std::max(1, last_power);
  switch (id) {
    case SeriesId::BTail: return b_tail_coeffs(std::max(1, last_power / 2));
    case SeriesId::Psi: return psi_coeffs(order);
    case SeriesId::Mu: return mu_coeffs(order);
    case SeriesId::C: return c_coeffs(last_power);
    case SeriesId::S: return s_coeffs(order);
    case SeriesId::Lambda: return lambda_coeffs(order);
    case SeriesId::D: return d_coeffs(last_power);
    case SeriesId::T: return t_coeffs(last_power);
    case SeriesId::TShiftMixed: return shift_exponent_series(t_coeffs(last_power), last_power).first;
    case SeriesId::TShiftFull: return shift_exponent_series(t_coeffs(last_power), last_power).second;
  }
  throw std::invalid_argument("unknown series");
}

/// Truncated expansion keeping every term through var^last_power.
inline Expr family_truncation(SeriesId id, int last_power) {
  const auto series = family_coefficients(id, last_power);
  const auto var = family_target(id).variable;
  const auto last_index = static_cast<std::size_t>(last_power / series.stride);
  return power_sum(series.coeffs, var, 0, last_index, series.stride);
}

struct DecayEstimate {
  SeriesId series = SeriesId::C;
  int trunc = 0;
  long n1 = 0, n2 = 0;
  std::optional<PrecInterval> order;
  bool decided = false;
  mpfr_prec_t prec_bits = 0;

  double value() const { return order ? order->mid_d() : std::nan(""); }
};

/// log(|err(n1)| / |err(n2)|) / log(n2/n1), err = target - truncation through
/// var^trunc. Decided once the enclosure of the order is narrower than 0.01.
inline DecayEstimate decay_order(SeriesId id, int trunc, long n1, long n2,
                                 const PrecisionPolicy& policy = PrecisionPolicy::from_env()) {
  if (n1 < 1 || n2 < 2 * n1) throw std::invalid_argument("decay_order: need n2 >= 2 n1 >= 2");
  const FamilyTarget ft = family_target(id);
  const Expr err = ft.target - family_truncation(id, trunc);
  DecayEstimate est{id, trunc, n1, n2, std::nullopt, false, 0};
  for (mpfr_prec_t prec = policy.start_bits;; prec *= 2) {
    est.prec_bits = prec;
    try {
      PrecInterval e1 = err.enclose(n1, prec);
      PrecInterval e2 = err.enclose(n2, prec);
      if (!e1.contains_zero() && !e2.contains_zero()) {
        if (e1.is_negative()) e1 = -e1;
        if (e2.is_negative()) e2 = -e2;
        PrecInterval ord = log(e1 / e2) / log(PrecInterval::from_rational(Rational(n2, n1), prec));
        const bool tight = ord.width() < 0.01;
        est.order = std::move(ord);
        if (tight) {
          est.decided = true;
          return est;
        }
      }
    } catch (const DomainError&) {
    }
    if (prec >= policy.cap_bits) return est;
  }
}

// --- sharpness ---------------------------------------------------------------

struct SharpnessRow {
  long n = 0;
  std::optional<PrecInterval> new_width;
  std::optional<PrecInterval> classical_width;
  std::optional<PrecInterval> width_ratio;  // classical / new
  bool narrower = false;                    // new width certified < classical width
  bool nested = false;                      // new bracket certified strictly inside classical
  Status status = Status::kUndecided;
  mpfr_prec_t prec_bits = 0;
};

struct SharpnessTable {
  std::string new_case;
  std::string classical_case;
  QuantityKind quantity = QuantityKind::kRatio;
  std::vector<SharpnessRow> rows;
};

inline std::string selection_label(const CaseSelection& s) {
  return s.bound_case->variants.size() > 1 ? s.bound_case->id + ":" + s.variant->name : s.bound_case->id;
}

/// Bracket widths (upper - lower) of two two-sided bounds on the same quantity.
inline SharpnessTable sharpness_compare(const CaseSelection& fresh, const CaseSelection& classical,
                                        const std::vector<long>& ns,
                                        const PrecisionPolicy& policy = PrecisionPolicy::from_env()) {
  if (fresh.bound_case->quantity != classical.bound_case->quantity)
    throw std::invalid_argument("sharpness_compare: cases bound different quantities");
  for (const auto* s : {&fresh, &classical})
    if (!s->variant->lower || !s->variant->upper)
      throw std::invalid_argument("sharpness_compare: " + s->bound_case->id + " is one-sided");

  SharpnessTable table{selection_label(fresh), selection_label(classical), fresh.bound_case->quantity, {}};
  for (long n : ns) {
    if (n < 1) throw std::invalid_argument("sharpness_compare: n must be >= 1");
    SharpnessRow row;
    row.n = n;
    for (mpfr_prec_t prec = policy.start_bits;; prec *= 2) {
      row.prec_bits = prec;
      try {
        const PrecInterval nl = fresh.variant->lower->enclose(n, prec), nu = fresh.variant->upper->enclose(n, prec);
        const PrecInterval cl = classical.variant->lower->enclose(n, prec),
                           cu = classical.variant->upper->enclose(n, prec);
        row.new_width = nu - nl;
        row.classical_width = cu - cl;
        row.narrower = row.new_width->certainly_less(*row.classical_width);
        row.nested = cl.certainly_less(nl) && nu.certainly_less(cu);
        const bool decided = row.narrower || row.classical_width->certainly_less(*row.new_width);
        if (row.new_width->is_positive()) row.width_ratio = *row.classical_width / *row.new_width;
        if (decided) {
          row.status = Status::kCertifiedHold;
          break;
        }
      } catch (const DomainError& e) {
        if (e.kind() == DomainError::Kind::kUndefined) {
          row.status = Status::kUndefined;
          break;
        }
      }
      if (prec >= policy.cap_bits) {
        row.status = Status::kUndecided;
        break;
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

// --- catalog-wide audit ------------------------------------------------------

/// A side whose stated validity range disagrees with the certified scan, or
/// that is flagged for audit.
struct Discrepancy {
  std::string case_id;
  std::string variant;
  Side side = Side::kLower;
  bool documented = false;  // flagged as an audit in the catalog
  long claimed_from = 1;
  long fail_count = 0;
  long undefined_count = 0;
  std::optional<long> first_failing_n, last_failing_n;
  std::optional<long> first_defined_n;
  std::optional<long> first_certified_n;
  std::optional<long> stable_from;
  std::string alternate_variant;
  std::optional<long> alternate_first_certified_n;
};

struct AuditResult {
  std::vector<VerifyReport> reports;
  std::vector<Discrepancy> discrepancies;

  /// certified_fail inside a claimed range on a side not flagged for audit.
  bool has_undocumented_failure() const {
    return std::any_of(reports.begin(), reports.end(), [](const VerifyReport& r) { return r.has_claimed_failure(); });
  }
};

/// Scans every catalog case and variant over [n_from, n_to] and collects
/// discrepancies.
inline AuditResult audit_catalog(long n_from, long n_to, const PrecisionPolicy& policy = PrecisionPolicy::from_env(),
                                 unsigned workers = 0) {
  AuditResult result;
  for (const auto& c : bound_catalog())
    for (const auto& v : c.variants)
      result.reports.push_back(verify_case(CaseSelection{&c, &v}, n_from, n_to, policy, workers));

  for (const auto& r : result.reports) {
    const BoundCase& c = find_case(r.case_id);
    const BoundVariant& v = c.variant(r.variant);
    for (Side side : {Side::kLower, Side::kUpper}) {
      if (!v.side(side)) continue;
      Discrepancy d;
      d.case_id = r.case_id;
      d.variant = r.variant;
      d.side = side;
      d.documented = v.audited(side);
      d.claimed_from = c.claimed_from(side);
      for (const auto& viol : r.summary.violations) {
        if (viol.side != side || !viol.claimed) continue;
        if (viol.status == Status::kUndefined) {
          ++d.undefined_count;
          continue;
        }
        ++d.fail_count;
        if (!d.first_failing_n) d.first_failing_n = viol.n;
        d.last_failing_n = viol.n;
      }
      if (!d.documented && d.fail_count == 0 && d.undefined_count == 0) continue;
      const SideSummary& ss = r.side_summary(side);
      d.first_defined_n = ss.first_defined_n;
      d.first_certified_n = ss.first_certified_n;
      d.stable_from = ss.stable_from;
      for (const auto& alt : c.variants) {
        if (alt.name == v.name || alt.audited(side) || !alt.side(side)) continue;
        for (const auto& ar : result.reports) {
          if (ar.case_id == c.id && ar.variant == alt.name) {
            d.alternate_variant = alt.name;
            d.alternate_first_certified_n = ar.side_summary(side).first_certified_n;
          }
        }
        break;
      }
      result.discrepancies.push_back(std::move(d));
    }
  }
  return result;
}

}  // namespace ballvol
