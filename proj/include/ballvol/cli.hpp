#pragma once

#include <fstream>
#include <iomanip>
#include <iostream>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ballvol/report.hpp"

namespace ballvol::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kClaimedFailure = 2, kUndecided = 3 };

struct CliConfig {
  std::string series;
  std::string case_id;
  std::string new_case, classical_case;
  int count = kDefaultSeriesOrder;
  long n = 0;
  int digits = 20;
  long from = 1, to = 0;
  long n1 = 100, n2 = 200;
  int trunc = 6;
  std::vector<long> n_list;
  long prec = 0;  // 0: BALLVOL_PREC or the default
  unsigned workers = 0;
  std::string format = "table";
  std::string output;
};

namespace detail {

// "1/2*pi^2" -> "1/2·pi^2"
inline std::string pretty(const PiExpression& e) {
  std::string s = e.str(), out;
  for (char ch : s) {
    if (ch == '*')
      out += "·";
    else
      out += ch;
  }
  return out;
}

inline std::string decimal(const PiExpression& e, int digits) {
  const auto bits = static_cast<mpfr_prec_t>(digits * 3.33) + 64;
  return PrecInterval::from_pi_expression(e, bits).to_decimal(digits, true);
}

inline PrecisionPolicy policy(const CliConfig& cfg) {
  PrecisionPolicy p = PrecisionPolicy::from_env();
  if (cfg.prec > 0) {
    p.start_bits = cfg.prec;
    p.cap_bits = std::max(p.cap_bits, p.start_bits);
  }
  return p;
}

inline std::string csv_quote(const std::string& s) {
  return s.find_first_of(",\"") == std::string::npos ? s : "\"" + s + "\"";
}

inline bool is_all(const std::string& id) { return ballvol::detail::upper_case(id) == "ALL"; }

inline std::string opt_n(const std::optional<long>& n) { return n ? std::to_string(*n) : "-"; }

// --- coeffs ------------------------------------------------------------------

inline std::vector<CoeffSeries> requested_series(const CliConfig& cfg) {
  if (cfg.series == "tshift") {
    auto [mixed, full] = shift_exponent_series(t_coeffs(cfg.count - 1), cfg.count - 1);
    return {mixed, full};
  }
  return {generate_series(*parse_series(cfg.series), cfg.count)};
}

inline int run_bernoulli(const CliConfig& cfg, std::ostream& out) {
  std::vector<Rational> b;
  for (int j = 0; j < cfg.count; ++j) b.push_back(bernoulli_number(j));
  if (cfg.format == "json") {
    json coeffs = json::array();
    for (const auto& v : b) coeffs.push_back(to_json(v));
    out << json{{"series", "bernoulli"}, {"start_index", 0}, {"coeffs", coeffs}}.dump(2) << '\n';
  } else if (cfg.format == "csv") {
    out << "series,index,coeff,decimal\n";
    for (std::size_t j = 0; j < b.size(); ++j)
      out << "bernoulli," << j << ',' << b[j].fraction() << ',' << decimal(b[j], 20) << '\n';
  } else {
    for (std::size_t j = 0; j < b.size(); ++j)
      out << std::left << "B_" << std::setw(5) << j << std::setw(28) << b[j].str() << decimal(b[j], 16) << '\n';
  }
  return kOk;
}

inline int run_coeffs(const CliConfig& cfg, std::ostream& out) {
  if (cfg.series == "bernoulli") return run_bernoulli(cfg, out);
  const auto families = requested_series(cfg);
  if (cfg.format == "json") {
    if (families.size() == 1) {
      out << to_json(families.front()).dump(2) << '\n';
    } else {
      json arr = json::array();
      for (const auto& f : families) arr.push_back(to_json(f));
      out << arr.dump(2) << '\n';
    }
    return kOk;
  }
  if (cfg.format == "csv") out << "series,index,power,variable,coeff,decimal\n";
  for (const auto& f : families) {
    if (cfg.format == "table")
      out << "# " << series_name(f.id) << " (powers of " << variable_name(f.variable) << ")\n";
    for (std::size_t i = static_cast<std::size_t>(f.start_index); i < f.size(); ++i) {
      const auto& c = f.coeffs[i];
      if (cfg.format == "csv") {
        out << series_name(f.id) << ',' << i << ',' << f.power(i) << ',' << variable_name(f.variable) << ','
            << csv_quote(f.id == SeriesId::S ? c.str() : c.rational().fraction()) << ',' << decimal(c, 20) << '\n';
      } else {
        out << std::left << std::setw(5) << i << std::setw(32) << pretty(c) << decimal(c, 16) << '\n';
      }
    }
  }
  return kOk;
}

// --- omega -------------------------------------------------------------------

inline int run_omega(const CliConfig& cfg, std::ostream& out) {
  const auto w = omega_exact(cfg.n);
  if (cfg.format == "json") {
    out << json{{"n", cfg.n}, {"value", to_json(w.value)}, {"decimal", decimal(w.value, cfg.digits)}}.dump(2) << '\n';
  } else {
    out << pretty(w.value) << " ≈ " << decimal(w.value, cfg.digits) << '\n';
  }
  return kOk;
}

// --- verify ------------------------------------------------------------------

inline int verify_exit(const std::vector<VerifyReport>& reports) {
  bool undecided = false;
  for (const auto& r : reports) {
    if (r.has_claimed_failure()) return kClaimedFailure;
    undecided = undecided || r.has_claimed_undecided();
  }
  return undecided ? kUndecided : kOk;
}

inline void write_discrepancy_line(std::ostream& out, const Discrepancy& d) {
  out << "  " << d.case_id << ':' << d.variant << ' ' << side_name(d.side) << (d.documented ? " [audited]" : "")
      << "  claimed from n=" << d.claimed_from << ", fails=" << d.fail_count << ", undefined=" << d.undefined_count;
  if (d.first_failing_n) out << " (n=" << *d.first_failing_n << ".." << *d.last_failing_n << ")";
  out << ", first certified n=" << opt_n(d.first_certified_n) << ", stable from " << opt_n(d.stable_from);
  if (!d.alternate_variant.empty())
    out << "; variant " << d.alternate_variant << " certifies from n=" << opt_n(d.alternate_first_certified_n);
  out << '\n';
}

inline int run_verify_all(const CliConfig& cfg, std::ostream& out) {
  const auto audit = audit_catalog(cfg.from, cfg.to, policy(cfg), cfg.workers);
  if (cfg.format == "json") {
    json reports = json::array(), discrepancies = json::array();
    for (const auto& r : audit.reports) reports.push_back(to_json(r));
    for (const auto& d : audit.discrepancies) discrepancies.push_back(to_json(d));
    out << json{{"reports", reports}, {"discrepancies", discrepancies}}.dump(2) << '\n';
  } else if (cfg.format == "csv") {
    write_csv_header(out);
    for (const auto& r : audit.reports) write_csv(out, r);
  } else {
    out << std::left << std::setw(34) << "case" << std::setw(10) << "lower" << std::setw(10) << "upper"
        << "claimed-range failure\n";
    for (const auto& r : audit.reports) {
      out << std::left << std::setw(34) << r.case_id + ":" + r.variant << std::setw(10)
          << opt_n(r.summary.lower.first_certified_n) << std::setw(10) << opt_n(r.summary.upper.first_certified_n)
          << (r.has_claimed_failure() ? "yes" : r.has_claimed_failure(true) ? "audited" : "no") << '\n';
    }
    out << "discrepancies:\n";
    for (const auto& d : audit.discrepancies) write_discrepancy_line(out, d);
  }
  return verify_exit(audit.reports);
}

inline int run_verify(const CliConfig& cfg, std::ostream& out) {
  if (cfg.to < cfg.from) throw CLI::ValidationError("--to", "must be >= --from");
  if (is_all(cfg.case_id)) return run_verify_all(cfg, out);
  const auto reports = verify_case(cfg.case_id, cfg.from, cfg.to, policy(cfg), cfg.workers);
  if (cfg.format == "json") {
    if (reports.size() == 1) {
      out << to_json(reports.front()).dump(2) << '\n';
    } else {
      json arr = json::array();
      for (const auto& r : reports) arr.push_back(to_json(r));
      out << arr.dump(2) << '\n';
    }
  } else if (cfg.format == "csv") {
    write_csv_header(out);
    for (const auto& r : reports) write_csv(out, r);
  } else {
    for (const auto& r : reports) write_table(out, r);
  }
  return verify_exit(reports);
}

// --- sharpness ---------------------------------------------------------------

inline int run_sharpness(const CliConfig& cfg, std::ostream& out) {
  const auto table = sharpness_compare(select_case(cfg.new_case), select_case(cfg.classical_case), cfg.n_list, policy(cfg));
  auto cell = [](const std::optional<PrecInterval>& v) { return v ? v->to_decimal(12) : std::string("-"); };
  if (cfg.format == "json") {
    out << to_json(table).dump(2) << '\n';
  } else if (cfg.format == "csv") {
    out << "n,new_width,classical_width,width_ratio,narrower,nested,status\n";
    for (const auto& r : table.rows)
      out << r.n << ',' << csv_quote(cell(r.new_width)) << ',' << csv_quote(cell(r.classical_width)) << ','
          << csv_quote(cell(r.width_ratio)) << ',' << r.narrower << ',' << r.nested << ',' << status_name(r.status)
          << '\n';
  } else {
    out << table.new_case << " vs " << table.classical_case << " (" << quantity_name(table.quantity) << ")\n";
    out << std::left << std::setw(7) << "n" << std::setw(22) << "new width" << std::setw(22) << "classical width"
        << std::setw(20) << "ratio" << "narrower\n";
    for (const auto& r : table.rows)
      out << std::left << std::setw(7) << r.n << std::setw(22) << cell(r.new_width) << std::setw(22)
          << cell(r.classical_width) << std::setw(20) << cell(r.width_ratio)
          << (r.status == Status::kCertifiedHold ? (r.narrower ? "yes" : "no") : status_name(r.status)) << '\n';
  }
  for (const auto& r : table.rows)
    if (r.status != Status::kCertifiedHold) return kUndecided;
  return kOk;
}

// --- order -------------------------------------------------------------------

inline int run_order(const CliConfig& cfg, std::ostream& out) {
  const auto id = *parse_series(cfg.series);
  const auto est = decay_order(id, cfg.trunc, cfg.n1, cfg.n2, policy(cfg));
  if (cfg.format == "json") {
    out << to_json(est).dump(2) << '\n';
  } else if (cfg.format == "csv") {
    out << "series,trunc,n1,n2,order_lo,order_hi,decided\n"
        << series_name(id) << ',' << cfg.trunc << ',' << cfg.n1 << ',' << cfg.n2 << ','
        << (est.order ? PrecInterval::format(est.order->lower(), 10) : "") << ','
        << (est.order ? PrecInterval::format(est.order->upper(), 10) : "") << ',' << est.decided << '\n';
  } else {
    out << series_name(id) << " truncated through power " << cfg.trunc << ": error order ";
    if (est.order)
      out << std::fixed << std::setprecision(5) << est.value() << std::defaultfloat << "  in ["
          << PrecInterval::format(est.order->lower(), 8) << ", " << PrecInterval::format(est.order->upper(), 8) << "]";
    else
      out << "unavailable";
    out << (est.decided ? "" : "  (undecided)") << '\n';
  }
  return est.decided ? kOk : kUndecided;
}

// --- catalog -----------------------------------------------------------------

inline int run_catalog(const CliConfig& cfg, std::ostream& out) {
  const auto& cases = bound_catalog();
  auto side_str = [](const std::optional<Expr>& e) { return e ? e->str() : std::string(); };
  if (cfg.format == "json") {
    json arr = json::array();
    for (const auto& c : cases) {
      json variants = json::array();
      for (const auto& v : c.variants)
        variants.push_back({{"name", v.name},
                            {"lower", v.lower ? json(v.lower->str()) : json(nullptr)},
                            {"upper", v.upper ? json(v.upper->str()) : json(nullptr)},
                            {"audit_lower", v.audit_lower},
                            {"audit_upper", v.audit_upper},
                            {"note", v.note}});
      arr.push_back({{"id", c.id},
                     {"quantity", quantity_name(c.quantity)},
                     {"claimed_lower_from", c.claimed_lower_from},
                     {"claimed_upper_from", c.claimed_upper_from},
                     {"source", c.source},
                     {"variants", variants}});
    }
    out << arr.dump(2) << '\n';
    return kOk;
  }
  if (cfg.format == "csv") {
    out << "case,variant,quantity,claimed_lower_from,claimed_upper_from,lower,upper\n";
    for (const auto& c : cases)
      for (const auto& v : c.variants)
        out << c.id << ',' << v.name << ',' << quantity_name(c.quantity) << ',' << c.claimed_lower_from << ','
            << c.claimed_upper_from << ',' << csv_quote(side_str(v.lower)) << ',' << csv_quote(side_str(v.upper))
            << '\n';
    return kOk;
  }
  for (const auto& c : cases) {
    out << c.id << "  " << quantity_name(c.quantity) << "  lower from n=" << c.claimed_lower_from
        << ", upper from n=" << c.claimed_upper_from << '\n';
    for (const auto& v : c.variants) {
      out << "  [" << v.name << "]";
      if (v.audit_lower || v.audit_upper) out << " audited";
      out << '\n';
      if (v.lower) out << "    lower: " << v.lower->str() << '\n';
      if (v.upper) out << "    upper: " << v.upper->str() << '\n';
    }
  }
  return kOk;
}

}  // namespace detail

/// Parses argv and runs one subcommand. Returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CliConfig cfg;
  CLI::App app{"Exact unit-ball volumes, series coefficients and certified inequality scans", "ballvol"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("-o,--output", cfg.output, "Write to this file instead of standard output");

  const std::vector<std::string> formats{"table", "json", "csv"};
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember(formats))->capture_default_str();
  };
  auto add_prec = [&](CLI::App* sub) {
    sub->add_option("--prec", cfg.prec, "Starting precision in bits (default: BALLVOL_PREC or 128)")
        ->check(CLI::Range(32L, 1L << 20));
  };

  std::vector<std::string> coeff_names{"bernoulli", "tshift"};
  for (auto id : {SeriesId::BTail, SeriesId::Psi, SeriesId::Mu, SeriesId::C, SeriesId::S, SeriesId::Lambda,
                  SeriesId::D, SeriesId::T, SeriesId::TShiftMixed, SeriesId::TShiftFull})
    coeff_names.emplace_back(series_name(id));
  std::vector<std::string> order_names(coeff_names.begin() + 2, coeff_names.end());

  auto* coeffs = app.add_subcommand("coeffs", "Exact coefficients of a series family");
  coeffs->add_option("--series", cfg.series)->required()->check(CLI::IsMember(coeff_names));
  coeffs->add_option("--count", cfg.count, "Number of coefficients")->check(CLI::Range(1, 200))->capture_default_str();
  add_format(coeffs);

  auto* omega = app.add_subcommand("omega", "Exact volume of the unit n-ball");
  omega->add_option("--n", cfg.n)->required()->check(CLI::Range(0L, 100000L));
  omega->add_option("--digits", cfg.digits)->check(CLI::Range(1, 10000))->capture_default_str();
  omega->add_option("--format", cfg.format)->check(CLI::IsMember({"table", "json"}))->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Certified scan of a bound case over a range of n");
  verify->add_option("--case", cfg.case_id, "Case id, CASE:variant, or all")->required();
  verify->add_option("--from", cfg.from)->check(CLI::Range(1L, 100000000L))->capture_default_str();
  verify->add_option("--to", cfg.to)->required()->check(CLI::Range(1L, 100000000L));
  verify->add_option("--workers", cfg.workers, "Worker threads (default: hardware concurrency)");
  add_prec(verify);
  add_format(verify);

  auto* sharp = app.add_subcommand("sharpness", "Compare bracket widths of two cases");
  sharp->add_option("--new", cfg.new_case)->required();
  sharp->add_option("--classical", cfg.classical_case)->required();
  sharp->add_option("--n-list", cfg.n_list)->required()->delimiter(',')->check(CLI::PositiveNumber);
  add_prec(sharp);
  add_format(sharp);

  auto* order = app.add_subcommand("order", "Measured decay order of a truncation error");
  order->add_option("--series", cfg.series)->required()->check(CLI::IsMember(order_names));
  order->add_option("--trunc", cfg.trunc)->required()->check(CLI::Range(0, 60));
  order->add_option("--n1", cfg.n1)->required()->check(CLI::PositiveNumber);
  order->add_option("--n2", cfg.n2)->required()->check(CLI::PositiveNumber);
  add_prec(order);
  add_format(order);

  auto* catalog = app.add_subcommand("catalog", "List every bound case");
  add_format(catalog);

  try {
    app.parse(argc, argv);
    // Reject unknown identifiers before any computation.
    if (!cfg.case_id.empty() && !detail::is_all(cfg.case_id)) select_case(cfg.case_id);
    if (!cfg.new_case.empty()) select_case(cfg.new_case);
    if (!cfg.classical_case.empty()) select_case(cfg.classical_case);
    if (*order && cfg.n2 < 2 * cfg.n1) throw CLI::ValidationError("--n2", "must be at least 2 * --n1");
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  std::ofstream file;
  if (!cfg.output.empty()) {
    file.open(cfg.output);
    if (!file) {
      err << "error: cannot open " << cfg.output << '\n';
      return kUsage;
    }
  }
  std::ostream& sink = cfg.output.empty() ? out : file;

  try {
    if (*coeffs) return detail::run_coeffs(cfg, sink);
    if (*omega) return detail::run_omega(cfg, sink);
    if (*verify) return detail::run_verify(cfg, sink);
    if (*sharp) return detail::run_sharpness(cfg, sink);
    if (*order) return detail::run_order(cfg, sink);
    return detail::run_catalog(cfg, sink);
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"ballvol"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace ballvol::cli
