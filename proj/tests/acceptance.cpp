// Acceptance run: one PASS/FAIL line per criterion. Exit status is the number
// of failing criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "ballvol/harness.hpp"
#include "oracles.hpp"

using namespace ballvol;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Accumulates mismatches; the first few go into the detail text.
class Checker {
 public:
  template <typename A, typename B>
  void equal(const A& got, const B& want, const std::string& what) {
    if (got == want) return;
    fail(what);
  }
  void require(bool ok, const std::string& what) {
    if (!ok) fail(what);
  }
  void note(const std::string& s) { notes_ += (notes_.empty() ? "" : "; ") + s; }
  Outcome outcome() const {
    if (failures_ == 0) return {true, notes_};
    return {false, std::to_string(failures_) + " mismatch(es): " + first_ + (notes_.empty() ? "" : "; " + notes_)};
  }

 private:
  void fail(const std::string& what) {
    if (failures_++ < 4) first_ += (first_.empty() ? "" : ", ") + what;
  }
  int failures_ = 0;
  std::string first_, notes_;
};

std::vector<Rational> q(std::initializer_list<std::pair<long, long>> values) {
  std::vector<Rational> out;
  for (auto [n, d] : values) out.emplace_back(n, d);
  return out;
}

void expect_entries(Checker& ck, const std::string& family, const std::vector<Rational>& got, std::size_t first,
                    std::size_t step, const std::vector<Rational>& want) {
  for (std::size_t i = 0; i < want.size(); ++i) {
    const std::size_t idx = first + i * step;
    ck.require(idx < got.size() && got[idx] == want[i], family + "[" + std::to_string(idx) + "]");
  }
}

Outcome coefficient_fidelity() {
  Checker ck;
  expect_entries(ck, "b", b_tail_coeffs(4).rationals(), 1, 1, q({{1, 6}, {-1, 45}, {8, 315}, {-8, 105}}));
  const auto mu = mu_coeffs(10).rationals();
  expect_entries(ck, "mu", mu, 1, 2, q({{1, 4}, {-1, 24}, {1, 20}, {-17, 112}, {31, 36}}));
  expect_entries(ck, "mu", mu, 2, 2, q({{0, 1}, {0, 1}, {0, 1}, {0, 1}, {0, 1}}));
  expect_entries(ck, "c", c_coeffs(6).rationals(), 1, 1,
                 q({{1, 4}, {1, 32}, {-5, 128}, {-21, 2048}, {399, 8192}, {869, 65536}}));
  std::vector<Rational> s_pi;
  for (const auto& e : s_coeffs(7).coeffs) s_pi.push_back((e * PiExpression::pi()).rational());
  expect_entries(ck, "s*pi", s_pi, 1, 1,
                 q({{1, 16}, {-1, 32}, {-5, 256}, {23, 512}, {53, 2048}, {-593, 4096}, {-5165, 65536}}));
  expect_entries(ck, "lambda", lambda_coeffs(6).rationals(), 1, 1,
                 q({{1, 2}, {-1, 2}, {5, 12}, {-1, 4}, {1, 10}, {-1, 6}}));
  expect_entries(ck, "d", d_coeffs(4).rationals(), 1, 1, q({{1, 2}, {-3, 8}, {3, 16}, {3, 128}}));
  expect_entries(ck, "t", t_coeffs(3).rationals(), 0, 1, q({{1, 2}, {-1, 4}, {1, 8}, {1, 48}}));
  expect_entries(ck, "psi", psi_coeffs(6).rationals(), 3, 1, q({{1, 3}, {-1, 2}, {26, 45}, {-11, 18}}));
  const auto [mixed, full] = shift_exponent_series(t_coeffs(4), 4);
  expect_entries(ck, "shift_mixed", mixed.rationals(), 0, 1, q({{1, 2}, {1, 4}, {-3, 8}, {23, 48}, {-15, 32}}));
  expect_entries(ck, "shift_full", full.rationals(), 0, 1, q({{1, 2}, {1, 4}, {-1, 8}, {-1, 48}, {3, 32}}));
  ck.note("b_5 = " + b_tail_coeffs(5).rational(5).str() + " (display prints 1/128)");
  return ck.outcome();
}

Outcome structure() {
  Checker ck;
  const int order = 12;
  const auto c = c_coeffs(order + 1).rationals();
  ck.equal(exp_transform(mu_coeffs(order).rationals(), order), c_coeffs(order).rationals(), "exp(mu) != c");
  ck.equal(exp_transform(lambda_coeffs(order).rationals(), order), d_coeffs(order).rationals(), "exp(lambda) != d");
  const auto s = s_coeffs(order);
  for (int j = 1; j <= order; ++j) {
    Rational conv(0);
    for (int k = 0; k <= j + 1; ++k) conv += c[static_cast<std::size_t>(k)] * c[static_cast<std::size_t>(j + 1 - k)];
    ck.equal(s.coeffs[static_cast<std::size_t>(j)] * PiExpression::monomial(Rational(2), 1), PiExpression(conv),
             "2 pi s_" + std::to_string(j));
  }
  ck.equal(s_constant_term() * PiExpression::monomial(Rational(2), 1), PiExpression(Rational(1, 2)), "constant term");
  const auto t = t_coeffs(order).rationals();
  const auto lambda = lambda_coeffs(order + 1).rationals();
  for (int m = 1; m <= order + 1; ++m) {
    Rational acc(0);
    for (int j = 1; j <= m; ++j) acc += (j % 2 == 1 ? Rational(1) : Rational(-1)) * t[static_cast<std::size_t>(m - j)] / Rational(j);
    ck.equal(acc, lambda[static_cast<std::size_t>(m)], "residual " + std::to_string(m));
  }
  return ck.outcome();
}

Outcome certification() {
  Checker ck;
  const auto audit = audit_catalog(1, 5000, PrecisionPolicy::from_env());
  long undecided = 0;
  for (const auto& r : audit.reports)
    for (const auto& rec : r.records)
      for (const SideRecord* s : {&rec.lower, &rec.upper})
        if (s->claimed && s->status == Status::kUndecided) ++undecided;
  for (const auto& d : audit.discrepancies) {
    if (d.documented || d.fail_count == 0) continue;
    std::ostringstream os;
    os << d.case_id << ":" << d.variant << " " << side_name(d.side) << " certified_fail at n=" << *d.first_failing_n;
    if (*d.last_failing_n != *d.first_failing_n) os << ".." << *d.last_failing_n;
    os << " (" << d.fail_count << " n), holds from n=" << (d.stable_from ? std::to_string(*d.stable_from) : "-");
    ck.require(false, os.str());
  }
  bool ab_seen = false, o6_seen = false;
  for (const auto& d : audit.discrepancies) {
    if (d.case_id == "NEW_AB" && d.variant == "printed" && d.side == Side::kLower) {
      ab_seen = d.alternate_first_certified_n.has_value();
      ck.note("NEW_AB printed tail fails at " + std::to_string(d.fail_count) + " n, " + d.alternate_variant +
              " certifies from n=" + (ab_seen ? std::to_string(*d.alternate_first_certified_n) : "-"));
    }
    if (d.case_id == "NEW_O6" && d.side == Side::kLower) {
      o6_seen = d.first_defined_n && d.first_certified_n;
      ck.note("NEW_O6 lower radicand positive from n=" + (d.first_defined_n ? std::to_string(*d.first_defined_n) : "-") +
              ", certifies from n=" + (d.first_certified_n ? std::to_string(*d.first_certified_n) : "-"));
    }
  }
  ck.require(ab_seen, "missing NEW_AB discrepancy record");
  ck.require(o6_seen, "missing NEW_O6 discrepancy record");
  ck.note(std::to_string(audit.reports.size()) + " scans, " + std::to_string(undecided) + " undecided claimed sides");
  return ck.outcome();
}

Outcome equality_cases() {
  Checker ck;
  const std::vector<std::tuple<const char*, Side, long>> points = {
      {"CL_CHEN_OMEGA", Side::kLower, 1}, {"CL_CHEN_SUM", Side::kLower, 1}, {"CL_ALZ_POW", Side::kLower, 1},
      {"CL_CHEN_POW", Side::kUpper, 1},   {"CL_CHEN_GEO", Side::kUpper, 1}, {"CL_ALZ_SUM", Side::kLower, 2},
  };
  for (const auto& [id, side, n] : points) {
    const auto r = verify_case(select_case(id), n, n, PrecisionPolicy::from_env());
    const auto& s = side == Side::kLower ? r.records.front().lower : r.records.front().upper;
    const bool pinned = s.margin && s.margin->contains_zero() && s.margin->width_log2() < -64;
    ck.require(s.status != Status::kCertifiedFail && (s.status == Status::kUndecided || pinned),
               std::string(id) + " " + std::string(status_name(s.status)));
  }
  return ck.outcome();
}

Outcome monotonicity() {
  Checker ck;
  const auto m = monotonicity_check(1, 5000, PrecisionPolicy::from_env());
  ck.require(m.direct_all_hold(), std::to_string(m.direct_not_certified.size()) + " n not certified");
  ck.note(std::to_string(m.direct_hold) + "/5000 certified");
  return ck.outcome();
}

Outcome decay_orders() {
  Checker ck;
  const std::vector<std::tuple<SeriesId, int, double>> cases = {
      {SeriesId::Mu, 5, 7.0}, {SeriesId::Lambda, 3, 4.0}, {SeriesId::C, 2, 3.0}};
  std::ostringstream os;
  for (const auto& [id, trunc, want] : cases) {
    const auto est = decay_order(id, trunc, 100, 200, PrecisionPolicy::from_env());
    ck.require(est.decided && std::abs(est.value() - want) <= 0.15, std::string(series_name(id)));
    os << series_name(id) << "=" << est.value() << " ";
  }
  ck.note(os.str());
  return ck.outcome();
}

Outcome sharpness() {
  Checker ck;
  const std::vector<long> ns{10, 50, 100};
  const auto rs = sharpness_compare(select_case("NEW_RS"), select_case("CL_AND_KR"), ns, PrecisionPolicy::from_env());
  const auto cd = sharpness_compare(select_case("NEW_CD"), select_case("CL_BORG_ALZ_QV:alzer_qiu_vuorinen"), ns,
                                    PrecisionPolicy::from_env());
  for (const auto* t : {&rs, &cd})
    for (const auto& row : t->rows)
      ck.require(row.status == Status::kCertifiedHold && row.narrower, t->new_case + " n=" + std::to_string(row.n));
  return ck.outcome();
}

Outcome oracle_equivalence() {
  Checker ck;
  const auto closed = psi_coeffs(12).rationals();
  ck.equal(closed, psi_by_subtraction(12), "series subtraction");
  const auto poly = oracle::psi_by_polynomials(12);
  for (std::size_t m = 0; m < poly.size(); ++m)
    ck.equal(closed.at(m), oracle::to_rational(poly[m]), "polynomial oracle psi_" + std::to_string(m));
  return ck.outcome();
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"coefficient fidelity", coefficient_fidelity},
      {"exp/square/triangular structure", structure},
      {"inequality certification over [1, 5000]", certification},
      {"equality-case handling", equality_cases},
      {"monotonicity of Omega_n^(1/n) over [1, 5000]", monotonicity},
      {"decay orders", decay_orders},
      {"sharpness", sharpness},
      {"psi oracle equivalence", oracle_equivalence},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += o.pass ? 0 : 1;
    std::printf("%s criterion %zu: %s (%.2f s)%s%s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), secs,
                o.detail.empty() ? "" : " -- ", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed;
}
