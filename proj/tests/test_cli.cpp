#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ballvol/cli.hpp"

using namespace ballvol;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) out.push_back(line);
  return out;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  bool quoted = false;
  for (char ch : line) {
    if (ch == '"') {
      quoted = !quoted;
    } else if (ch == ',' && !quoted) {
      out.push_back(cell);
      cell.clear();
    } else {
      cell += ch;
    }
  }
  out.push_back(cell);
  return out;
}

}  // namespace

TEST(Cli, CoeffsTable) {
  const auto r = run({"coeffs", "--series", "c", "--count", "7", "--format", "table"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 8u);
  const std::vector<std::string> expected{"1", "1/4", "1/32", "-5/128", "-21/2048", "399/8192", "869/65536"};
  for (std::size_t i = 0; i < expected.size(); ++i) {
    std::istringstream is(rows[i + 1]);
    std::string index, value;
    is >> index >> value;
    EXPECT_EQ(index, std::to_string(i));
    EXPECT_EQ(value, expected[i]);
  }
}

TEST(Cli, Omega) {
  const auto r = run({"omega", "--n", "4"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("1/2·pi^2 ≈ 4.934802200", 0), 0u) << r.out;
  const auto j = json::parse(run({"omega", "--n", "3", "--format", "json"}).out);
  EXPECT_EQ(pi_expression_from_json(j.at("value")), PiExpression::monomial(Rational(4, 3), 1));
}

TEST(Cli, CoeffsJsonRoundTrip) {
  for (const char* name : {"b", "psi", "mu", "c", "s", "lambda", "d", "t", "tshift_mixed", "tshift_full"}) {
    const auto r = run({"coeffs", "--series", name, "--count", "9", "--format", "json"});
    ASSERT_EQ(r.code, 0) << name << r.err;
    const auto parsed = coeff_series_from_json(json::parse(r.out));
    const auto expected = generate_series(*parse_series(name), 9);
    EXPECT_EQ(parsed.id, expected.id);
    EXPECT_EQ(parsed.start_index, expected.start_index);
    EXPECT_EQ(parsed.stride, expected.stride);
    EXPECT_EQ(parsed.variable, expected.variable);
    EXPECT_EQ(parsed.coeffs, expected.coeffs) << name;
  }
  const auto both = json::parse(run({"coeffs", "--series", "tshift", "--count", "5", "--format", "json"}).out);
  ASSERT_EQ(both.size(), 2u);
  EXPECT_EQ(coeff_series_from_json(both[1]).rational(4), Rational(3, 32));
  const auto bern = json::parse(run({"coeffs", "--series", "bernoulli", "--count", "11", "--format", "json"}).out);
  EXPECT_EQ(rational_from_json(bern["coeffs"][10]), Rational(5, 66));
}

TEST(Cli, RationalAndPiSerialization) {
  EXPECT_EQ(to_json(Rational(-5, 128)).get<std::string>(), "-5/128");
  EXPECT_EQ(to_json(Rational(3)).get<std::string>(), "3/1");
  const auto e = PiExpression(Rational(2)) + PiExpression::monomial(Rational(1, 16), -1);
  const auto j = to_json(e);
  EXPECT_EQ(j.dump(), R"([{"coeff":"1/16","pi_pow":-1},{"coeff":"2/1","pi_pow":0}])");
  EXPECT_EQ(pi_expression_from_json(j), e);
}

TEST(Cli, VerifyJson) {
  const auto r = run({"verify", "--case", "cl_and_kr", "--from", "1", "--to", "100", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["case"], "CL_AND_KR");
  EXPECT_EQ(j["n_from"], 1);
  EXPECT_EQ(j["n_to"], 100);
  EXPECT_EQ(j["prec_bits"], 128);
  EXPECT_EQ(j["records"].size(), 100u);
  EXPECT_EQ(j["summary"]["first_certified_n"], 1);
  EXPECT_TRUE(j["summary"]["violations"].empty());
  for (const char* key : {"n", "lower", "value", "upper", "margin_lo", "margin_hi", "status"})
    EXPECT_TRUE(j["records"][0].contains(key)) << key;
}

TEST(Cli, CsvAndJsonAgree) {
  const std::vector<std::string> base{"verify", "--case", "NEW_AB", "--from", "1", "--to", "25"};
  auto csv_args = base, json_args = base;
  csv_args.insert(csv_args.end(), {"--format", "csv"});
  json_args.insert(json_args.end(), {"--format", "json"});
  const auto csv = run(csv_args), js = run(json_args);
  ASSERT_EQ(csv.code, js.code);
  const auto rows = lines(csv.out);
  ASSERT_EQ(rows.front(), "case,n,lower,value,upper,margin_lo,margin_hi,status");
  const auto reports = json::parse(js.out);
  ASSERT_TRUE(reports.is_array());
  std::vector<std::string> json_status;
  for (const auto& rep : reports)
    for (const auto& rec : rep["records"]) json_status.push_back(rec["status"]);
  ASSERT_EQ(rows.size() - 1, json_status.size());
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto cells = split_csv(rows[i]);
    ASSERT_EQ(cells.size(), 8u) << rows[i];
    EXPECT_EQ(cells[7], json_status[i - 1]);
  }
  // 30 significant digits in the value column.
  const auto value = split_csv(rows[1])[3];
  const auto mantissa = value.substr(0, value.find('e'));
  EXPECT_EQ(std::count_if(mantissa.begin(), mantissa.end(), ::isdigit), 30) << value;
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"verify", "--case", "nope", "--to", "3"}).code, 1);
  EXPECT_EQ(run({"verify", "--case", "NEW_AB:nope", "--to", "3"}).code, 1);
  EXPECT_EQ(run({"coeffs", "--series", "zeta"}).code, 1);
  EXPECT_EQ(run({"coeffs", "--series", "c", "--format", "xml"}).code, 1);
  EXPECT_EQ(run({"omega"}).code, 1);
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"verify", "--case", "NEW_PQ", "--from", "5", "--to", "3"}).code, 1);
  EXPECT_EQ(run({"order", "--series", "mu", "--trunc", "5", "--n1", "100", "--n2", "150"}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
  // NEW_AB printed variant fails but is audited, so no exit 2.
  EXPECT_EQ(run({"verify", "--case", "NEW_AB", "--to", "5"}).code, 0);
  EXPECT_EQ(run({"verify", "--case", "CL_ALZ_SUM", "--to", "3"}).code, 2);
  EXPECT_EQ(run({"verify", "--case", "CL_CHEN_OMEGA", "--to", "1", "--prec", "128"}).code, 3);
}

TEST(Cli, PrecisionFromEnvironment) {
  ::setenv("BALLVOL_PREC", "200", 1);
  const auto env = json::parse(run({"verify", "--case", "NEW_PQ", "--to", "2", "--format", "json"}).out);
  ::unsetenv("BALLVOL_PREC");
  EXPECT_EQ(env["prec_bits"], 200);
  const auto flag = json::parse(run({"verify", "--case", "NEW_PQ", "--to", "2", "--prec", "300", "--format", "json"}).out);
  EXPECT_EQ(flag["prec_bits"], 300);
}

TEST(Cli, SharpnessOrderCatalog) {
  const auto s = run({"sharpness", "--new", "NEW_RS", "--classical", "CL_AND_KR", "--n-list", "10,50,100", "--format",
                      "json"});
  ASSERT_EQ(s.code, 0) << s.err;
  const auto sj = json::parse(s.out);
  ASSERT_EQ(sj["rows"].size(), 3u);
  for (const auto& row : sj["rows"]) EXPECT_TRUE(row["narrower"].get<bool>());
  EXPECT_EQ(run({"sharpness", "--new", "NEW_RS", "--classical", "NEW_CD", "--n-list", "10"}).code, 1);

  const auto o = run({"order", "--series", "lambda", "--trunc", "3", "--n1", "100", "--n2", "200", "--format", "json"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto oj = json::parse(o.out);
  EXPECT_NEAR(oj["order_lo"].get<double>(), 4.0, 0.1);
  EXPECT_TRUE(oj["decided"].get<bool>());

  const auto c = run({"catalog", "--format", "json"});
  ASSERT_EQ(c.code, 0);
  EXPECT_EQ(json::parse(c.out).size(), 19u);
  EXPECT_NE(run({"catalog"}).out.find("CL_MERKLE"), std::string::npos);
}

TEST(Cli, OutputFile) {
  const auto path = std::filesystem::temp_directory_path() / "ballvol_cli_test.csv";
  const auto r = run({"coeffs", "--series", "mu", "--count", "3", "--format", "csv", "--output", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::string header, first;
  std::getline(in, header);
  std::getline(in, first);
  EXPECT_EQ(header, "series,index,power,variable,coeff,decimal");
  EXPECT_EQ(first.rfind("mu,1,1,inv_n,1/4,", 0), 0u) << first;
  std::filesystem::remove(path);
}
