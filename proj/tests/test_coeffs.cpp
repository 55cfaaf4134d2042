#include <gtest/gtest.h>

#include "ballvol/harness.hpp"
#include "oracles.hpp"

using namespace ballvol;

namespace {

std::vector<Rational> q_list(std::initializer_list<std::pair<long, long>> values) {
  std::vector<Rational> out;
  for (auto [n, d] : values) out.emplace_back(n, d);
  return out;
}

std::vector<Rational> slice(const std::vector<Rational>& v, std::size_t from, std::size_t count) {
  return {v.begin() + static_cast<long>(from), v.begin() + static_cast<long>(from + count)};
}

}  // namespace

TEST(BTail, PrintedTerms) {
  const auto b = b_tail_coeffs(6);
  EXPECT_EQ(b.start_index, 1);
  EXPECT_EQ(b.stride, 2);
  EXPECT_EQ(b.rational(1), Rational(1, 6));
  EXPECT_EQ(b.rational(2), Rational(-1, 45));
  EXPECT_EQ(b.rational(3), Rational(8, 315));
  EXPECT_EQ(b.rational(4), Rational(-8, 105));
  // 2^8 B_10 / (5 * 9) with B_10 = 5/66; the printed display shows 1/128 here.
  EXPECT_EQ(b.rational(5), Rational(128, 297));
  EXPECT_EQ(b.power(5), 10);
}

TEST(Mu, ValuesAndParity) {
  const auto mu = mu_coeffs(12);
  EXPECT_EQ(mu.rational(1), Rational(1, 4));
  EXPECT_EQ(mu.rational(2), Rational(0));
  EXPECT_EQ(mu.rational(3), Rational(-1, 24));
  EXPECT_EQ(mu.rational(5), Rational(1, 20));
  EXPECT_EQ(mu.rational(7), Rational(-17, 112));
  EXPECT_EQ(mu.rational(9), Rational(31, 36));
  EXPECT_EQ(mu.rational(11), Rational(-691, 88));
  for (int k = 1; k <= 6; ++k) EXPECT_TRUE(mu.rational(static_cast<std::size_t>(2 * k)).is_zero()) << 2 * k;
}

TEST(Lambda, PrintedTerms) {
  const auto lambda = lambda_coeffs(12);
  EXPECT_EQ(lambda.rational(1), Rational(1, 2));
  EXPECT_EQ(lambda.rational(2), Rational(-1, 2));
  EXPECT_EQ(lambda.rational(3), Rational(5, 12));
  EXPECT_EQ(lambda.rational(4), Rational(-1, 4));
  EXPECT_EQ(lambda.rational(5), Rational(1, 10));
  EXPECT_EQ(lambda.rational(6), Rational(-1, 6));
  EXPECT_EQ(lambda.rational(7), Rational(25, 56));
}

TEST(ExpTransform, ZeroInput) {
  const auto e = exp_transform(std::vector<Rational>(6, Rational(0)), 5);
  EXPECT_EQ(e, q_list({{1, 1}, {0, 1}, {0, 1}, {0, 1}, {0, 1}, {0, 1}}));
  EXPECT_THROW(exp_transform({Rational(0)}, 3), std::invalid_argument);
}

TEST(ExpTransform, ExponentialOfX) {
  // exp(x) = sum x^j / j!
  std::vector<Rational> g(9, Rational(0));
  g[1] = Rational(1);
  const auto e = exp_transform(g, 8);
  for (int j = 0; j <= 8; ++j) EXPECT_EQ(e[static_cast<std::size_t>(j)], Rational(mpq_class(1, oracle::factorial(j)))) << j;
}

TEST(C, DisplayedRow) {
  const auto c = c_coeffs(6).rationals();
  EXPECT_EQ(c, q_list({{1, 1}, {1, 4}, {1, 32}, {-5, 128}, {-21, 2048}, {399, 8192}, {869, 65536}}));
}

TEST(C, EqualsExpOfMu) {
  EXPECT_EQ(exp_transform(mu_coeffs(12).rationals(), 12), c_coeffs(12).rationals());
}

TEST(D, PrintedTermsAndExpOfLambda) {
  const auto d = d_coeffs(12).rationals();
  EXPECT_EQ(d[0], Rational(1));
  EXPECT_EQ(d[1], Rational(1, 2));
  EXPECT_EQ(d[2], Rational(-3, 8));
  EXPECT_EQ(d[3], Rational(3, 16));
  EXPECT_EQ(d[4], Rational(3, 128));
  EXPECT_EQ(exp_transform(lambda_coeffs(12).rationals(), 12), d);
}

TEST(S, PrintedTermsAndSquaring) {
  const auto s = s_coeffs(10);
  EXPECT_EQ(s.coeffs[1], PiExpression::monomial(Rational(1, 16), -1));
  EXPECT_EQ(s.coeffs[2], PiExpression::monomial(Rational(-1, 32), -1));
  EXPECT_EQ(s.coeffs[3], PiExpression::monomial(Rational(-5, 256), -1));
  EXPECT_EQ(s.coeffs[4], PiExpression::monomial(Rational(23, 512), -1));
  EXPECT_EQ(s.coeffs[5], PiExpression::monomial(Rational(53, 2048), -1));
  EXPECT_EQ(s.coeffs[6], PiExpression::monomial(Rational(-593, 4096), -1));
  EXPECT_EQ(s_coeffs(7).coeffs[7], PiExpression::monomial(Rational(-5165, 65536), -1));

  const auto c = c_coeffs(11).rationals();
  for (int j = 1; j <= 10; ++j) {
    Rational conv(0);
    for (int k = 0; k <= j + 1; ++k) conv += c[static_cast<std::size_t>(k)] * c[static_cast<std::size_t>(j + 1 - k)];
    EXPECT_EQ(s.coeffs[static_cast<std::size_t>(j)] * PiExpression::monomial(Rational(2), 1), PiExpression(conv)) << j;
  }
  EXPECT_EQ(s_constant_term(), PiExpression::monomial(Rational(1, 4), -1));
  EXPECT_EQ(s_constant_term() * PiExpression::monomial(Rational(2), 1), PiExpression(Rational(1, 2)));
}

TEST(T, PrintedTermsAndTriangularResidual) {
  const auto t = t_coeffs(12).rationals();
  EXPECT_EQ(t[0], Rational(1, 2));
  EXPECT_EQ(t[1], Rational(-1, 4));
  EXPECT_EQ(t[2], Rational(1, 8));
  EXPECT_EQ(t[3], Rational(1, 48));
  EXPECT_EQ(t[4], Rational(-3, 32));
  EXPECT_EQ(t[5], Rational(-161, 2880));
  const auto lambda = lambda_coeffs(13).rationals();
  for (int m = 1; m <= 13; ++m) {
    Rational acc(0);
    for (int j = 1; j <= m; ++j) {
      const Rational sign = j % 2 == 1 ? Rational(1) : Rational(-1);
      acc += sign * t[static_cast<std::size_t>(m - j)] / Rational(j);
    }
    EXPECT_EQ(acc - lambda[static_cast<std::size_t>(m)], Rational(0)) << m;
  }
}

TEST(TailReexpand, LeadingTerms) {
  const auto s1 = tail_reexpand(1, 6);
  EXPECT_EQ(s1[3], Rational(2));
  EXPECT_EQ(s1[4], Rational(-3));
  EXPECT_EQ(tail_reexpand(2, 8)[5], Rational(4));
  EXPECT_TRUE(s1[2].is_zero());
  EXPECT_THROW(tail_reexpand(0, 4), std::invalid_argument);
}

TEST(Psi, PrintedTerms) {
  const auto psi = psi_coeffs(12);
  EXPECT_EQ(psi.start_index, 3);
  EXPECT_EQ(psi.rational(3), Rational(1, 3));
  EXPECT_EQ(psi.rational(4), Rational(-1, 2));
  EXPECT_EQ(psi.rational(5), Rational(26, 45));
  EXPECT_EQ(psi.rational(6), Rational(-11, 18));
}

TEST(Psi, ClosedFormMatchesPolynomialOracle) {
  const auto psi = psi_coeffs(12).rationals();
  const auto ref = oracle::psi_by_polynomials(12);
  for (int m = 0; m <= 12; ++m) EXPECT_EQ(psi[static_cast<std::size_t>(m)], oracle::to_rational(ref[static_cast<std::size_t>(m)])) << m;
  EXPECT_EQ(psi, psi_by_subtraction(12));
}

TEST(ShiftExponent, FinalDisplay) {
  const auto [mixed, full] = shift_exponent_series(t_coeffs(5), 5);
  EXPECT_EQ(slice(mixed.rationals(), 0, 5), q_list({{1, 2}, {1, 4}, {-3, 8}, {23, 48}, {-15, 32}}));
  EXPECT_EQ(slice(full.rationals(), 0, 5), q_list({{1, 2}, {1, 4}, {-1, 8}, {-1, 48}, {3, 32}}));
  EXPECT_EQ(mixed.rational(5), Rational(881, 2880));
  EXPECT_EQ(full.rational(5), Rational(161, 2880));
  EXPECT_EQ(full.variable, Variable::InvNPlus1);
}

TEST(Generate, CountsAndNames) {
  EXPECT_EQ(generate_series(SeriesId::C, 7).size(), 7u);
  EXPECT_EQ(generate_series(SeriesId::Mu, 5).size(), 6u);  // index 0 is the explicit zero
  EXPECT_EQ(generate_series(SeriesId::Psi, 4).size(), 7u);
  EXPECT_THROW(generate_series(SeriesId::C, 0), std::invalid_argument);
  for (auto id : {SeriesId::BTail, SeriesId::Psi, SeriesId::Mu, SeriesId::C, SeriesId::S, SeriesId::Lambda,
                  SeriesId::D, SeriesId::T, SeriesId::TShiftMixed, SeriesId::TShiftFull})
    EXPECT_EQ(parse_series(series_name(id)), id);
  EXPECT_FALSE(parse_series("bogus"));
}

// |target - truncation| at n = 200 stays inside ten times the first omitted term.
class Envelope : public ::testing::TestWithParam<std::tuple<SeriesId, int>> {};

TEST_P(Envelope, TruncationAtTwoHundred) {
  const auto [id, j] = GetParam();
  const long n = 200;
  const auto ft = family_target(id);
  const auto err = (ft.target - family_truncation(id, j)).enclose(n, 256);
  const auto series = family_coefficients(id, j + 4);
  double omitted = 0;
  for (int p = j + 1; p <= j + 4 && omitted == 0; ++p) {
    const auto c = series.coeffs[static_cast<std::size_t>(p)];
    if (!c.is_zero()) omitted = std::abs(c.rational().to_double()) * std::pow(static_cast<double>(n), -p);
  }
  ASSERT_GT(omitted, 0);
  EXPECT_LT(std::max(std::abs(err.lower_d()), std::abs(err.upper_d())), 10 * omitted);
}

INSTANTIATE_TEST_SUITE_P(Families, Envelope,
                         ::testing::Combine(::testing::Values(SeriesId::Mu, SeriesId::C, SeriesId::Lambda, SeriesId::D),
                                            ::testing::Values(4, 6)));
