#include "beatty/diophantine.hpp"

#include "beatty/errors.hpp"

#include <gtest/gtest.h>

#include <boost/multiprecision/integer.hpp>

#include <cmath>
#include <sstream>

using beatty::BigInt;
using beatty::parse_real_expr;
using beatty::RealExpr;

namespace {

std::vector<std::pair<long, long>> small(const beatty::ContinuedFraction& cf) {
  std::vector<std::pair<long, long>> out;
  for (const auto& c : cf.convergents) out.emplace_back(c.p.convert_to<long>(), c.q.convert_to<long>());
  return out;
}

// Exact ||q*phi|| via phi*q = (q + q*sqrt(5))/2, from isqrt at 2^-200.
double phi_distance(long q) {
  const BigInt scale = BigInt(1) << 200;
  const BigInt root = beatty::isqrt(BigInt(5) * q * q * scale * scale);  // floor(q sqrt5 * 2^200)
  const BigInt twice = BigInt(q) * scale + root;                           // 2 q phi * 2^200
  const BigInt frac2 = twice % (2 * scale);
  const BigInt dist2 = frac2 < scale ? frac2 : BigInt(2 * scale - frac2);
  return std::ldexp(dist2.convert_to<double>(), -201);
}

}  // namespace

TEST(ContinuedFraction, SqrtTwo) {
  const auto cf = beatty::continued_fraction(parse_real_expr("sqrt(2)"), 200);
  const std::vector<std::pair<long, long>> expect = {{1, 1},   {3, 2},    {7, 5},    {17, 12},
                                                     {41, 29}, {99, 70}, {239, 169}, {577, 408}};
  EXPECT_EQ(small(cf), expect);
  EXPECT_EQ(cf.partial_quotients.front(), 1);
  for (std::size_t j = 1; j < cf.partial_quotients.size(); ++j) EXPECT_EQ(cf.partial_quotients[j], 2);
}

TEST(ContinuedFraction, GoldenRatioGivesFibonacci) {
  const auto cf = beatty::continued_fraction(RealExpr::golden_ratio(), BigInt(1) << 80);
  BigInt f0 = 1, f1 = 1;
  for (const auto& c : cf.convergents) {
    EXPECT_EQ(c.p, f1);
    EXPECT_EQ(c.q, f0);
    const BigInt f2 = f0 + f1;
    f0 = f1;
    f1 = f2;
  }
  for (const auto& a : cf.partial_quotients) EXPECT_EQ(a, 1);
  EXPECT_GT(cf.convergents.back().q, BigInt(1) << 80);
}

TEST(ContinuedFraction, DeterminantIdentityAndMatchesExactRecurrence) {
  for (const char* text : {"sqrt(2)", "sqrt(3)", "(3 + sqrt(7))/5", "1/sqrt(2) - 1/sqrt(3) + 2", "-sqrt(13)/4",
                           "sqrt(991)"}) {
    const auto theta = parse_real_expr(text);
    const auto cf = beatty::continued_fraction(theta, boost::multiprecision::pow(BigInt(10), 30));
    for (std::size_t j = 1; j < cf.convergents.size(); ++j) {
      const auto& a = cf.convergents[j];
      const auto& b = cf.convergents[j - 1];
      EXPECT_EQ(boost::multiprecision::abs(BigInt(a.p * b.q - b.p * a.q)), 1) << text;
    }
    EXPECT_NO_THROW(beatty::verify_convergents(cf));
    if (auto quad = theta.as_quadratic()) {
      const auto exact = beatty::quadratic_expansion(*quad);
      std::vector<BigInt> unrolled = exact.preperiod;
      while (unrolled.size() < cf.partial_quotients.size())
        unrolled.insert(unrolled.end(), exact.period.begin(), exact.period.end());
      unrolled.resize(cf.partial_quotients.size());
      EXPECT_EQ(unrolled, cf.partial_quotients) << text;
    }
  }
}

TEST(ContinuedFraction, Periods) {
  const auto s2 = beatty::quadratic_expansion(*parse_real_expr("sqrt(2)").as_quadratic());
  EXPECT_EQ(s2.preperiod, std::vector<BigInt>{1});
  EXPECT_EQ(s2.period, std::vector<BigInt>{2});
  const auto s3 = beatty::quadratic_expansion(*parse_real_expr("sqrt(3)").as_quadratic());
  EXPECT_EQ(s3.preperiod, std::vector<BigInt>{1});
  EXPECT_EQ(s3.period, (std::vector<BigInt>{1, 2}));
  const auto phi = beatty::quadratic_expansion(*RealExpr::golden_ratio().as_quadratic());
  EXPECT_EQ(phi.period, std::vector<BigInt>{1});
}

TEST(ContinuedFraction, Rejections) {
  EXPECT_THROW(beatty::continued_fraction(parse_real_expr("22/7"), 100), beatty::ValidationError);
  EXPECT_THROW(beatty::continued_fraction(parse_real_expr("sqrt(2)"), boost::multiprecision::pow(BigInt(10), 400), 256),
               beatty::PrecisionExhausted);
}

TEST(LinearForm, Examples) {
  const auto r2 = parse_real_expr("sqrt(2)");
  EXPECT_EQ(beatty::linear_form({1}, {r2}), r2);
  EXPECT_EQ(beatty::linear_form({1, -1}, {r2, r2}).as_rational(), beatty::BigRational(0));
  const auto f = beatty::linear_form({2, 3}, {parse_real_expr("1/sqrt(2)"), parse_real_expr("1/sqrt(3)")});
  EXPECT_TRUE(f.eval(64).contains(beatty::BigRational(314626437, 100000000)) ||
              std::abs(f.approx() - 3.14626437) < 1e-8);
  EXPECT_NEAR(f.approx(), std::sqrt(2.0) + std::sqrt(3.0), 1e-15);
  EXPECT_THROW(beatty::linear_form({0, 0}, {r2, r2}), beatty::ZeroVector);
  EXPECT_THROW(beatty::lemma3_approx(beatty::linear_form({1, -1}, {r2, r2}), 100, 0.2), beatty::ValidationError);
}

TEST(Lemma3, Examples) {
  const auto r2 = parse_real_expr("sqrt(2)");
  const auto a = beatty::lemma3_approx(r2, 100, 0.2);
  EXPECT_EQ(a.a, 99);
  EXPECT_EQ(a.q, 70);
  EXPECT_EQ(a.next_q, 169);
  EXPECT_NEAR(a.residual_bound, 99 - 70 * std::sqrt(2.0), 1e-12);
  EXPECT_LE(a.residual_bound, 0.01);
  const auto b = beatty::lemma3_approx(r2, 150, 0.2);
  EXPECT_EQ(b.q, 70);
  EXPECT_LE(b.residual_bound, 1.0 / 150);
  const auto c = beatty::lemma3_approx(RealExpr::golden_ratio(), 1000, 0.2);
  EXPECT_EQ(c.q, 987);
  EXPECT_EQ(c.a, 1597);
  EXPECT_FALSE(c.below_floor);
  EXPECT_THROW(beatty::lemma3_approx(r2, 10, 0.2), std::invalid_argument);
  EXPECT_THROW(beatty::lemma3_approx(r2, 100, 0.5), std::invalid_argument);
}

TEST(Lemma3, CertificatesAcrossScales) {
  const RealExpr thetas[] = {parse_real_expr("sqrt(2)"), RealExpr::golden_ratio(),
                             parse_real_expr("1/sqrt(2) - 1/sqrt(3)")};
  for (const auto& t : thetas) {
    for (int e : {3, 6, 9, 15}) {
      const BigInt Q = boost::multiprecision::pow(BigInt(10), e);
      const auto r = beatty::lemma3_approx(t, Q, 0.2);
      EXPECT_TRUE(beatty::verify_approx(t, r, Q)) << t.to_string() << " " << e;
      EXPECT_EQ(boost::multiprecision::gcd(r.a, r.q), 1);
      EXPECT_LE(r.q, Q);
      EXPECT_GT(r.next_q, Q);
      EXPECT_LE(r.residual_bound, 1.0 / Q.convert_to<double>());
    }
  }
  // A wrong answer fails reverification.
  auto r = beatty::lemma3_approx(thetas[0], 1000, 0.2);
  r.a += 1;
  EXPECT_FALSE(beatty::verify_approx(thetas[0], r, 1000));
}

TEST(Lemma3, FlagsSmallDenominator) {
  // 1/q' <= 1/Q forces q' > Q, but a huge partial quotient can leave q tiny.
  const auto theta = parse_real_expr("1/1000 + sqrt(2)/1000000000000000");
  const auto r = beatty::lemma3_approx(theta, 10000000, 0.45);
  EXPECT_EQ(r.q, 1000);
  EXPECT_TRUE(r.below_floor);
  EXPECT_TRUE(beatty::verify_approx(theta, r, 10000000));
}

TEST(TypeScan, GoldenRatio) {
  const auto rep = beatty::type_scan({RealExpr::golden_ratio()}, 10000, beatty::TypeMode::power, 4);
  ASSERT_EQ(rep.records.size(), 10000u);
  EXPECT_LE(rep.tail_max_exponent, 1.1);
  EXPECT_GT(rep.tail_max_exponent, 1.0);
  // Small q are far from the limit: q = 2 already gives about 2.08.
  EXPECT_NEAR(rep.max_exponent, -std::log(phi_distance(2)) / std::log(2.0), 1e-9);
  for (long q : {2L, 13L, 987L, 6765L, 9999L}) {
    EXPECT_NEAR(rep.records[q - 1].distance, phi_distance(q), 1e-15) << q;
  }
  for (std::size_t i = 1; i < rep.running_max.size(); ++i)
    EXPECT_GT(rep.running_max[i].second, rep.running_max[i - 1].second);
}

TEST(TypeScan, PairAndSubexponential) {
  const std::vector<RealExpr> pair = {parse_real_expr("1/sqrt(2)"), parse_real_expr("1/sqrt(3)")};
  const auto rep = beatty::type_scan(pair, 300, beatty::TypeMode::power, 4);
  EXPECT_EQ(rep.records.size(), (601u * 601u - 1) / 2);
  EXPECT_TRUE(std::isfinite(rep.max_exponent));
  EXPECT_GT(rep.max_exponent, 0.0);
  const auto sub = beatty::type_scan(pair, 100, beatty::TypeMode::subexponential);
  EXPECT_TRUE(std::isfinite(sub.max_exponent));
  // Single thread and several threads agree exactly.
  const auto again = beatty::type_scan(pair, 100, beatty::TypeMode::subexponential, 3);
  ASSERT_EQ(sub.records.size(), again.records.size());
  for (std::size_t i = 0; i < sub.records.size(); ++i) EXPECT_EQ(sub.records[i].distance, again.records[i].distance);
  EXPECT_THROW(beatty::type_scan(pair, 600, beatty::TypeMode::power), beatty::LimitTooLarge);
  std::ostringstream os;
  beatty::write_type_scan_csv(os, beatty::type_scan({pair[0]}, 3, beatty::TypeMode::power));
  EXPECT_EQ(os.str().substr(0, 24), "m1,distance,exponent\r\n1,");
}
