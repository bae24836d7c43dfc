#include "beatty/real_expr.hpp"

#include "beatty/errors.hpp"

#include <boost/multiprecision/integer.hpp>
#include <gtest/gtest.h>

#include <random>

using beatty::BigInt;
using beatty::BigRational;
using beatty::Dyadic;
using beatty::parse_real_expr;
using beatty::Rationality;
using beatty::RealExpr;

namespace {

// Exact floor((a + b*sqrt(d)) / c) for nonsquare d, by integer square roots.
// a + b*sqrt(d) lies strictly between consecutive integers t and t + 1, and
// then no integer multiple of c can separate it from t.
BigInt exact_quadratic_floor(BigInt a, BigInt b, const BigInt& d, BigInt c) {
  if (c < 0) {
    a = -a;
    b = -b;
    c = -c;
  }
  const BigInt r = boost::multiprecision::sqrt(BigInt(b * b * d));
  const BigInt t = b >= 0 ? BigInt(a + r) : BigInt(a - r - 1);
  return beatty::floor_div(t, c);
}

bool is_square(const BigInt& n) {
  const BigInt r = boost::multiprecision::sqrt(n);
  return r * r == n;
}

}  // namespace

TEST(RealExprEval, RationalIsExact) {
  const auto x = RealExpr::rational(3, 4).eval(8);
  EXPECT_TRUE(x.is_exact());
  EXPECT_EQ(x.lo().to_double(), 0.75);
}

TEST(RealExprEval, SqrtTwoWidthAndContainment) {
  const auto x = RealExpr::sqrt(2).eval(32);
  EXPECT_LT(x.lo().to_double(), 1.4142135624);
  EXPECT_GT(x.hi().to_double(), 1.4142135623);
  EXPECT_LE(x.width(), Dyadic(1, -31).scaled(1));
  EXPECT_TRUE(x.meets_width_contract());
  // sqrt(2)^2 = 2 must be inside the squared enclosure
  EXPECT_TRUE((x * x).contains(Dyadic(2)));
}

TEST(RealExprEval, GoldenRatioFromIntegerSqrt) {
  const auto x = parse_real_expr("const:phi").eval(16);
  EXPECT_LE(x.lo().to_double(), 1.6180339);
  EXPECT_GE(x.hi().to_double(), 1.6180340);
  // (1 + isqrt(5 * 4^40)/2^40)/2 agrees with the enclosure
  const BigInt r = boost::multiprecision::sqrt(BigInt(5) << 80);
  const BigRational approx = (1 + BigRational(r, BigInt(1) << 40)) / 2;
  EXPECT_TRUE(x.contains(approx));
}

TEST(RealExprEval, NamedConstants) {
  const auto pi = RealExpr::constant(beatty::NamedConstant::pi).eval(200);
  EXPECT_NEAR(pi.midpoint().to_double(), 3.141592653589793, 1e-15);
  const auto e = RealExpr::constant(beatty::NamedConstant::e).eval(200);
  EXPECT_NEAR(e.midpoint().to_double(), 2.718281828459045, 1e-15);
  EXPECT_TRUE(pi.meets_width_contract());
  EXPECT_TRUE(e.meets_width_contract());
}

TEST(RealExprEval, PrecisionNesting) {
  const std::vector<RealExpr> xs = {
      RealExpr::sqrt(2),
      RealExpr::rational(1, 3),
      parse_real_expr("pi"),
      parse_real_expr("e"),
      parse_real_expr("1/sqrt(2) - 1/sqrt(3)"),
      parse_real_expr("1/pi"),
      parse_real_expr("(1 - sqrt(3))/sqrt(5)"),
      parse_real_expr("-7*sqrt(11)/3"),
  };
  for (const auto& x : xs) {
    auto prev = x.eval(8);
    for (int bits : {9, 16, 31, 64, 100, 256, 1000}) {
      const auto cur = x.eval(bits);
      EXPECT_TRUE(cur.subset_of(prev)) << x.to_string() << " at " << bits;
      EXPECT_TRUE(cur.meets_width_contract()) << x.to_string() << " at " << bits;
      prev = cur;
    }
  }
}

TEST(RealExprEval, FloorMatchesExactIntegerOracle) {
  std::mt19937_64 rng(2024);
  int checked = 0;
  while (checked < 10000) {
    const BigInt a = static_cast<long long>(rng() % 2000001) - 1000000;
    const BigInt b = static_cast<long long>(rng() % 2001) - 1000;
    const BigInt d = static_cast<long long>(rng() % 9999) + 2;
    BigInt c = static_cast<long long>(rng() % 1999) - 999;
    if (b == 0 || c == 0 || is_square(d)) continue;
    const RealExpr x = RealExpr::quadratic(a, b, d, c);
    const int bits = 8 + static_cast<int>(rng() % 120);
    BigInt f;
    // Escalate like the Beatty layer does.
    for (int p = bits;; p *= 2) {
      if (auto fl = beatty::floor_interval(x.eval(p))) {
        f = *fl;
        break;
      }
    }
    ASSERT_EQ(f, exact_quadratic_floor(a, b, d, c)) << x.to_string();
    ++checked;
  }
}

TEST(RealExprAlgebra, SimplifiesToLeafForms) {
  const RealExpr s2 = RealExpr::sqrt(2);
  EXPECT_EQ((s2 * s2).as_rational(), BigRational(2));
  EXPECT_EQ((s2.reciprocal() * s2).as_rational(), BigRational(1));
  const auto q = (s2 + RealExpr(1)).reciprocal().as_quadratic();  // sqrt(2) - 1
  ASSERT_TRUE(q);
  EXPECT_EQ(q->a, -1);
  EXPECT_EQ(q->b, 1);
  EXPECT_EQ(q->c, 1);
  EXPECT_EQ(q->d, 2);
  EXPECT_EQ(RealExpr::sqrt(12).as_quadratic()->b, 2);  // 2*sqrt(3)
  EXPECT_EQ(RealExpr::sqrt(12).as_quadratic()->d, 3);
  EXPECT_EQ(RealExpr::sqrt(16).as_rational(), BigRational(4));
  const RealExpr diff = (RealExpr::sqrt(2) + RealExpr::sqrt(3)) * (RealExpr::sqrt(2) - RealExpr::sqrt(3));
  EXPECT_EQ(diff.as_rational(), BigRational(-1));
  const RealExpr pi = parse_real_expr("pi");
  EXPECT_EQ((pi * pi.reciprocal()).as_rational(), BigRational(1));
}

TEST(RealExprAlgebra, Rationality) {
  EXPECT_EQ(parse_real_expr("3/7").rationality(), Rationality::rational);
  EXPECT_EQ(parse_real_expr("1.5").rationality(), Rationality::rational);
  EXPECT_EQ(parse_real_expr("sqrt(2)").rationality(), Rationality::irrational);
  EXPECT_EQ(parse_real_expr("sqrt(2) + sqrt(3)").rationality(), Rationality::irrational);
  EXPECT_EQ(parse_real_expr("sqrt(8) - 2*sqrt(2)").rationality(), Rationality::rational);
  EXPECT_EQ(parse_real_expr("sqrt(2)*sqrt(3) - sqrt(6)").rationality(), Rationality::rational);
  EXPECT_EQ(parse_real_expr("e + 1/2").rationality(), Rationality::irrational);
  EXPECT_EQ(parse_real_expr("e + pi").rationality(), Rationality::unknown);
  EXPECT_EQ(parse_real_expr("1/(sqrt(2) + sqrt(3))").rationality(), Rationality::irrational);
  EXPECT_EQ(parse_real_expr("1/pi").rationality(), Rationality::irrational);
}

TEST(RealExprParse, Grammar) {
  EXPECT_EQ(parse_real_expr("rational:22/7").as_rational(), BigRational(22, 7));
  EXPECT_EQ(parse_real_expr("rational:-3").as_rational(), BigRational(-3));
  const auto q = parse_real_expr("quadratic:(1+1*sqrt(5))/2").as_quadratic();
  ASSERT_TRUE(q);
  EXPECT_EQ(*q, (beatty::Quadratic{1, 1, 2, 5}));
  EXPECT_EQ(parse_real_expr("const:phi"), RealExpr::golden_ratio());
  EXPECT_EQ(parse_real_expr("sqrt(2)"), RealExpr::sqrt(2));
  EXPECT_EQ(parse_real_expr("0.25").as_rational(), BigRational(1, 4));
  EXPECT_EQ(parse_real_expr("sqrt(1/2)"), RealExpr::sqrt(2) / RealExpr(2));
  EXPECT_EQ(parse_real_expr(" - 2 * (3 + 1) ").as_rational(), BigRational(-8));
}

TEST(RealExprParse, Errors) {
  EXPECT_THROW(parse_real_expr(""), beatty::ParseError);
  EXPECT_THROW(parse_real_expr("quadratic:(1+2*sqrt(4))/3"), beatty::ParseError);
  EXPECT_THROW(parse_real_expr("rational:1/0"), beatty::ParseError);
  EXPECT_THROW(parse_real_expr("const:tau"), beatty::ParseError);
  EXPECT_THROW(parse_real_expr("sqrt(pi)"), beatty::ParseError);
  EXPECT_THROW(parse_real_expr("2 +"), beatty::ParseError);
  EXPECT_THROW(parse_real_expr("foo:1"), beatty::ParseError);
  EXPECT_THROW(parse_real_expr("1/(2-2)"), beatty::ParseError);
}

TEST(RealExprParse, ToStringRoundTrips) {
  for (const char* text : {"sqrt(2)", "(3 - 5*sqrt(7))/4", "1/pi + sqrt(3)", "22/7", "2*e"}) {
    const RealExpr x = parse_real_expr(text);
    EXPECT_EQ(parse_real_expr(x.to_string()), x) << text << " -> " << x.to_string();
  }
}
