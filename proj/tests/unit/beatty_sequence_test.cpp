#include "beatty/beatty_sequence.hpp"

#include "beatty/errors.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

using beatty::BeattySequence;
using beatty::parse_real_expr;
using beatty::RealExpr;

namespace {

BeattySequence seq(const char* alpha, const char* beta = "0") {
  return BeattySequence(parse_real_expr(alpha), parse_real_expr(beta));
}

}  // namespace

TEST(BeattySequence, DerivedConstants) {
  const auto b = seq("sqrt(2)", "1/3");
  EXPECT_EQ((b.gamma() * b.alpha()).as_rational(), beatty::BigRational(1));
  EXPECT_NEAR(b.gamma_value(), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(b.delta_value(), (2.0 / 3.0) / std::sqrt(2.0), 1e-15);
  const auto pi = seq("pi", "1/2");
  EXPECT_EQ((pi.gamma() * pi.alpha()).as_rational(), beatty::BigRational(1));
}

TEST(BeattySequence, RejectsUnsupportedAlpha) {
  EXPECT_THROW(seq("1.5"), beatty::ValidationError);
  EXPECT_THROW(seq("rational:3/2"), beatty::ValidationError);
  EXPECT_THROW(seq("1/sqrt(2)"), beatty::ValidationError);  // below 1
  EXPECT_THROW(seq("e + pi"), beatty::ValidationError);     // undecidable
}

TEST(BeattySequence, FloorValues) {
  const auto s2 = seq("sqrt(2)");
  std::vector<std::int64_t> got;
  for (int m = 1; m <= 8; ++m) got.push_back(s2.member_via_floor(m));
  EXPECT_EQ(got, (std::vector<std::int64_t>{1, 2, 4, 5, 7, 8, 9, 11}));
  EXPECT_EQ(s2.member_via_floor(0), 0);
  EXPECT_EQ(s2.member_via_floor(-1), -2);

  const auto phi = seq("const:phi");
  got.clear();
  for (int m = 1; m <= 5; ++m) got.push_back(phi.member_via_floor(m));
  EXPECT_EQ(got, (std::vector<std::int64_t>{1, 3, 4, 6, 8}));
}

TEST(BeattySequence, ContainsExamples) {
  const auto s2 = seq("sqrt(2)");
  EXPECT_FALSE(s2.contains(3));
  EXPECT_TRUE(s2.contains(4));
  EXPECT_EQ(s2.enumerate(11), (std::vector<std::uint64_t>{1, 2, 4, 5, 7, 8, 9, 11}));
  EXPECT_TRUE(seq("sqrt(2)", "5").enumerate(2).empty() == false);
  EXPECT_TRUE(seq("sqrt(7)", "3").enumerate(2).empty());
}

TEST(BeattySequence, MembershipCriterionMatchesFloorEnumeration) {
  for (const auto& [a, b] : std::vector<std::pair<const char*, const char*>>{
           {"sqrt(2)", "0"}, {"sqrt(3)", "1/2"}, {"const:phi", "-2/3"}, {"pi", "0.3"},
           {"e", "-5"}, {"(7 + sqrt(5))/3", "sqrt(2)"}}) {
    const auto s = seq(a, b);
    const std::uint64_t limit = 100000;
    const auto members = s.enumerate(limit);
    const std::set<std::uint64_t> as_set(members.begin(), members.end());
    ASSERT_TRUE(std::is_sorted(members.begin(), members.end()));
    ASSERT_EQ(as_set.size(), members.size());
    for (std::uint64_t n = 1; n <= limit; ++n)
      ASSERT_EQ(s.contains(n), as_set.count(n) == 1) << a << " " << b << " n=" << n;
  }
}

TEST(BeattySequence, CountMatchesDensity) {
  for (const char* a : {"sqrt(2)", "sqrt(5)", "pi"}) {
    const auto s = seq(a, "1/7");
    for (std::uint64_t limit : {10ULL, 137ULL, 5000ULL, 99991ULL}) {
      const auto count = static_cast<double>(s.enumerate(limit).size());
      const double expected = std::floor(s.gamma_value() * limit + s.delta_value());
      EXPECT_LE(std::abs(count - expected), 1.0) << a << " " << limit;
    }
  }
}

TEST(BeattySequence, DensityAtOneMillion) {
  const auto s = seq("sqrt(3)");
  const double limit = 1e6;
  const double density = s.enumerate(1000000).size() / limit;
  EXPECT_NEAR(density, s.gamma_value(), 2.0 / limit);
}

TEST(BeattySequence, EscalationNeverFlipsDecisions) {
  const auto low = BeattySequence(parse_real_expr("sqrt(2)"), parse_real_expr("0"), {16, 4096});
  const auto high = BeattySequence(parse_real_expr("sqrt(2)"), parse_real_expr("0"), {512, 4096});
  for (std::uint64_t n = 1; n < 3000; ++n) EXPECT_EQ(low.contains(n), high.contains(n));
  // A large index forces escalation from 16 bits.
  const std::int64_t m = 123456789;
  EXPECT_EQ(low.member_via_floor(m), high.member_via_floor(m));
}

TEST(BeattySequence, PrecisionCapIsEnforced) {
  const auto tiny = BeattySequence(parse_real_expr("sqrt(2)"), parse_real_expr("0"), {8, 8});
  EXPECT_THROW(tiny.member_via_floor(1000000), beatty::PrecisionExhausted);
}

TEST(PrimeMask, SqrtTwoExample) {
  const auto primes = beatty::sieve(100);
  const auto mask = beatty::prime_mask(seq("sqrt(2)"), 24, primes);
  std::vector<std::uint64_t> marked;
  for (std::uint64_t n = 0; n <= 24; ++n)
    if (mask[n]) marked.push_back(n);
  EXPECT_EQ(marked, (std::vector<std::uint64_t>{2, 5, 7, 11, 19}));
}

TEST(PrimeMask, PointwiseDefinition) {
  const auto primes = beatty::sieve(20000);
  const auto s = seq("sqrt(5)", "2/3");
  const auto mask = beatty::prime_mask(s, 20000, primes);
  for (std::uint64_t n = 0; n <= 20000; ++n)
    ASSERT_EQ(mask[n], primes.is_prime(n) && s.contains(n)) << n;
  // gamma just below 1 captures almost every prime
  const auto dense = seq("1 + sqrt(2)/1000");
  const auto dmask = beatty::prime_mask(dense, 100, primes);
  int hits = 0;
  for (std::uint64_t n = 0; n <= 100; ++n) hits += dmask[n];
  EXPECT_EQ(hits, 25);
}
