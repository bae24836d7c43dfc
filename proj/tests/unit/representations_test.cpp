#include "beatty/representations.hpp"

#include "beatty/convolution.hpp"
#include "beatty/errors.hpp"

#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

using beatty::BeattySequence;
using beatty::parse_real_expr;
using beatty::RepresentationProblem;
using beatty::Side;
using beatty::Weighting;

namespace {

BeattySequence seq(const char* alpha, const char* beta = "0") {
  return BeattySequence(parse_real_expr(alpha), parse_real_expr(beta));
}

bool slow_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Membership straight from the definition floor(alpha*m + beta), in long
// double; fine for the small ranges used here.
std::vector<bool> beatty_prime_oracle(long double alpha, long double beta, std::uint64_t limit) {
  std::vector<bool> in(limit + 1, false);
  for (std::int64_t m = -2;; ++m) {
    const auto v = static_cast<std::int64_t>(std::floor(alpha * m + beta));
    if (v > static_cast<std::int64_t>(limit)) break;
    if (v >= 0 && slow_prime(static_cast<std::uint64_t>(v))) in[v] = true;
  }
  return in;
}

}  // namespace

TEST(Representations, SmallExamples) {
  const std::vector<BeattySequence> s = {seq("sqrt(2)"), seq("sqrt(2)")};
  EXPECT_EQ(beatty::count_exact(12, s, Weighting::unweighted), 2.0);
  EXPECT_EQ(beatty::count_exact(4, s, Weighting::unweighted), 1.0);
  EXPECT_EQ(beatty::count_exact(6, s, Weighting::unweighted), 0.0);
  EXPECT_NEAR(beatty::count_exact(12, s, Weighting::weighted), 2 * std::log(5.0) * std::log(7.0), 1e-12);
}

TEST(Representations, NestedCountMatchesDoubleLoop) {
  const long double r2 = std::sqrt(2.0L), r3 = std::sqrt(3.0L);
  const auto a = beatty_prime_oracle(r2, 0, 2000);
  const auto b = beatty_prime_oracle(r3, 0.5L, 2000);
  const RepresentationProblem prob({seq("sqrt(2)"), seq("sqrt(3)", "1/2")}, 2000);
  for (std::uint64_t n = 4; n <= 2000; ++n) {
    std::uint64_t expect = 0;
    for (std::uint64_t p = 2; p + 2 <= n; ++p)
      if (a[p] && b[n - p]) ++expect;
    ASSERT_EQ(prob.count_exact_unweighted(n), expect) << n;
  }
}

TEST(Representations, ExactConvolverAgainstSchoolbook) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::uint64_t> d(0, 1'000'000);
  std::vector<std::uint64_t> a(300), b(300);
  for (auto& v : a) v = d(rng);
  for (auto& v : b) v = d(rng);
  const beatty::ExactConvolver conv(400);
  const auto c = conv.convolve(a, b);
  for (std::size_t n = 0; n < 400; ++n) {
    std::uint64_t expect = 0;
    for (std::size_t i = 0; i <= n && i < a.size(); ++i)
      if (n - i < b.size()) expect += a[i] * b[n - i];
    ASSERT_EQ(c[n], expect) << n;
  }
  EXPECT_THROW(beatty::ExactConvolver(beatty::kMaxNttSize), beatty::LimitTooLarge);
  std::vector<std::uint64_t> huge(10, std::uint64_t{1} << 40);
  EXPECT_THROW(conv.convolve(huge, huge), beatty::LimitTooLarge);
}

TEST(Representations, ConvolutionMatchesNestedCount) {
  for (int k : {2, 3}) {
    std::vector<BeattySequence> s = {seq("sqrt(2)"), seq("sqrt(3)"), seq("sqrt(5)")};
    s.resize(k, seq("sqrt(2)"));
    const RepresentationProblem prob(s, 3000);
    const auto fast = prob.count_all_upto(Weighting::unweighted);
    const auto weighted = prob.count_all_upto(Weighting::weighted);
    for (std::uint64_t n = 0; n <= 3000; ++n) {
      ASSERT_EQ(fast.values[n], static_cast<double>(prob.count_exact_unweighted(n))) << n;
      const double exact_w = prob.count_exact(n, Weighting::weighted);
      ASSERT_LE(std::abs(weighted.values[n] - exact_w), weighted.roundoff_bound) << n;
      if (exact_w == 0.0)
        ASSERT_EQ(weighted.values[n], 0.0);
      else
        ASSERT_LE(std::abs(weighted.values[n] - exact_w) / exact_w, 1e-6) << n;
    }
  }
}

TEST(Representations, ConvolutionOrderDoesNotMatter) {
  const auto b = seq("sqrt(7)", "1/3");
  const RepresentationProblem prob({b, b, b}, 2000);
  const int first[] = {0, 1, 2};
  const int second[] = {2, 0, 1};
  EXPECT_EQ(prob.count_all_upto(Weighting::unweighted, first).values,
            prob.count_all_upto(Weighting::unweighted, second).values);
  const RepresentationProblem mixed({seq("sqrt(2)"), seq("sqrt(3)"), seq("sqrt(5)")}, 2000);
  EXPECT_EQ(mixed.count_all_upto(Weighting::unweighted, first).values,
            mixed.count_all_upto(Weighting::unweighted, second).values);
  const int bad[] = {0, 0, 1};
  EXPECT_THROW(mixed.count_all_upto(Weighting::unweighted, bad), std::invalid_argument);
}

TEST(Representations, OddTargetsNeedThePrimeTwo) {
  const RepresentationProblem prob({seq("sqrt(2)"), seq("sqrt(2)")}, 3000);
  ASSERT_TRUE(prob.is_beatty_prime(0, 2));
  const auto t = prob.count_all_upto(Weighting::unweighted);
  for (std::uint64_t n = 5; n <= 3000; n += 2) {
    const double via_two = 2.0 * (prob.is_beatty_prime(1, n - 2) ? 1.0 : 0.0);
    ASSERT_EQ(t.values[n], via_two) << n;
  }
}

TEST(Representations, SmoothedSandwich) {
  const RepresentationProblem prob({seq("sqrt(2)"), seq("sqrt(3)")}, 20000);
  for (std::uint64_t n : {100ull, 1000ull, 5000ull, 10002ull, 19998ull}) {
    const double r = prob.count_exact(n, Weighting::weighted);
    const double lo = prob.smoothed_count(n, 0.01, Side::minus);
    const double hi = prob.smoothed_count(n, 0.01, Side::plus);
    EXPECT_LE(lo, r) << n;
    EXPECT_LE(r, hi) << n;
    EXPECT_LE(prob.smoothed_count(n, 0.005, Side::plus), prob.smoothed_count(n, 0.02, Side::plus)) << n;
  }
  EXPECT_THROW(prob.smoothed_count(100, 0.2, Side::plus), beatty::InvalidWidth);
}

TEST(Representations, SmoothedEqualsExactAwayFromEdges) {
  // Pick n whose representations all use primes well inside (0, gamma).
  const RepresentationProblem prob({seq("sqrt(2)"), seq("sqrt(3)")}, 3000);
  const double w = 0.01;
  auto interior = [&](int i, std::uint64_t p) {
    const double x = prob.sequences()[i].position(p);
    const double g = prob.sequences()[i].gamma_value();
    return (x > w && x < g - w) || (x > g + w && x < 1 - w);
  };
  int checked = 0;
  for (std::uint64_t n = 6; n <= 3000 && checked < 20; n += 2) {
    bool clean = true;
    for (std::uint32_t p : prob.primes().primes()) {
      if (p + 2 > n) break;
      if (!prob.primes().is_prime(n - p)) continue;
      if (!interior(0, p) || !interior(1, n - p)) clean = false;
    }
    if (!clean) continue;
    ++checked;
    const double r = prob.count_exact(n, Weighting::weighted);
    EXPECT_NEAR(prob.smoothed_count(n, w, Side::plus), r, 1e-9 * (1 + r)) << n;
    EXPECT_NEAR(prob.smoothed_count(n, w, Side::minus), r, 1e-9 * (1 + r)) << n;
  }
  EXPECT_GT(checked, 0);
}

TEST(Representations, ExceptionalScan) {
  const auto ex = beatty::exceptional_scan(5000, seq("sqrt(2)"), seq("sqrt(3)"));
  const RepresentationProblem prob({seq("sqrt(2)"), seq("sqrt(3)")}, 5000);
  for (auto n : ex) {
    EXPECT_EQ(n % 2, 0u);
    EXPECT_LE(n, 5000u);
    EXPECT_EQ(prob.count_exact_unweighted(n), 0u);
  }
  EXPECT_FALSE(ex.empty());
}

TEST(Representations, DenseSequenceExceptions) {
  // alpha barely above 1: almost every integer is in B.
  const auto b = seq("1 + sqrt(2)/1000");
  const std::uint64_t x = 10000;
  const long double alpha = 1.0L + std::sqrt(2.0L) / 1000;
  const auto in = beatty_prime_oracle(alpha, 0, x);
  std::vector<std::uint64_t> expect;
  for (std::uint64_t n = 4; n <= x; n += 2) {
    bool found = false;
    for (std::uint64_t p = 2; p + 2 <= n && !found; ++p) found = in[p] && in[n - p];
    if (!found) expect.push_back(n);
  }
  EXPECT_EQ(beatty::exceptional_scan(x, b, b), expect);
}

TEST(Representations, CsvExport) {
  const RepresentationProblem prob({seq("sqrt(2)"), seq("sqrt(3)")}, 100);
  const auto t = prob.count_all_upto(Weighting::unweighted);
  std::ostringstream os;
  beatty::write_table_csv(os, t, {parse_real_expr("sqrt(2)"), parse_real_expr("sqrt(3)")}, 10, 45);
  const std::string s = os.str();
  EXPECT_EQ(s.substr(0, s.find('\n') + 1), "n,R,main_term,ratio\r\n");
  // n = 55 is odd: main term vanishes, ratio left empty.
  EXPECT_NE(s.find("\r\n55,"), std::string::npos);
  EXPECT_NE(s.find(",0,\r\n"), std::string::npos);
}
