#include "beatty/singular_series.hpp"

#include "beatty/errors.hpp"
#include "beatty/numeric.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace beatty {

namespace {

constexpr std::uint64_t kMinCutoff = 7;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Distinct prime factors of n, by trial division with the table's primes.
std::vector<std::uint64_t> prime_divisors(std::uint64_t n, const PrimeTable& primes) {
  std::vector<std::uint64_t> out;
  for (std::uint32_t p : primes.primes()) {
    const std::uint64_t pp = p;
    if (pp * pp > n) break;
    if (n % pp == 0) {
      out.push_back(pp);
      while (n % pp == 0) n /= pp;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

SingularSeriesEvaluator::SingularSeriesEvaluator(std::uint64_t max_cutoff) : max_cutoff_(max_cutoff) {}

std::shared_ptr<const PrimeTable> SingularSeriesEvaluator::primes_upto(std::uint64_t limit) const {
  std::lock_guard lock(mutex_);
  if (!table_ || table_->limit() < limit) {
    const std::uint64_t grown = table_ ? std::max(limit, 2 * table_->limit()) : std::max<std::uint64_t>(limit, 1 << 16);
    table_ = std::make_shared<const PrimeTable>(sieve(grown, std::max(grown, max_cutoff_)));
  }
  return table_;
}

double SingularSeriesEvaluator::tail_bound(int k, std::uint64_t cutoff) {
  // For p > P >= 7, x = (p-1)^-k <= 1/2 and |log(1 +- x)| <= 2x, so the tail
  // is at most 2 sum_{m >= P} m^-k <= 2 (P^-k + P^(1-k)/(k-1)), and
  // P^-k <= P^(1-k)/(k-1) once P >= k-1. Hence the constant 4.
  const auto p = static_cast<double>(cutoff);
  return 4.0 * std::pow(p, 1.0 - k) / (k - 1);
}

std::uint64_t SingularSeriesEvaluator::required_cutoff(int k, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("singular_series: tol must be positive");
  // Spend half of log1p(tol) on the truncated tail.
  const double budget = 0.5 * std::log1p(tol);
  const double p = std::pow(4.0 / ((k - 1) * budget), 1.0 / (k - 1));
  const double needed = std::max({std::ceil(p), static_cast<double>(kMinCutoff), static_cast<double>(k - 1)});
  if (needed > 1e18) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(needed);
}

SingularSeriesValue SingularSeriesEvaluator::evaluate(std::uint64_t n, int k, double tol) const {
  const std::uint64_t cutoff = required_cutoff(k, tol);
  if (cutoff > max_cutoff_)
    throw ToleranceUnreachable("singular_series: tolerance " + std::to_string(tol) + " for k=" +
                               std::to_string(k) + " needs cutoff " + std::to_string(cutoff) +
                               " > " + std::to_string(max_cutoff_));
  return evaluate_at_cutoff(n, k, cutoff);
}

SingularSeriesValue SingularSeriesEvaluator::evaluate_at_cutoff(std::uint64_t n, int k,
                                                                std::uint64_t cutoff) const {
  if (n < 1) throw std::invalid_argument("singular_series: n must be positive");
  if (k < 2) throw std::invalid_argument("singular_series: k must be at least 2");
  cutoff = std::max({cutoff, kMinCutoff, static_cast<std::uint64_t>(k - 1)});
  if (cutoff > max_cutoff_)
    throw ToleranceUnreachable("singular_series: cutoff " + std::to_string(cutoff) +
                               " exceeds sieve capacity " + std::to_string(max_cutoff_));

  SingularSeriesValue out{n, k, 0.0, 0.0, cutoff};
  // The p = 2 factor is 1 + (-1)^k when 2 | n and 1 - (-1)^k otherwise: it
  // vanishes exactly when n and k have different parity, and is 2 otherwise.
  if ((n % 2) != static_cast<std::uint64_t>(k % 2)) return out;

  const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n))) + 1;
  const auto table = primes_upto(std::max(cutoff, root));
  const auto divisors = prime_divisors(n, *table);

  const double sign_div = (k % 2 == 0) ? 1.0 : -1.0;  // (-1)^k
  CompensatedSum<double> log_sum;
  double abs_terms = 0.0;
  auto add = [&](double t) {
    log_sum.add(t);
    abs_terms += std::abs(t);
  };
  add(std::log(2.0));
  for (std::uint64_t p : divisors) {
    if (p == 2) continue;
    add(std::log1p(sign_div / std::pow(static_cast<double>(p - 1), k - 1)));
  }
  std::size_t d = 0;
  for (std::uint32_t p32 : table->primes()) {
    const std::uint64_t p = p32;
    if (p > cutoff) break;
    if (p == 2) continue;
    while (d < divisors.size() && divisors[d] < p) ++d;
    if (d < divisors.size() && divisors[d] == p) continue;
    add(std::log1p(-sign_div / std::pow(static_cast<double>(p - 1), k)));
  }

  const double total = log_sum.value();
  out.value = std::exp(total);
  // Truncated tail plus a generous floating-point budget for the log sum.
  const double float_err = 4.0 * kEps * (abs_terms + std::abs(total));
  out.error_bound = out.value * std::expm1(tail_bound(k, cutoff) + float_err) + 4.0 * kEps * out.value;
  return out;
}

SingularSeriesValue singular_series(std::uint64_t n, int k, double tol) {
  static const SingularSeriesEvaluator evaluator;
  return evaluator.evaluate(n, k, tol);
}

double main_term(std::uint64_t n, const std::vector<RealExpr>& alphas,
                 const SingularSeriesEvaluator& evaluator) {
  const int k = static_cast<int>(alphas.size());
  if (k < 2) throw std::invalid_argument("main_term: need at least two alphas");
  double alpha_product = 1.0;
  for (const auto& a : alphas) {
    if (a.rationality() != Rationality::irrational) throw ValidationError("main_term: alpha must be irrational");
    const double v = a.approx();
    if (!(v > 1.0)) throw ValidationError("main_term: alpha must exceed 1");
    alpha_product *= v;
  }
  const auto s = evaluator.evaluate(n, k, 1.0 / static_cast<double>(n));
  if (s.value == 0.0) return 0.0;
  const double factorial = std::tgamma(static_cast<double>(k));
  return s.value * std::pow(static_cast<double>(n), k - 1) / (alpha_product * factorial);
}

double main_term(std::uint64_t n, const std::vector<RealExpr>& alphas) {
  static const SingularSeriesEvaluator evaluator;
  return main_term(n, alphas, evaluator);
}

}  // namespace beatty
