#pragma once

#include "beatty/primes.hpp"
#include "beatty/real_expr.hpp"

#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

namespace beatty {

// S_k(n) = prod_{p | n} (1 + (-1)^k / (p-1)^(k-1)) * prod_{p !| n} (1 + (-1)^(k+1) / (p-1)^k)
// with the second product truncated at cutoff_prime and the omitted tail
// covered by error_bound.
struct SingularSeriesValue {
  std::uint64_t n = 0;
  int k = 0;
  double value = 0.0;
  double error_bound = 0.0;
  std::uint64_t cutoff_prime = 0;
};

// Holds a sieve that grows on demand, so repeated evaluations share it.
// Safe to use from several threads.
class SingularSeriesEvaluator {
 public:
  explicit SingularSeriesEvaluator(std::uint64_t max_cutoff = 200'000'000);

  // Smallest admissible cutoff whose certified error is <= tol*|value| + tol.
  // Throws ToleranceUnreachable if that cutoff exceeds max_cutoff.
  SingularSeriesValue evaluate(std::uint64_t n, int k, double tol) const;
  SingularSeriesValue evaluate_at_cutoff(std::uint64_t n, int k, std::uint64_t cutoff) const;

  // Bound on sum_{p > cutoff} |log(1 + (-1)^(k+1) (p-1)^-k)|.
  static double tail_bound(int k, std::uint64_t cutoff);
  static std::uint64_t required_cutoff(int k, double tol);

 private:
  std::shared_ptr<const PrimeTable> primes_upto(std::uint64_t limit) const;

  std::uint64_t max_cutoff_;
  mutable std::mutex mutex_;
  mutable std::shared_ptr<const PrimeTable> table_;
};

SingularSeriesValue singular_series(std::uint64_t n, int k, double tol);

// S_k(n) n^(k-1) / (alpha_1 ... alpha_k (k-1)!) with S_k evaluated at
// tolerance 1/n; k is the number of alphas.
double main_term(std::uint64_t n, const std::vector<RealExpr>& alphas,
                 const SingularSeriesEvaluator& evaluator);
double main_term(std::uint64_t n, const std::vector<RealExpr>& alphas);

}  // namespace beatty
