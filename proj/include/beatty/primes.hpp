#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace beatty {

// Upper bound accepted by sieve() unless a smaller one is configured.
inline constexpr std::uint64_t kDefaultSieveBound = 4'000'000'000ULL;

// Primality over [0, limit] plus the ascending list of primes.
class PrimeTable {
 public:
  PrimeTable() = default;

  std::uint64_t limit() const noexcept { return limit_; }
  bool is_prime(std::uint64_t n) const { return n <= limit_ && bits_[n]; }
  std::span<const std::uint32_t> primes() const noexcept { return primes_; }
  // Number of primes <= n, for n <= limit.
  std::size_t count_upto(std::uint64_t n) const;

 private:
  friend PrimeTable sieve(std::uint64_t limit, std::uint64_t max_limit);

  std::uint64_t limit_ = 0;
  std::vector<bool> bits_;
  std::vector<std::uint32_t> primes_;
};

// Segmented sieve of Eratosthenes. Throws LimitTooLarge above max_limit.
PrimeTable sieve(std::uint64_t limit, std::uint64_t max_limit = kDefaultSieveBound);

// w[n] = log n for prime n, 0 otherwise, n in [0, limit]. Prime powers get 0.
std::vector<double> log_weight_array(const PrimeTable& table, std::uint64_t limit);

}  // namespace beatty
