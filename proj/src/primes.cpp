#include "beatty/primes.hpp"

#include "beatty/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace beatty {

namespace {
constexpr std::uint64_t kSegment = 1 << 18;
}

PrimeTable sieve(std::uint64_t limit, std::uint64_t max_limit) {
  if (limit < 2) throw std::invalid_argument("sieve: limit must be at least 2");
  if (limit > max_limit || limit > 0xFFFFFFFFULL)
    throw LimitTooLarge("sieve: limit " + std::to_string(limit) + " exceeds bound " +
                        std::to_string(std::min<std::uint64_t>(max_limit, 0xFFFFFFFFULL)));

  PrimeTable t;
  t.limit_ = limit;
  t.bits_.assign(limit + 1, false);

  // Base primes up to sqrt(limit) by a plain sieve.
  const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(limit))) + 1;
  std::vector<char> small(root + 1, 1);
  small[0] = 0;
  if (root >= 1) small[1] = 0;
  std::vector<std::uint64_t> base;
  for (std::uint64_t i = 2; i <= root; ++i) {
    if (!small[i]) continue;
    base.push_back(i);
    for (std::uint64_t j = i * i; j <= root; j += i) small[j] = 0;
  }

  std::vector<char> seg(kSegment);
  for (std::uint64_t low = 0; low <= limit; low += kSegment) {
    const std::uint64_t high = std::min(limit, low + kSegment - 1);
    std::fill(seg.begin(), seg.begin() + static_cast<std::ptrdiff_t>(high - low + 1), 1);
    for (std::uint64_t p : base) {
      if (p * p > high) break;
      std::uint64_t start = std::max(p * p, (low + p - 1) / p * p);
      for (std::uint64_t j = start; j <= high; j += p) seg[j - low] = 0;
    }
    for (std::uint64_t n = std::max<std::uint64_t>(low, 2); n <= high; ++n) {
      if (seg[n - low]) {
        t.bits_[n] = true;
        t.primes_.push_back(static_cast<std::uint32_t>(n));
      }
    }
  }
  return t;
}

std::size_t PrimeTable::count_upto(std::uint64_t n) const {
  if (n > limit_) throw std::out_of_range("count_upto beyond sieve limit");
  return static_cast<std::size_t>(
      std::upper_bound(primes_.begin(), primes_.end(), n) - primes_.begin());
}

std::vector<double> log_weight_array(const PrimeTable& table, std::uint64_t limit) {
  if (limit > table.limit()) throw std::invalid_argument("log_weight_array: table too small");
  std::vector<double> w(limit + 1, 0.0);
  for (std::uint32_t p : table.primes()) {
    if (p > limit) break;
    w[p] = std::log(static_cast<double>(p));
  }
  return w;
}

}  // namespace beatty
