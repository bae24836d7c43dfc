#pragma once

#include "beatty/primes.hpp"
#include "beatty/real_expr.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace beatty {

// Interval evaluation starts at initial_bits and doubles on an undecided
// floor up to max_bits, after which PrecisionExhausted is raised.
struct PrecisionPolicy {
  int initial_bits = 128;
  int max_bits = 4096;
};

// B = { floor(alpha*m + beta) : m in Z } intersected with the positive
// integers, for irrational alpha > 1. gamma = 1/alpha and
// delta = (1 - beta)/alpha give the membership test
//   n in B  <=>  0 < {gamma*n + delta} < gamma.
class BeattySequence {
 public:
  BeattySequence(RealExpr alpha, RealExpr beta, PrecisionPolicy policy = {});

  const RealExpr& alpha() const noexcept { return alpha_; }
  const RealExpr& beta() const noexcept { return beta_; }
  const RealExpr& gamma() const noexcept { return gamma_; }
  const RealExpr& delta() const noexcept { return delta_; }
  const PrecisionPolicy& policy() const noexcept { return policy_; }

  double alpha_value() const noexcept { return alpha_d_; }
  double gamma_value() const noexcept { return gamma_d_; }
  double delta_value() const noexcept { return delta_d_; }

  // Fractional-part criterion, decided exactly.
  bool contains(std::uint64_t n) const;
  // floor(alpha*m + beta), decided exactly.
  std::int64_t member_via_floor(std::int64_t m) const;
  // Members in [1, limit], ascending, by iterating m.
  std::vector<std::uint64_t> enumerate(std::uint64_t limit) const;
  // {gamma*n + delta} to double accuracy.
  double position(std::uint64_t n) const;

 private:
  struct Enclosures {
    int bits;
    IntervalReal alpha, beta, gamma, delta;
  };
  Enclosures enclosures_at(int bits) const;

  RealExpr alpha_, beta_, gamma_, delta_;
  PrecisionPolicy policy_;
  std::shared_ptr<const Enclosures> base_;
  double alpha_d_ = 0, gamma_d_ = 0, delta_d_ = 0;
};

// mask[n] is true iff n is prime and n is in b, for n in [0, limit].
std::vector<bool> prime_mask(const BeattySequence& b, std::uint64_t limit, const PrimeTable& primes);

}  // namespace beatty
