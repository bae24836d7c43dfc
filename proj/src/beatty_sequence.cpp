#include "beatty/beatty_sequence.hpp"

#include "beatty/errors.hpp"

#include <cmath>
#include <string>

namespace beatty {

BeattySequence::BeattySequence(RealExpr alpha, RealExpr beta, PrecisionPolicy policy)
    : alpha_(std::move(alpha)), beta_(std::move(beta)), policy_(policy) {
  if (policy_.initial_bits < 8 || policy_.max_bits < policy_.initial_bits)
    throw ValidationError("BeattySequence: invalid precision policy");
  switch (alpha_.rationality()) {
    case Rationality::rational:
      throw ValidationError("alpha = " + alpha_.to_string() +
                            " is rational; Beatty sequences with rational alpha are not supported");
    case Rationality::unknown:
      throw ValidationError("irrationality of alpha = " + alpha_.to_string() +
                            " cannot be decided");
    case Rationality::irrational:
      break;
  }
  if (alpha_.eval(64).lo() <= Dyadic(1))
    throw ValidationError("alpha = " + alpha_.to_string() + " must exceed 1");
  gamma_ = alpha_.reciprocal();
  delta_ = (RealExpr(1) - beta_) * gamma_;
  base_ = std::make_shared<const Enclosures>(enclosures_at(policy_.initial_bits));
  alpha_d_ = base_->alpha.midpoint().to_double();
  gamma_d_ = base_->gamma.midpoint().to_double();
  delta_d_ = base_->delta.midpoint().to_double();
}

BeattySequence::Enclosures BeattySequence::enclosures_at(int bits) const {
  return Enclosures{bits, alpha_.eval(bits), beta_.eval(bits), gamma_.eval(bits),
                    delta_.eval(bits)};
}

bool BeattySequence::contains(std::uint64_t n) const {
  if (n == 0) return false;
  const BigInt nn(n);
  for (int bits = policy_.initial_bits; bits <= policy_.max_bits; bits *= 2) {
    const Enclosures local = bits == base_->bits ? *base_ : enclosures_at(bits);
    const IntervalReal x = local.gamma * nn + local.delta;
    const auto frac = frac_interval(x);
    if (!frac) continue;
    // Strict inequalities; an endpoint touching 0 or gamma stays undecided.
    if (frac->lo().sign() <= 0) {
      if (frac->hi().sign() <= 0) return false;
      continue;
    }
    if (frac->hi() < local.gamma.lo()) return true;
    if (frac->lo() >= local.gamma.hi()) return false;
  }
  throw PrecisionExhausted("contains(" + std::to_string(n) + "): undecided at " +
                           std::to_string(policy_.max_bits) + " bits");
}

std::int64_t BeattySequence::member_via_floor(std::int64_t m) const {
  const BigInt mm(m);
  for (int bits = policy_.initial_bits; bits <= policy_.max_bits; bits *= 2) {
    const Enclosures local = bits == base_->bits ? *base_ : enclosures_at(bits);
    if (auto f = floor_interval(local.alpha * mm + local.beta)) return f->convert_to<std::int64_t>();
  }
  throw PrecisionExhausted("member_via_floor(" + std::to_string(m) + "): undecided at " +
                           std::to_string(policy_.max_bits) + " bits");
}

std::vector<std::uint64_t> BeattySequence::enumerate(std::uint64_t limit) const {
  std::vector<std::uint64_t> out;
  if (limit == 0) return out;
  out.reserve(static_cast<std::size_t>(static_cast<double>(limit) * gamma_d_) + 2);
  // alpha*m + beta >= 1 first happens near m = delta; start a little below.
  auto m = static_cast<std::int64_t>(std::floor(delta_d_)) - 2;
  while (member_via_floor(m) >= 1) --m;
  for (;; ++m) {
    const std::int64_t v = member_via_floor(m);
    if (v < 1) continue;
    if (static_cast<std::uint64_t>(v) > limit) break;
    out.push_back(static_cast<std::uint64_t>(v));
  }
  return out;
}

double BeattySequence::position(std::uint64_t n) const {
  const IntervalReal x = base_->gamma * BigInt(n) + base_->delta;
  const Dyadic mid = x.midpoint();
  return (mid - Dyadic(mid.floor(), 0)).to_double();
}

std::vector<bool> prime_mask(const BeattySequence& b, std::uint64_t limit, const PrimeTable& primes) {
  if (primes.limit() < limit) throw std::invalid_argument("prime_mask: prime table too small");
  std::vector<bool> mask(limit + 1, false);
  for (std::uint64_t n : b.enumerate(limit))
    if (primes.is_prime(n)) mask[n] = true;
  return mask;
}

}  // namespace beatty
