#pragma once

// R(n) = sum over ordered prime k-tuples (p_1, ..., p_k) with p_i in B_i and
// p_1 + ... + p_k = n of (log p_1) ... (log p_k), or the plain number of such
// tuples in unweighted mode. Tuples are ordered: (5, 7) and (7, 5) both count.

#include "beatty/beatty_sequence.hpp"
#include "beatty/primes.hpp"
#include "beatty/smoothing.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <span>
#include <vector>

namespace beatty {

enum class Weighting { weighted, unweighted };

struct RepresentationTable {
  std::uint64_t x = 0;
  int k = 0;
  Weighting mode = Weighting::unweighted;
  // values[n] = R(n) for 0 <= n <= x; exact integers in unweighted mode.
  std::vector<double> values;
  // Absolute round-off bound for weighted values, k * x * eps * (largest
  // partial sum). Zero in unweighted mode.
  double roundoff_bound = 0.0;

  double operator[](std::uint64_t n) const { return values.at(n); }
};

// Fixed sequences B_1..B_k with everything needed for n <= limit: the prime
// table, each sequence's prime mask, and cached transforms.
class RepresentationProblem {
 public:
  RepresentationProblem(std::vector<BeattySequence> sequences, std::uint64_t limit);
  ~RepresentationProblem();

  int k() const noexcept { return static_cast<int>(sequences_.size()); }
  std::uint64_t limit() const noexcept { return limit_; }
  const std::vector<BeattySequence>& sequences() const noexcept { return sequences_; }
  const PrimeTable& primes() const noexcept { return primes_; }
  // Primes of B_i up to limit, ascending.
  std::span<const std::uint32_t> beatty_primes(int i) const { return lists_.at(i); }
  bool is_beatty_prime(int i, std::uint64_t n) const { return n <= limit_ && masks_.at(i)[n]; }

  // Nested iteration over the Beatty-prime lists; n in [2k, limit].
  std::uint64_t count_exact_unweighted(std::uint64_t n) const;
  double count_exact(std::uint64_t n, Weighting mode) const;
  std::vector<double> count_exact_many(const std::vector<std::uint64_t>& ns, Weighting mode,
                                       unsigned threads = 1) const;

  // All n <= limit by k-1 convolutions, exact (NTT) in unweighted mode and
  // FFT in weighted mode. order permutes which sequence enters the chain
  // when; empty means 0..k-1.
  RepresentationTable count_all_upto(Weighting mode, std::span<const int> order = {}) const;

  // R+ or R- of n: every prime p_i weighted by log(p_i) * g_i(gamma_i p_i + delta_i).
  // Throws InvalidWidth if delta is inadmissible for some gamma_i.
  double smoothed_count(std::uint64_t n, double delta, Side side) const;

  // Even n in [4, limit] with no representation, each re-verified by the
  // nested count. Requires k = 2.
  std::vector<std::uint64_t> exceptional_scan() const;

 private:
  struct SmoothedWeights;
  const SmoothedWeights& smoothed_weights(double delta, Side side) const;

  std::vector<BeattySequence> sequences_;
  std::uint64_t limit_;
  PrimeTable primes_;
  std::vector<std::vector<bool>> masks_;
  std::vector<std::vector<std::uint32_t>> lists_;
  std::vector<double> log_weights_;

  mutable std::mutex mutex_;
  mutable std::map<std::pair<double, int>, std::shared_ptr<const SmoothedWeights>> smoothed_;
};

double count_exact(std::uint64_t n, const std::vector<BeattySequence>& sequences, Weighting mode);
RepresentationTable count_all_upto(std::uint64_t x, const std::vector<BeattySequence>& sequences,
                                   Weighting mode);
double smoothed_count(std::uint64_t n, const std::vector<BeattySequence>& sequences, double delta, Side side);
std::vector<std::uint64_t> exceptional_scan(std::uint64_t x, const BeattySequence& b1, const BeattySequence& b2);

// Columns n, R, main_term, ratio for n in [first, x] stepping by stride.
// ratio is empty where the main term vanishes.
void write_table_csv(std::ostream& out, const RepresentationTable& table, const std::vector<RealExpr>& alphas,
                     std::uint64_t first = 2, std::uint64_t stride = 1);

}  // namespace beatty
