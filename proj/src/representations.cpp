#include "beatty/representations.hpp"

#include "beatty/convolution.hpp"
#include "beatty/csv.hpp"
#include "beatty/errors.hpp"
#include "beatty/numeric.hpp"
#include "beatty/singular_series.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace beatty {

namespace {

// One summation slot: ascending primes with their weights (all 1 when
// weights is empty).
template <class T>
struct SlotView {
  std::span<const std::uint32_t> primes;
  std::span<const T> weights;
};

// Sum over p_0 + ... + p_{k-2} + q = remaining of prod w(p_j) * last(q),
// where every later slot reserves at least 2 (the smallest prime).
template <class T, class Last>
T nested_sum(std::uint64_t remaining, std::size_t slot, const std::vector<SlotView<T>>& slots, const Last& last) {
  if (slot == slots.size()) return last(remaining);
  const auto& s = slots[slot];
  const std::uint64_t reserve = 2 * (slots.size() - slot);
  T total{};
  for (std::size_t j = 0; j < s.primes.size(); ++j) {
    const std::uint64_t p = s.primes[j];
    if (p + reserve > remaining) break;
    if (s.weights.empty()) {
      total += nested_sum(remaining - p, slot + 1, slots, last);
    } else if (s.weights[j] != T{}) {
      total += s.weights[j] * nested_sum(remaining - p, slot + 1, slots, last);
    }
  }
  return total;
}

void check_sequences(const std::vector<BeattySequence>& sequences) {
  if (sequences.size() < 2) throw std::invalid_argument("representations: need at least two sequences");
}

}  // namespace

struct RepresentationProblem::SmoothedWeights {
  std::vector<std::vector<std::uint32_t>> primes;  // per sequence, nonzero weight only
  std::vector<std::vector<double>> weights;
  std::vector<double> last;  // dense weights of the final sequence
};

RepresentationProblem::RepresentationProblem(std::vector<BeattySequence> sequences, std::uint64_t limit)
    : sequences_(std::move(sequences)), limit_(limit) {
  check_sequences(sequences_);
  if (limit_ < 2 * sequences_.size())
    throw std::invalid_argument("representations: limit must be at least 2k");
  primes_ = sieve(limit_);
  log_weights_ = log_weight_array(primes_, limit_);
  for (const auto& b : sequences_) {
    masks_.push_back(prime_mask(b, limit_, primes_));
    auto& list = lists_.emplace_back();
    for (std::uint32_t p : primes_.primes())
      if (masks_.back()[p]) list.push_back(p);
  }
}

RepresentationProblem::~RepresentationProblem() = default;

std::uint64_t RepresentationProblem::count_exact_unweighted(std::uint64_t n) const {
  if (n > limit_) throw std::out_of_range("count_exact: n above problem limit");
  if (n < 2 * sequences_.size()) return 0;
  std::vector<SlotView<std::uint64_t>> slots;
  for (int i = 0; i + 1 < k(); ++i) slots.push_back({lists_[i], {}});
  const auto& mask = masks_.back();
  return nested_sum(n, 0, slots, [&mask](std::uint64_t q) -> std::uint64_t { return mask[q] ? 1 : 0; });
}

double RepresentationProblem::count_exact(std::uint64_t n, Weighting mode) const {
  if (mode == Weighting::unweighted) return static_cast<double>(count_exact_unweighted(n));
  if (n > limit_) throw std::out_of_range("count_exact: n above problem limit");
  if (n < 2 * sequences_.size()) return 0.0;
  // Weights restricted to each list, in list order.
  thread_local std::vector<std::vector<double>> w;
  w.assign(k() - 1, {});
  std::vector<SlotView<double>> slots;
  for (int i = 0; i + 1 < k(); ++i) {
    w[i].reserve(lists_[i].size());
    for (std::uint32_t p : lists_[i]) {
      if (p > n) break;
      w[i].push_back(log_weights_[p]);
    }
    slots.push_back({std::span(lists_[i]).first(w[i].size()), w[i]});
  }
  const auto& mask = masks_.back();
  const auto& logs = log_weights_;
  return nested_sum(n, 0, slots, [&](std::uint64_t q) { return mask[q] ? logs[q] : 0.0; });
}

std::vector<double> RepresentationProblem::count_exact_many(const std::vector<std::uint64_t>& ns, Weighting mode,
                                                            unsigned threads) const {
  std::vector<double> out(ns.size());
  parallel_chunks(ns.size(), threads, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) out[i] = count_exact(ns[i], mode);
  });
  return out;
}

RepresentationTable RepresentationProblem::count_all_upto(Weighting mode, std::span<const int> order) const {
  std::vector<int> seq_order(order.begin(), order.end());
  if (seq_order.empty()) {
    seq_order.resize(k());
    std::iota(seq_order.begin(), seq_order.end(), 0);
  }
  {
    auto sorted = seq_order;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < k(); ++i)
      if (static_cast<int>(sorted.size()) != k() || sorted[i] != i)
        throw std::invalid_argument("count_all_upto: order must be a permutation of 0..k-1");
  }

  const std::size_t len = limit_ + 1;
  RepresentationTable table;
  table.x = limit_;
  table.k = k();
  table.mode = mode;

  // Exact counts; in weighted mode they give the support of R.
  std::vector<std::uint64_t> exact;
  const bool exact_possible = std::bit_ceil(std::max<std::size_t>(2 * len, 2)) <= kMaxNttSize;
  if (mode == Weighting::unweighted || exact_possible) {
    const ExactConvolver conv(len);
    // Spectra of identical masks are shared.
    std::map<int, ExactConvolver::Spectrum> spectra;
    auto spectrum = [&](int i) -> const ExactConvolver::Spectrum& {
      for (auto& [j, s] : spectra)
        if (masks_[j] == masks_[i]) return s;
      std::vector<std::uint64_t> a(len);
      for (std::size_t n = 0; n < len; ++n) a[n] = masks_[i][n];
      return spectra.emplace(i, conv.forward(a)).first->second;
    };
    exact.resize(len);
    for (std::size_t n = 0; n < len; ++n) exact[n] = masks_[seq_order[0]][n];
    for (int j = 1; j < k(); ++j) exact = conv.multiply(conv.forward(exact), spectrum(seq_order[j]));
  }

  if (mode == Weighting::unweighted) {
    table.values.assign(exact.begin(), exact.end());
    return table;
  }

  const FloatConvolver conv(len);
  auto weights = [&](int i) {
    std::vector<double> a(len, 0.0);
    for (std::size_t n = 0; n < len; ++n)
      if (masks_[i][n]) a[n] = log_weights_[n];
    return a;
  };
  std::vector<double> acc = weights(seq_order[0]);
  double max_partial = 0.0;
  for (int j = 1; j < k(); ++j) {
    acc = conv.multiply(conv.forward(acc), conv.forward(weights(seq_order[j])));
    for (double v : acc) max_partial = std::max(max_partial, std::abs(v));
  }
  table.roundoff_bound = static_cast<double>(k()) * static_cast<double>(limit_) *
                         std::numeric_limits<double>::epsilon() * max_partial;
  for (std::size_t n = 0; n < len; ++n) {
    const bool zero = exact_possible ? exact[n] == 0 : std::abs(acc[n]) <= table.roundoff_bound;
    if (zero) acc[n] = 0.0;
  }
  table.values = std::move(acc);
  return table;
}

const RepresentationProblem::SmoothedWeights& RepresentationProblem::smoothed_weights(double delta,
                                                                                      Side side) const {
  const auto key = std::make_pair(delta, static_cast<int>(side));
  std::lock_guard lock(mutex_);
  if (auto it = smoothed_.find(key); it != smoothed_.end()) return *it->second;
  auto sw = std::make_shared<SmoothedWeights>();
  const auto primes = primes_.primes();
  for (int i = 0; i < k(); ++i) {
    const SmoothedIndicator g(sequences_[i].gamma_value(), delta, side);
    auto& ps = sw->primes.emplace_back();
    auto& ws = sw->weights.emplace_back();
    const bool last = i + 1 == k();
    if (last) sw->last.assign(limit_ + 1, 0.0);
    for (std::uint32_t p : primes) {
      const double w = log_weights_[p] * g(sequences_[i].position(p));
      if (w == 0.0) continue;
      if (last) {
        sw->last[p] = w;
      } else {
        ps.push_back(p);
        ws.push_back(w);
      }
    }
  }
  return *smoothed_.emplace(key, std::move(sw)).first->second;
}

double RepresentationProblem::smoothed_count(std::uint64_t n, double delta, Side side) const {
  if (n > limit_) throw std::out_of_range("smoothed_count: n above problem limit");
  const auto& sw = smoothed_weights(delta, side);
  if (n < 2 * sequences_.size()) return 0.0;
  std::vector<SlotView<double>> slots;
  for (int i = 0; i + 1 < k(); ++i) slots.push_back({sw.primes[i], sw.weights[i]});
  return nested_sum(n, 0, slots, [&sw](std::uint64_t q) { return sw.last[q]; });
}

std::vector<std::uint64_t> RepresentationProblem::exceptional_scan() const {
  if (k() != 2) throw std::invalid_argument("exceptional_scan: requires exactly two sequences");
  const auto table = count_all_upto(Weighting::unweighted);
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 4; n <= limit_; n += 2) {
    if (table.values[n] != 0.0) continue;
    if (count_exact_unweighted(n) != 0)
      throw std::logic_error("exceptional_scan: convolution and direct count disagree at n = " + std::to_string(n));
    out.push_back(n);
  }
  return out;
}

double count_exact(std::uint64_t n, const std::vector<BeattySequence>& sequences, Weighting mode) {
  check_sequences(sequences);
  if (n < 2 * sequences.size()) return 0.0;
  return RepresentationProblem(sequences, n).count_exact(n, mode);
}

RepresentationTable count_all_upto(std::uint64_t x, const std::vector<BeattySequence>& sequences, Weighting mode) {
  return RepresentationProblem(sequences, x).count_all_upto(mode);
}

double smoothed_count(std::uint64_t n, const std::vector<BeattySequence>& sequences, double delta, Side side) {
  check_sequences(sequences);
  if (n < 2 * sequences.size()) return 0.0;
  return RepresentationProblem(sequences, n).smoothed_count(n, delta, side);
}

std::vector<std::uint64_t> exceptional_scan(std::uint64_t x, const BeattySequence& b1, const BeattySequence& b2) {
  if (x < 4) throw std::invalid_argument("exceptional_scan: x must be at least 4");
  return RepresentationProblem({b1, b2}, x).exceptional_scan();
}

void write_table_csv(std::ostream& out, const RepresentationTable& table, const std::vector<RealExpr>& alphas,
                     std::uint64_t first, std::uint64_t stride) {
  if (stride == 0) throw std::invalid_argument("write_table_csv: stride must be positive");
  if (static_cast<int>(alphas.size()) != table.k)
    throw std::invalid_argument("write_table_csv: need one alpha per sequence");
  static const SingularSeriesEvaluator evaluator;
  CsvWriter csv(out);
  csv.header({"n", "R", "main_term", "ratio"});
  for (std::uint64_t n = std::max<std::uint64_t>(first, 1); n <= table.x; n += stride) {
    const double mt = main_term(n, alphas, evaluator);
    CsvField ratio = std::string();
    if (mt != 0.0) ratio = table.values[n] / mt;
    csv.row({n, table.values[n], mt, ratio});
  }
}

}  // namespace beatty
