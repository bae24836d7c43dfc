#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace beatty {

// Neumaier-compensated running sum.
template <class T = double>
class CompensatedSum {
 public:
  void add(T x) {
    const T t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  CompensatedSum& operator+=(T x) {
    add(x);
    return *this;
  }
  T value() const { return sum_ + comp_; }

 private:
  T sum_{};
  T comp_{};
};

template <>
class CompensatedSum<std::complex<double>> {
 public:
  void add(std::complex<double> z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  CompensatedSum& operator+=(std::complex<double> z) {
    add(z);
    return *this;
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum<double> re_, im_;
};

// e(x) = exp(2 pi i x), reducing x mod 1 first.
inline std::complex<double> unit_phase(double x) {
  const double f = x - std::floor(x);
  constexpr double two_pi = 6.283185307179586476925286766559;
  return {std::cos(two_pi * f), std::sin(two_pi * f)};
}

// Runs body(begin, end) over contiguous chunks of [0, count) on up to
// `threads` threads. Chunks are fixed by (count, threads), so any
// per-chunk reduction done by the caller is deterministic.
inline void parallel_chunks(std::size_t count, unsigned threads,
                            const std::function<void(std::size_t, std::size_t)>& body) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (threads == 1) {
    body(0, count);
    return;
  }
  std::vector<std::jthread> pool;
  const std::size_t step = (count + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t b = std::min(count, t * step);
    const std::size_t e = std::min(count, b + step);
    if (b < e) pool.emplace_back([&body, b, e] { body(b, e); });
  }
}

}  // namespace beatty
