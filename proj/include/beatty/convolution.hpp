#pragma once

// Linear convolutions truncated to a fixed output length, with forward
// transforms that can be computed once and reused.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace beatty {

// Largest transform length accepted by ExactConvolver (the 2-adic order
// shared by all three NTT moduli).
inline constexpr std::size_t kMaxNttSize = std::size_t{1} << 23;

// Exact integer convolution by number-theoretic transforms modulo three
// primes, recombined by CRT. Results must fit in 64 bits; convolve() checks
// a bound on the inputs and throws LimitTooLarge otherwise.
class ExactConvolver {
 public:
  // Transforms of length >= 2 * out_len; throws LimitTooLarge past kMaxNttSize.
  explicit ExactConvolver(std::size_t out_len);

  struct Spectrum {
    std::vector<std::uint32_t> residues[3];
    std::uint64_t max_entry = 0;
    std::size_t support = 0;  // number of nonzero inputs
  };

  std::size_t size() const noexcept { return size_; }
  Spectrum forward(const std::vector<std::uint64_t>& a) const;
  // (a * b)[0 .. out_len)
  std::vector<std::uint64_t> multiply(const Spectrum& a, const Spectrum& b) const;
  std::vector<std::uint64_t> convolve(const std::vector<std::uint64_t>& a,
                                      const std::vector<std::uint64_t>& b) const;

 private:
  std::size_t out_len_;
  std::size_t size_;
};

// Floating-point convolution through real-to-complex FFTs (FFTW).
class FloatConvolver {
 public:
  explicit FloatConvolver(std::size_t out_len);
  ~FloatConvolver();
  FloatConvolver(const FloatConvolver&) = delete;
  FloatConvolver& operator=(const FloatConvolver&) = delete;

  using Spectrum = std::vector<std::complex<double>>;

  std::size_t size() const noexcept { return size_; }
  Spectrum forward(const std::vector<double>& a) const;
  std::vector<double> multiply(const Spectrum& a, const Spectrum& b) const;
  std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b) const;

 private:
  struct Plans;
  std::size_t out_len_;
  std::size_t size_;
  Plans* plans_;
};

}  // namespace beatty
