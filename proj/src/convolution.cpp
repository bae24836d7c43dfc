#include "beatty/convolution.hpp"

#include "beatty/errors.hpp"
#include "fft_util.hpp"

#include <fftw3.h>

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <mutex>
#include <string>

namespace beatty {

namespace {

struct Modulus {
  std::uint32_t p;
  std::uint32_t root;  // primitive root
};

constexpr std::array<Modulus, 3> kModuli = {{{998244353u, 3u}, {167772161u, 3u}, {469762049u, 3u}}};

std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p);
}

std::uint32_t pow_mod(std::uint32_t a, std::uint64_t e, std::uint32_t p) {
  std::uint32_t r = 1;
  while (e) {
    if (e & 1) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return r;
}

void ntt(std::vector<std::uint32_t>& a, const Modulus& m, bool inverse) {
  const std::size_t n = a.size();
  const std::uint32_t p = m.p;
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  std::vector<std::uint32_t> tw;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    std::uint32_t w = pow_mod(m.root, (p - 1) / len, p);
    if (inverse) w = pow_mod(w, p - 2, p);
    const std::size_t half = len / 2;
    tw.assign(half, 1);
    for (std::size_t i = 1; i < half; ++i) tw[i] = mul_mod(tw[i - 1], w, p);
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t j = 0; j < half; ++j) {
        const std::uint32_t u = a[i + j];
        const std::uint32_t v = mul_mod(a[i + j + half], tw[j], p);
        a[i + j] = u + v >= p ? u + v - p : u + v;
        a[i + j + half] = u >= v ? u - v : u + p - v;
      }
    }
  }
  if (inverse) {
    const std::uint32_t inv_n = pow_mod(static_cast<std::uint32_t>(n % p), p - 2, p);
    for (auto& x : a) x = mul_mod(x, inv_n, p);
  }
}

std::size_t transform_size(std::size_t out_len) {
  return std::bit_ceil(std::max<std::size_t>(2 * out_len, 2));
}

}  // namespace

namespace detail {

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

std::vector<std::complex<double>> dft_positive(std::vector<std::complex<double>> in) {
  const int n = static_cast<int>(in.size());
  std::vector<std::complex<double>> out(in.size());
  auto* src = reinterpret_cast<fftw_complex*>(in.data());
  auto* dst = reinterpret_cast<fftw_complex*>(out.data());
  fftw_plan plan;
  {
    std::lock_guard lock(fftw_planner_mutex());
    plan = fftw_plan_dft_1d(n, src, dst, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  }
  fftw_execute(plan);
  std::lock_guard lock(fftw_planner_mutex());
  fftw_destroy_plan(plan);
  return out;
}

}  // namespace detail

using detail::fftw_planner_mutex;

ExactConvolver::ExactConvolver(std::size_t out_len) : out_len_(out_len), size_(transform_size(out_len)) {
  if (size_ > kMaxNttSize)
    throw LimitTooLarge("exact convolution of length " + std::to_string(out_len) + " needs a transform of " +
                        std::to_string(size_) + " > " + std::to_string(kMaxNttSize));
}

ExactConvolver::Spectrum ExactConvolver::forward(const std::vector<std::uint64_t>& a) const {
  Spectrum s;
  const std::size_t len = std::min(a.size(), out_len_);
  for (std::size_t i = 0; i < len; ++i) {
    s.max_entry = std::max(s.max_entry, a[i]);
    if (a[i]) ++s.support;
  }
  for (std::size_t j = 0; j < 3; ++j) {
    auto& r = s.residues[j];
    r.assign(size_, 0);
    for (std::size_t i = 0; i < len; ++i) r[i] = static_cast<std::uint32_t>(a[i] % kModuli[j].p);
    ntt(r, kModuli[j], false);
  }
  return s;
}

std::vector<std::uint64_t> ExactConvolver::multiply(const Spectrum& a, const Spectrum& b) const {
  // Every output entry is at most max_a * max_b * min(support_a, support_b).
  const auto bound = static_cast<unsigned __int128>(a.max_entry) * b.max_entry *
                     std::min(a.support, b.support);
  if (bound >> 64)
    throw LimitTooLarge("exact convolution result may exceed 64 bits");

  std::array<std::vector<std::uint32_t>, 3> c;
  for (std::size_t j = 0; j < 3; ++j) {
    c[j].resize(size_);
    for (std::size_t i = 0; i < size_; ++i)
      c[j][i] = mul_mod(a.residues[j][i], b.residues[j][i], kModuli[j].p);
    ntt(c[j], kModuli[j], true);
  }
  // Garner recombination: x = r0 + p0*(t1 + p1*t2).
  const std::uint32_t p0 = kModuli[0].p, p1 = kModuli[1].p, p2 = kModuli[2].p;
  const std::uint32_t inv_p0_mod_p1 = pow_mod(p0 % p1, p1 - 2, p1);
  const std::uint32_t p0p1_mod_p2 = mul_mod(p0 % p2, p1 % p2, p2);
  const std::uint32_t inv_p0p1_mod_p2 = pow_mod(p0p1_mod_p2, p2 - 2, p2);
  std::vector<std::uint64_t> out(out_len_);
  for (std::size_t i = 0; i < out_len_; ++i) {
    const std::uint32_t r0 = c[0][i], r1 = c[1][i], r2 = c[2][i];
    const std::uint32_t t1 = mul_mod((r1 + p1 - r0 % p1) % p1, inv_p0_mod_p1, p1);
    const std::uint64_t x01 = r0 + static_cast<std::uint64_t>(p0) * t1;  // < p0*p1
    const std::uint32_t x01_mod_p2 = static_cast<std::uint32_t>(x01 % p2);
    const std::uint32_t t2 = mul_mod((r2 + p2 - x01_mod_p2) % p2, inv_p0p1_mod_p2, p2);
    const unsigned __int128 x = x01 + static_cast<unsigned __int128>(p0) * p1 * t2;
    out[i] = static_cast<std::uint64_t>(x);
  }
  return out;
}

std::vector<std::uint64_t> ExactConvolver::convolve(const std::vector<std::uint64_t>& a,
                                                    const std::vector<std::uint64_t>& b) const {
  return multiply(forward(a), forward(b));
}

struct FloatConvolver::Plans {
  double* real;
  fftw_complex* freq;
  fftw_plan r2c;
  fftw_plan c2r;
};

FloatConvolver::FloatConvolver(std::size_t out_len)
    : out_len_(out_len), size_(transform_size(out_len)), plans_(new Plans) {
  const int n = static_cast<int>(size_);
  std::lock_guard lock(fftw_planner_mutex());
  plans_->real = fftw_alloc_real(size_);
  plans_->freq = fftw_alloc_complex(size_ / 2 + 1);
  plans_->r2c = fftw_plan_dft_r2c_1d(n, plans_->real, plans_->freq, FFTW_ESTIMATE | FFTW_UNALIGNED);
  plans_->c2r = fftw_plan_dft_c2r_1d(n, plans_->freq, plans_->real, FFTW_ESTIMATE | FFTW_UNALIGNED);
}

FloatConvolver::~FloatConvolver() {
  std::lock_guard lock(fftw_planner_mutex());
  fftw_destroy_plan(plans_->r2c);
  fftw_destroy_plan(plans_->c2r);
  fftw_free(plans_->real);
  fftw_free(plans_->freq);
  delete plans_;
}

FloatConvolver::Spectrum FloatConvolver::forward(const std::vector<double>& a) const {
  std::vector<double> in(size_, 0.0);
  std::copy_n(a.begin(), std::min(a.size(), out_len_), in.begin());
  Spectrum s(size_ / 2 + 1);
  // Plans are made with FFTW_UNALIGNED so they run on any caller buffer.
  fftw_execute_dft_r2c(plans_->r2c, in.data(), reinterpret_cast<fftw_complex*>(s.data()));
  return s;
}

std::vector<double> FloatConvolver::multiply(const Spectrum& a, const Spectrum& b) const {
  Spectrum c(a.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] * b[i];
  std::vector<double> out(size_);
  fftw_execute_dft_c2r(plans_->c2r, reinterpret_cast<fftw_complex*>(c.data()), out.data());
  out.resize(out_len_);
  const double scale = 1.0 / static_cast<double>(size_);
  for (auto& v : out) v *= scale;
  return out;
}

std::vector<double> FloatConvolver::convolve(const std::vector<double>& a, const std::vector<double>& b) const {
  return multiply(forward(a), forward(b));
}

}  // namespace beatty
