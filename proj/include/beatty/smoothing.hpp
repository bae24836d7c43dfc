#pragma once

// Smooth 1-periodic majorant / minorant of the indicator of (0, gamma).
//
// g+ is the indicator of (-w/2, gamma + w/2) convolved with a C-infinity bump
// K supported on [-w/2, w/2], g- the indicator of (w/2, gamma - w/2) convolved
// with the same K, where w is the smoothing width. Consequently
//   0 <= g- <= 1_(0,gamma) <= g+ <= 1,
// both agree with the indicator off the transition zones of width w around
// 0 and gamma, and the Fourier coefficients factor as
//   g^(m) = e(-m*c) * sin(pi*m*L)/(pi*m) * K^(m)
// with L, c the length and center of the underlying interval.

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

namespace beatty {

enum class Side { plus, minus };

class SmoothedIndicator {
 public:
  // Throws InvalidWidth unless 0 < width < min(gamma, 1 - gamma) / 4.
  SmoothedIndicator(double gamma, double width, Side side);
  // Only requires 0 < width < min(gamma, 1 - gamma) / 2, the range where the
  // bump construction is still well defined and keeps both sandwich
  // properties. Used for decay measurements at coarse widths.
  static SmoothedIndicator relaxed(double gamma, double width, Side side);

  double gamma() const noexcept { return gamma_; }
  double width() const noexcept { return width_; }
  Side side() const noexcept { return side_; }
  // Support of the kernel is [-kernel_width/2, kernel_width/2].
  double kernel_width() const noexcept { return width_; }
  double interval_lo() const noexcept { return lo_; }
  double interval_hi() const noexcept { return hi_; }

  // g(x), x taken mod 1.
  double operator()(double x) const;
  std::complex<double> fourier_coeff(std::int64_t m) const;
  // K^(m); real and even because K is.
  double kernel_coeff(std::int64_t m) const;
  // Fill the coefficient cache for |m| <= m_max.
  void precompute(std::int64_t m_max) const;

 private:
  struct Cache;
  SmoothedIndicator(double gamma, double width, Side side, double width_fraction);

  double gamma_;
  double width_;
  Side side_;
  double lo_, hi_;
  std::shared_ptr<Cache> cache_;
};

// Normalized cumulative bump: fraction of the kernel mass on (-inf, t*w/2].
double bump_cdf(double t);
// The standard bump exp(-1/(1-u^2)) on (-1, 1).
double bump(double u);

// C_r = max_{0<|m|<=m_max} |g^(m)| (1+|m|)^r w^(r-1), r = 1..r_max.
std::vector<double> decay_constants(const SmoothedIndicator& g, int r_max, std::int64_t m_max);

}  // namespace beatty
