#include "beatty/smoothing.hpp"

#include "beatty/errors.hpp"
#include "beatty/numeric.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

namespace beatty {

namespace {

using Quad = boost::math::quadrature::gauss_kronrod<double, 61>;
constexpr unsigned kMaxDepth = 16;
constexpr double kTol = 1e-14;

// Adaptive bisection on top of the fixed 61-point Kronrod rule, with an
// absolute error target; Boost's own driver targets a tolerance relative to
// the running estimate, which stalls on integrals near zero.
template <class F>
double integrate_abs(const F& f, double a, double b, double tol, unsigned depth) {
  double err = 0.0;
  const double r = Quad::integrate(f, a, b, 0, 0.0, &err);
  if (err <= tol || depth == 0) return r;
  const double mid = 0.5 * (a + b);
  return integrate_abs(f, a, mid, 0.5 * tol, depth - 1) + integrate_abs(f, mid, b, 0.5 * tol, depth - 1);
}

double bump_mass() {
  static const double mass = integrate_abs(bump, -1.0, 1.0, kTol, kMaxDepth);
  return mass;
}

}  // namespace

double bump(double u) {
  const double s = 1.0 - u * u;
  if (s <= 0.0) return 0.0;
  return std::exp(-1.0 / s);
}

double bump_cdf(double t) {
  if (t <= -1.0) return 0.0;
  if (t >= 1.0) return 1.0;
  // Integrate over the shorter side for accuracy near the ends.
  if (t > 0.0) return 1.0 - bump_cdf(-t);
  return integrate_abs(bump, -1.0, t, kTol, kMaxDepth) / bump_mass();
}

struct SmoothedIndicator::Cache {
  std::mutex mutex;
  std::vector<double> kernel;  // K^(m) for m = 0..size-1
};

SmoothedIndicator::SmoothedIndicator(double gamma, double width, Side side)
    : SmoothedIndicator(gamma, width, side, 0.25) {}

SmoothedIndicator SmoothedIndicator::relaxed(double gamma, double width, Side side) {
  return SmoothedIndicator(gamma, width, side, 0.5);
}

SmoothedIndicator::SmoothedIndicator(double gamma, double width, Side side, double width_fraction)
    : gamma_(gamma), width_(width), side_(side), cache_(std::make_shared<Cache>()) {
  if (!(gamma > 0.0 && gamma < 1.0))
    throw InvalidWidth("gamma must lie in (0, 1), got " + std::to_string(gamma));
  const double bound = width_fraction * std::min(gamma, 1.0 - gamma);
  if (!(width > 0.0 && width < bound))
    throw InvalidWidth("smoothing width " + std::to_string(width) + " outside (0, " +
                       std::to_string(bound) + ")");
  if (side == Side::plus) {
    lo_ = -width / 2;
    hi_ = gamma + width / 2;
  } else {
    lo_ = width / 2;
    hi_ = gamma - width / 2;
  }
}

double SmoothedIndicator::operator()(double x) const {
  // Place x in the period starting at the left edge of the support.
  const double start = lo_ - width_ / 2;
  x = start + (x - start - std::floor(x - start));
  // g(x) = F(x - lo) - F(x - hi), F the kernel CDF
  const double scale = 2.0 / width_;
  const double v = bump_cdf((x - lo_) * scale) - bump_cdf((x - hi_) * scale);
  return std::clamp(v, 0.0, 1.0);
}

double SmoothedIndicator::kernel_coeff(std::int64_t m) const {
  const auto k = static_cast<std::size_t>(m < 0 ? -m : m);
  {
    std::lock_guard lock(cache_->mutex);
    if (k < cache_->kernel.size()) return cache_->kernel[k];
  }
  precompute(static_cast<std::int64_t>(k));
  std::lock_guard lock(cache_->mutex);
  return cache_->kernel[k];
}

void SmoothedIndicator::precompute(std::int64_t m_max) const {
  std::lock_guard lock(cache_->mutex);
  auto& kv = cache_->kernel;
  if (static_cast<std::int64_t>(kv.size()) > m_max) return;
  // K^(m) = (1/mass) * int_{-1}^{1} bump(u) cos(pi m w u) du. The bump is flat
  // to all orders at +-1, so the trapezoid rule is spectrally accurate; the
  // aliasing error is the transform at frequency ~ pi*(n - m*w), which is
  // below double precision once n - m*w >= 2048.
  const double top = static_cast<double>(m_max) * width_;
  std::size_t half = 2048;
  while (static_cast<double>(half) < top + 2048.0) half *= 2;
  const double h = 1.0 / static_cast<double>(half);
  std::vector<double> samples;
  samples.reserve(half);
  for (std::size_t j = 0; j < half; ++j) {
    const double b = bump(static_cast<double>(j) * h);
    if (b < 1e-300) break;
    samples.push_back(b);
  }
  CompensatedSum<double> mass_sum;
  mass_sum.add(samples[0]);
  for (std::size_t j = 1; j < samples.size(); ++j) mass_sum.add(2.0 * samples[j]);
  const double mass = mass_sum.value();
  for (auto m = static_cast<std::int64_t>(kv.size()); m <= m_max; ++m) {
    if (m == 0) {
      kv.push_back(1.0);
      continue;
    }
    const double step = std::numbers::pi * static_cast<double>(m) * width_ * h;
    CompensatedSum<double> sum;
    sum.add(samples[0]);
    for (std::size_t j = 1; j < samples.size(); ++j)
      sum.add(2.0 * samples[j] * std::cos(step * static_cast<double>(j)));
    kv.push_back(sum.value() / mass);
  }
}

std::complex<double> SmoothedIndicator::fourier_coeff(std::int64_t m) const {
  const double length = hi_ - lo_;
  if (m == 0) return length;
  const double center = 0.5 * (lo_ + hi_);
  const double md = static_cast<double>(m);
  const double interval = std::sin(std::numbers::pi * md * length) / (std::numbers::pi * md);
  const double phase = -2.0 * std::numbers::pi * md * center;
  return std::polar(interval * kernel_coeff(m), phase);
}

std::vector<double> decay_constants(const SmoothedIndicator& g, int r_max, std::int64_t m_max) {
  if (r_max < 1 || r_max > 6) throw std::invalid_argument("decay_constants: r_max must be in 1..6");
  if (static_cast<double>(m_max) * g.width() < 1.0)
    throw std::invalid_argument("decay_constants: m_max must be at least 1/width");
  g.precompute(m_max);
  std::vector<double> c(static_cast<std::size_t>(r_max), 0.0);
  for (std::int64_t m = 1; m <= m_max; ++m) {
    const double mag = std::abs(g.fourier_coeff(m));
    for (int r = 1; r <= r_max; ++r) {
      const double v = mag * std::pow(1.0 + static_cast<double>(m), r) * std::pow(g.width(), r - 1);
      c[static_cast<std::size_t>(r - 1)] = std::max(c[static_cast<std::size_t>(r - 1)], v);
    }
  }
  return c;
}

}  // namespace beatty
