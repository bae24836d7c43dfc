#include "beatty/interval.hpp"

#include <boost/multiprecision/integer.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace beatty {

namespace mp = boost::multiprecision;

BigInt floor_div(const BigInt& a, const BigInt& b) {
  if (b.is_zero()) throw std::domain_error("floor_div by zero");
  BigInt q, r;
  mp::divide_qr(a, b, q, r);
  if (!r.is_zero() && ((r.sign() < 0) != (b.sign() < 0))) --q;
  return q;
}

BigInt ceil_div(const BigInt& a, const BigInt& b) { return -floor_div(-a, b); }

BigInt isqrt(const BigInt& n) {
  if (n.sign() < 0) throw std::domain_error("isqrt of negative");
  return mp::sqrt(n);
}

BigInt floor_of(const BigRational& r) {
  return floor_div(mp::numerator(r), mp::denominator(r));
}

namespace {

BigInt shift_left(const BigInt& v, std::int64_t s) { return v << static_cast<unsigned>(s); }

// floor(v / 2^s) for s >= 0.
BigInt floor_shift_right(const BigInt& v, std::int64_t s) {
  if (s == 0) return v;
  if (v.sign() >= 0) return v >> static_cast<unsigned>(s);
  BigInt m = -v;
  BigInt one_less = (BigInt(1) << static_cast<unsigned>(s)) - 1;
  return -((m + one_less) >> static_cast<unsigned>(s));
}

}  // namespace

Dyadic::Dyadic(BigInt mantissa, std::int64_t exponent)
    : mantissa_(std::move(mantissa)), exponent_(exponent) {
  normalize();
}

void Dyadic::normalize() {
  if (mantissa_.is_zero()) {
    exponent_ = 0;
    return;
  }
  const auto tz = static_cast<std::int64_t>(mp::lsb(mantissa_ < 0 ? BigInt(-mantissa_) : mantissa_));
  if (tz > 0) {
    mantissa_ >>= static_cast<unsigned>(tz);  // exact, low bits are zero
    exponent_ += tz;
  }
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const std::int64_t e = std::min(a.exponent_, b.exponent_);
  return {shift_left(a.mantissa_, a.exponent_ - e) + shift_left(b.mantissa_, b.exponent_ - e), e};
}

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
  return {a.mantissa_ * b.mantissa_, a.exponent_ + b.exponent_};
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  const Dyadic d = a - b;
  const int s = d.sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

BigInt Dyadic::floor() const {
  if (exponent_ >= 0) return shift_left(mantissa_, exponent_);
  return floor_shift_right(mantissa_, -exponent_);
}

BigInt Dyadic::ceil() const { return -(-*this).floor(); }

Dyadic Dyadic::round_down(std::int64_t frac_bits) const {
  if (exponent_ >= -frac_bits) return *this;
  return {scaled(frac_bits).floor(), -frac_bits};
}

Dyadic Dyadic::round_up(std::int64_t frac_bits) const {
  if (exponent_ >= -frac_bits) return *this;
  return {scaled(frac_bits).ceil(), -frac_bits};
}

BigRational Dyadic::to_rational() const {
  if (exponent_ >= 0) return BigRational(shift_left(mantissa_, exponent_));
  return BigRational(mantissa_, BigInt(1) << static_cast<unsigned>(-exponent_));
}

double Dyadic::to_double() const {
  if (is_zero()) return 0.0;
  BigInt m = mantissa_;
  std::int64_t e = exponent_;
  const auto top = static_cast<std::int64_t>(mp::msb(m < 0 ? BigInt(-m) : m));
  if (top > 62) {
    // Truncating extra bits changes the value by less than one double ulp.
    m = floor_shift_right(m, top - 62);
    e += top - 62;
  }
  const double mant = m.convert_to<double>();
  return std::ldexp(mant, static_cast<int>(std::clamp<std::int64_t>(e, -100000, 100000)));
}

std::string Dyadic::to_string() const {
  std::ostringstream os;
  os << mantissa_ << "*2^" << exponent_;
  return os.str();
}

Dyadic Dyadic::floor_at(const BigRational& r, std::int64_t frac_bits) {
  BigInt num = mp::numerator(r);
  BigInt den = mp::denominator(r);
  if (frac_bits >= 0)
    num <<= static_cast<unsigned>(frac_bits);
  else
    den <<= static_cast<unsigned>(-frac_bits);
  return {floor_div(num, den), -frac_bits};
}

Dyadic Dyadic::ceil_at(const BigRational& r, std::int64_t frac_bits) {
  return -floor_at(-r, frac_bits);
}

IntervalReal::IntervalReal(Dyadic lo, Dyadic hi, int precision_bits)
    : lo_(std::move(lo)), hi_(std::move(hi)), bits_(precision_bits) {
  if (hi_ < lo_) throw std::invalid_argument("IntervalReal: lo > hi");
}

IntervalReal IntervalReal::exact(const Dyadic& v, int precision_bits) {
  return {v, v, precision_bits};
}

bool IntervalReal::contains(const BigRational& v) const {
  return lo_.to_rational() <= v && v <= hi_.to_rational();
}

bool IntervalReal::meets_width_contract() const {
  Dyadic abs_hi = hi_.sign() < 0 ? -hi_ : hi_;
  Dyadic scale = abs_hi < Dyadic(1) ? Dyadic(1) : abs_hi;
  return width() <= scale.scaled(1 - bits_);
}

IntervalReal operator+(const IntervalReal& a, const IntervalReal& b) {
  return {a.lo_ + b.lo_, a.hi_ + b.hi_, std::min(a.bits_, b.bits_)};
}

IntervalReal operator*(const IntervalReal& a, const IntervalReal& b) {
  const Dyadic p[4] = {a.lo_ * b.lo_, a.lo_ * b.hi_, a.hi_ * b.lo_, a.hi_ * b.hi_};
  const auto [mn, mx] = std::minmax_element(std::begin(p), std::end(p));
  return {*mn, *mx, std::min(a.bits_, b.bits_)};
}

IntervalReal operator*(const IntervalReal& a, const BigInt& k) {
  const Dyadic kd(k, 0);
  if (k.sign() >= 0) return {a.lo_ * kd, a.hi_ * kd, a.bits_};
  return {a.hi_ * kd, a.lo_ * kd, a.bits_};
}

IntervalReal operator+(const IntervalReal& a, const BigInt& k) {
  const Dyadic kd(k, 0);
  return {a.lo_ + kd, a.hi_ + kd, a.bits_};
}

IntervalReal IntervalReal::rounded_out(std::int64_t frac_bits) const {
  return {lo_.round_down(frac_bits), hi_.round_up(frac_bits), bits_};
}

std::optional<IntervalReal> IntervalReal::reciprocal(std::int64_t frac_bits) const {
  if (contains_zero()) return std::nullopt;
  const BigRational lo_r = lo_.to_rational();
  const BigRational hi_r = hi_.to_rational();
  return IntervalReal(Dyadic::floor_at(1 / hi_r, frac_bits), Dyadic::ceil_at(1 / lo_r, frac_bits),
                      bits_);
}

std::string IntervalReal::to_string() const {
  std::ostringstream os;
  os.precision(17);
  os << "[" << lo_.to_double() << ", " << hi_.to_double() << "]";
  return os.str();
}

std::optional<BigInt> floor_interval(const IntervalReal& x) {
  BigInt f = x.lo().floor();
  if (f != x.hi().floor()) return std::nullopt;
  return f;
}

std::optional<IntervalReal> frac_interval(const IntervalReal& x) {
  auto f = floor_interval(x);
  if (!f) return std::nullopt;
  const Dyadic shift(-*f, 0);
  return IntervalReal(x.lo() + shift, x.hi() + shift, x.precision_bits());
}

}  // namespace beatty
