#pragma once

// Dyadic rationals and closed intervals with dyadic endpoints.
//
// All ring operations on Dyadic are exact. Rounding only happens when an
// operation is asked to snap onto the grid 2^-frac_bits, and the direction of
// that rounding is always explicit.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace beatty {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// floor(a / b) and ceil(a / b) for b != 0, any signs.
BigInt floor_div(const BigInt& a, const BigInt& b);
BigInt ceil_div(const BigInt& a, const BigInt& b);
// floor(sqrt(n)) for n >= 0.
BigInt isqrt(const BigInt& n);
BigInt floor_of(const BigRational& r);

// mantissa * 2^exponent, kept normalized (odd mantissa, or zero with
// exponent 0) so that equal values compare equal structurally.
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(BigInt mantissa, std::int64_t exponent);
  Dyadic(std::int64_t value) : Dyadic(BigInt(value), 0) {}  // NOLINT

  const BigInt& mantissa() const noexcept { return mantissa_; }
  std::int64_t exponent() const noexcept { return exponent_; }
  bool is_zero() const noexcept { return mantissa_.is_zero(); }
  int sign() const noexcept { return mantissa_.sign(); }

  Dyadic operator-() const { return {-mantissa_, exponent_}; }
  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.exponent_ == b.exponent_ && a.mantissa_ == b.mantissa_;
  }
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

  // this * 2^shift, exact.
  Dyadic scaled(std::int64_t shift) const { return {mantissa_, exponent_ + shift}; }

  BigInt floor() const;
  BigInt ceil() const;
  // Largest (smallest) multiple of 2^-frac_bits not above (below) this.
  Dyadic round_down(std::int64_t frac_bits) const;
  Dyadic round_up(std::int64_t frac_bits) const;

  BigRational to_rational() const;
  double to_double() const;
  std::string to_string() const;

  // Grid roundings of an arbitrary rational.
  static Dyadic floor_at(const BigRational& r, std::int64_t frac_bits);
  static Dyadic ceil_at(const BigRational& r, std::int64_t frac_bits);

 private:
  void normalize();

  BigInt mantissa_{0};
  std::int64_t exponent_ = 0;
};

// A closed interval [lo, hi] known to contain some real number.
//
// precision_bits records the precision the interval was produced at; the
// width contract hi - lo <= 2^(1 - precision_bits) * max(1, |hi|) holds for
// intervals returned by RealExpr::eval.
class IntervalReal {
 public:
  IntervalReal(Dyadic lo, Dyadic hi, int precision_bits);
  static IntervalReal exact(const Dyadic& v, int precision_bits);

  const Dyadic& lo() const noexcept { return lo_; }
  const Dyadic& hi() const noexcept { return hi_; }
  int precision_bits() const noexcept { return bits_; }

  Dyadic width() const { return hi_ - lo_; }
  Dyadic midpoint() const { return (lo_ + hi_).scaled(-1); }
  bool is_exact() const { return lo_ == hi_; }
  bool contains(const Dyadic& v) const { return lo_ <= v && v <= hi_; }
  bool contains(const BigRational& v) const;
  bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
  bool subset_of(const IntervalReal& other) const {
    return other.lo_ <= lo_ && hi_ <= other.hi_;
  }
  // Whether the width contract holds at this interval's precision.
  bool meets_width_contract() const;

  IntervalReal operator-() const { return {-hi_, -lo_, bits_}; }
  friend IntervalReal operator+(const IntervalReal& a, const IntervalReal& b);
  friend IntervalReal operator-(const IntervalReal& a, const IntervalReal& b) {
    return a + (-b);
  }
  friend IntervalReal operator*(const IntervalReal& a, const IntervalReal& b);
  friend IntervalReal operator*(const IntervalReal& a, const BigInt& k);
  friend IntervalReal operator+(const IntervalReal& a, const BigInt& k);

  // Outward rounding onto the grid 2^-frac_bits.
  IntervalReal rounded_out(std::int64_t frac_bits) const;
  // Enclosure of 1/x on the grid 2^-frac_bits; nullopt when 0 is inside.
  std::optional<IntervalReal> reciprocal(std::int64_t frac_bits) const;

  std::string to_string() const;

 private:
  Dyadic lo_;
  Dyadic hi_;
  int bits_;
};

// floor of every point of x when they agree; nullopt means undecidable at
// this precision and the caller should re-evaluate with more bits.
std::optional<BigInt> floor_interval(const IntervalReal& x);
// x - floor(x) as an interval inside [0, 1), or nullopt as above.
std::optional<IntervalReal> frac_interval(const IntervalReal& x);

}  // namespace beatty
