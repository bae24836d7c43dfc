#pragma once

// Exact symbolic reals: rationals, quadratic irrationals (a + b*sqrt(d))/c,
// the constants e and pi, and expressions built from them with +, *, and
// reciprocal. Construction simplifies eagerly, so rational and quadratic
// results always come back in their leaf form.

#include "beatty/interval.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace beatty {

enum class NamedConstant { e, pi };

enum class Rationality { rational, irrational, unknown };

// (a + b*sqrt(d)) / c with c > 0, b != 0, d squarefree and >= 2,
// gcd(a, b, c) = 1.
struct Quadratic {
  BigInt a, b, c, d;
  friend bool operator==(const Quadratic&, const Quadratic&) = default;
};

// Q-linear normal form r + sum_d s_d*sqrt(d) + u*e + v*pi, available for
// every expression whose value lies in that span.
struct LinearNormalForm {
  BigRational rational;
  std::map<BigInt, BigRational> surds;  // squarefree d >= 2 -> coefficient
  BigRational e_coef;
  BigRational pi_coef;

  bool has_transcendental() const { return !e_coef.is_zero() || !pi_coef.is_zero(); }
};

class RealExpr {
 public:
  enum class Kind { rational, quadratic, constant, sum, product, reciprocal };

  RealExpr();  // zero
  RealExpr(std::int64_t v);  // NOLINT

  static RealExpr rational(const BigRational& r);
  static RealExpr rational(const BigInt& p, const BigInt& q);
  // (a + b*sqrt(d)) / c; square factors of d are pulled out.
  static RealExpr quadratic(const BigInt& a, const BigInt& b, const BigInt& d, const BigInt& c);
  static RealExpr sqrt(const BigInt& d);
  static RealExpr constant(NamedConstant c);
  static RealExpr golden_ratio();

  Kind kind() const;
  std::optional<BigRational> as_rational() const;
  std::optional<Quadratic> as_quadratic() const;
  std::optional<NamedConstant> as_constant() const;
  std::optional<LinearNormalForm> normal_form() const;

  // Decided from the normal form where one exists. Combinations of e and pi
  // whose irrationality is an open problem come back as unknown.
  Rationality rationality() const;
  bool is_irrational() const { return rationality() == Rationality::irrational; }

  RealExpr reciprocal() const;
  RealExpr affine(const BigRational& scale, const BigRational& shift) const;

  friend RealExpr operator+(const RealExpr& a, const RealExpr& b);
  friend RealExpr operator*(const RealExpr& a, const RealExpr& b);
  friend RealExpr operator-(const RealExpr& a) { return a * RealExpr(-1); }
  friend RealExpr operator-(const RealExpr& a, const RealExpr& b) { return a + (-b); }
  friend RealExpr operator/(const RealExpr& a, const RealExpr& b) { return a * b.reciprocal(); }

  // Structural equality after simplification.
  friend bool operator==(const RealExpr& a, const RealExpr& b);

  // Tightest enclosure on the grid 2^-(bits-1): [f, f+1] * 2^-(bits-1) with
  // f = floor(x * 2^(bits-1)), or the exact point when x lies on the grid.
  // Enclosures at increasing precision are therefore nested.
  IntervalReal eval(int bits) const;
  // Some enclosure with endpoints on the grid 2^-frac_bits, not necessarily
  // tight; nullopt if a reciprocal of an interval around zero was needed.
  std::optional<IntervalReal> enclose(std::int64_t frac_bits) const;
  double approx() const;

  std::string to_string() const;

  struct Node;

 private:
  explicit RealExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static RealExpr from_normal_form(const LinearNormalForm& f);
  static RealExpr make_sum(std::vector<RealExpr> terms);

  std::shared_ptr<const Node> node_;
};

// Parses `rational:p/q`, `quadratic:(a+b*sqrt(d))/c`, `const:e|pi|phi`, and
// plain arithmetic over integers, decimals, sqrt(n), e, pi, phi.
// Decimal literals are read exactly as rationals.
RealExpr parse_real_expr(std::string_view text);

}  // namespace beatty
