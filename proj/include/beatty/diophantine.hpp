#pragma once

// Continued fractions, rational approximations to linear forms, and
// lattice scans measuring how well tuples of reals are approximable.

#include "beatty/real_expr.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

namespace beatty {

struct Convergent {
  BigInt p;
  BigInt q;
};

struct ContinuedFraction {
  RealExpr theta;
  std::vector<BigInt> partial_quotients;  // a_0; a_1, a_2, ...
  std::vector<Convergent> convergents;    // p_j / q_j after a_0..a_j
};

// All convergents with q_j <= q_limit plus the first one beyond it. Partial
// quotients come from the Gauss map x -> 1/{x} run on enclosures; on an
// undecided floor the whole expansion restarts at twice the precision, up
// to max_bits. The determinant identity and |q_j theta - p_j| < 1/q_{j+1}
// are re-verified before returning.
ContinuedFraction continued_fraction(const RealExpr& theta, const BigInt& q_limit, int max_bits = 1 << 16);

// Throws std::logic_error describing the first violated invariant.
void verify_convergents(const ContinuedFraction& cf);

// Exact expansion of a quadratic irrational: partial quotients before the
// period, then one full period.
struct PeriodicExpansion {
  std::vector<BigInt> preperiod;
  std::vector<BigInt> period;
};
PeriodicExpansion quadratic_expansion(const Quadratic& x);

// m_1 theta_1 + ... + m_s theta_s. Throws ZeroVector for m = 0.
RealExpr linear_form(const std::vector<std::int64_t>& m, const std::vector<RealExpr>& thetas);

struct RationalApprox {
  BigInt a;
  BigInt q;
  BigInt next_q;               // denominator of the following convergent, > Q
  double residual_bound = 0;   // certified upper bound on |q*theta - a|
  bool below_floor = false;    // q < Q^epsilon
};

// a/q is the last convergent with q <= Q, so |q*theta - a| < 1/q' <= 1/Q.
// Requires Q >= 16, 0 < epsilon < 1/2 and irrational theta.
RationalApprox lemma3_approx(const RealExpr& theta, const BigInt& Q, double epsilon);

// Independent check: gcd(a, q) = 1, 1 <= q <= Q and an interval enclosure
// of |q*theta - a| lying below 1/Q.
bool verify_approx(const RealExpr& theta, const RationalApprox& r, const BigInt& Q);

enum class TypeMode { power, subexponential };

struct TypeRecord {
  std::vector<std::int64_t> m;
  double distance;  // ||m . theta||
  double exponent;  // -log(d)/log|m| or log(-log d)/log|m|; |m| >= 2 only
};

struct TypeScanReport {
  std::vector<RealExpr> thetas;
  std::int64_t q_max = 0;
  TypeMode mode = TypeMode::power;
  // One record per lattice point up to sign, |m| = max |m_i| in [1, q_max].
  std::vector<TypeRecord> records;
  // Running maximum of the exponent as |m| grows: (|m|, max so far).
  std::vector<std::pair<std::int64_t, double>> running_max;
  double max_exponent = 0;       // over 2 <= |m| <= q_max
  double tail_max_exponent = 0;  // over q_max/2 < |m| <= q_max
};

// s = thetas.size() must be 1 or 2; for s = 2 the box holds
// (2 q_max + 1)^2 <= 10^6 points.
TypeScanReport type_scan(const std::vector<RealExpr>& thetas, std::int64_t q_max, TypeMode mode,
                         unsigned threads = 1);

void write_type_scan_csv(std::ostream& out, const TypeScanReport& report);

}  // namespace beatty
