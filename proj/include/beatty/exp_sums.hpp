#pragma once

// The prime exponential sum S(xi) = sum_{p <= N} log(p) e(xi p), twisted
// representation sums R(n, m), Farey arcs, and numerical checks of the
// analytic inequalities built on them.

#include "beatty/beatty_sequence.hpp"
#include "beatty/diophantine.hpp"
#include "beatty/primes.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace beatty {

using Complex = std::complex<double>;

class PrimeExpSum {
 public:
  explicit PrimeExpSum(std::uint64_t N);

  std::uint64_t N() const noexcept { return n_; }
  std::span<const std::uint32_t> primes() const noexcept { return primes_; }
  std::span<const double> logs() const noexcept { return logs_; }
  // S(0) = theta(N), the Chebyshev function.
  double chebyshev_theta() const noexcept { return theta_; }
  double sum_log_squares() const noexcept { return log_sq_; }

  Complex operator()(double xi) const;
  // xi = a/q + theta, with the rational part reduced exactly per prime.
  Complex at(std::int64_t a, std::int64_t q, double theta = 0.0) const;
  // S(t/T) for t = 0..T-1, by one length-T DFT. Requires T >= N + 1.
  std::vector<Complex> grid(std::size_t T) const;
  // S(t/T + c) for t = 0..T-1.
  std::vector<Complex> shifted_grid(std::size_t T, double c) const;

 private:
  std::uint64_t n_;
  std::vector<std::uint32_t> primes_;
  std::vector<double> logs_;
  double theta_ = 0.0;
  double log_sq_ = 0.0;
};

Complex S_point(double xi, std::uint64_t N);
std::vector<Complex> S_grid(std::uint64_t N, std::size_t T);

// m with lambda_j = gamma_j m_j - gamma_1 m_1. shifts[j] = {gamma_j m_j}
// from an exact evaluation, so phases stay accurate for large m.
struct ModulationVector {
  std::vector<std::int64_t> m;
  std::vector<double> lambdas;
  std::vector<double> shifts;

  ModulationVector(std::vector<std::int64_t> m, const std::vector<BeattySequence>& sequences);
  std::int64_t norm() const;  // max |m_j|
};

struct AnalysisParams {
  double A = 0;
  std::uint64_t n = 0;
  double delta = 0;  // (log n)^-A
  double M = 0;      // (log n)^(A+1)
  double P = 0;      // (log n)^(2A+12)
  double Q = 0;      // n / P

  static AnalysisParams for_n(std::uint64_t n, double A);
  // The exceptional-set variant: A becomes 2A+1 in delta and M, and
  // P = (log x)^(3A+10).
  static AnalysisParams for_exceptional(std::uint64_t x, double A);
};

// Sum over all prime k-tuples with p_1 + ... + p_k = n of
// prod log(p_j) * e(sum_j gamma_j m_j p_j).
Complex R_nm(std::uint64_t n, const ModulationVector& mv);

struct OrthogonalityReport {
  std::size_t T = 0;
  Complex direct;
  Complex discretized;
  double abs_error = 0;
};
// (1/T) sum_t prod_j S(t/T + gamma_j m_j) e(-n t/T) against the direct sum,
// with T the smallest power of two above (k-1) n, where the identity is exact.
OrthogonalityReport orthogonality_check(std::uint64_t n, const ModulationVector& mv);

struct FourierExpansionReport {
  double r_plus = 0;          // R+(n)
  Complex truncated_sum;      // sum over |m| <= M
  double residual = 0;        // |R+(n) - truncated_sum|
  double tail_bound = 0;
  double r0 = 0;              // R(n, 0)
  std::vector<double> coeff_mass;  // sum_{|m|<=M} |g_i^(m)| per sequence
  std::vector<double> coeff_tail;  // bound on sum_{|m|>M} |g_i^(m)|
  bool within_bound() const { return residual <= tail_bound; }
};
// R+(n) against its Fourier expansion truncated to the box |m| <= M.
FourierExpansionReport fourier_expansion_check(std::uint64_t n, const std::vector<BeattySequence>& sequences,
                                               double delta, std::int64_t M, unsigned threads = 1);

struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

struct FareyArc {
  std::int64_t a = 0;
  std::int64_t q = 1;
  Fraction lo;  // closed end
  Fraction hi;  // open end
};

// Farey fractions a/q in (0, 1] with q <= Q, in increasing order, each with
// the arc between the neighbouring mediants. The first arc starts at 1/Q
// and the last one ends at 1 + 1/Q, so the arcs partition [1/Q, 1 + 1/Q).
// Streams for 2 <= Q <= 10^5; farey_arcs() also refuses results above
// max_arcs entries.
void for_each_farey_arc(std::int64_t Q, const std::function<void(const FareyArc&)>& visit);
std::vector<FareyArc> farey_arcs(std::int64_t Q, std::size_t max_arcs = std::size_t{1} << 24);

struct Lemma1Row {
  double xi = 0;
  std::int64_t a = 0;
  std::int64_t q = 1;
  double theta = 0;
  double abs_s = 0;
  double bound = 0;
  double ratio = 0;
};

// (N/q + N^(4/5) + q)(1 + q^2 |theta|)(log 2N)^4.
double lemma1_bound(std::uint64_t N, std::int64_t q, double theta);
Lemma1Row lemma1_ratio(const PrimeExpSum& S, std::int64_t a, std::int64_t q, double theta);
// xi = t/T for t = 0..T-1 with a/q the last convergent of t/T having
// q <= q_max.
std::vector<Lemma1Row> lemma1_scan(const PrimeExpSum& S, std::int64_t T, std::int64_t q_max);
void write_lemma1_csv(std::ostream& out, const std::vector<Lemma1Row>& rows);

struct Lemma2Row {
  double X = 0;
  double Y = 0;
  std::int64_t a = 0;
  std::int64_t q = 1;
  double theta = 0;
  double lhs = 0;    // sum_{x <= X} min(XY/x, 1/||alpha x||)
  double bound = 0;  // (XY/q + X + q)(1 + q^2 |theta|) log(2Xq)
  double ratio = 0;
};
Lemma2Row lemma2_ratio(const RealExpr& alpha, std::uint64_t X, double Y, std::int64_t a, std::int64_t q);
// One row per X, with a/q the last convergent of alpha with q <= X.
std::vector<Lemma2Row> lemma2_scan(const RealExpr& alpha, const std::vector<std::uint64_t>& Xs, double Y);
void write_lemma2_csv(std::ostream& out, const std::vector<Lemma2Row>& rows);

struct ParsevalReport {
  double mean_square = 0;  // (1/T) sum_t |S(t/T)|^2
  double exact = 0;        // sum (log p)^2
  double residual = 0;
  double relative_residual = 0;
};
ParsevalReport parseval_check(std::uint64_t N, std::size_t T);

struct BesselReport {
  double lhs = 0;  // sum_{n <= x} |R(n, m)|^2
  double rhs = 0;  // (1/T) sum_t |S(t/T + gamma_1 m_1) S(t/T + gamma_2 m_2)|^2
  bool holds(double tol = 1e-9) const { return lhs <= rhs * (1 + tol); }
};
// k = 2, S over primes p <= x.
BesselReport bessel_check(std::uint64_t x, const ModulationVector& mv);

struct MinorArcPoint {
  std::string label;  // which linear form
  double xi = 0;      // value mod 1
  std::int64_t a = 0;
  std::int64_t q = 1;
  double theta = 0;
  bool in_range = false;  // N^q_lo_exp <= q <= N^q_hi_exp
  double ratio = 0;       // |S(xi)| / S(0)
};

struct MinorArcReport {
  std::vector<MinorArcPoint> points;
  double max_ratio = 0;  // over in-range points
  std::size_t in_range = 0;
};

// xi ranges over m*gamma_i for each sequence and m_2 gamma_2 - m_1 gamma_1
// for the first pair, 0 < |m| <= m_max. Each xi gets a certified
// approximation a/q with Q = N^q_hi_exp; points with q in
// [N^q_lo_exp, N^q_hi_exp] count towards max_ratio.
MinorArcReport minor_arc_scan(const PrimeExpSum& S, const std::vector<BeattySequence>& sequences,
                              std::int64_t m_max, double q_lo_exp = 0.1, double q_hi_exp = 0.5,
                              double epsilon = 0.2, unsigned threads = 1);

}  // namespace beatty
