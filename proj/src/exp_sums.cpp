#include "beatty/exp_sums.hpp"

#include "beatty/csv.hpp"
#include "beatty/errors.hpp"
#include "beatty/numeric.hpp"
#include "beatty/representations.hpp"
#include "beatty/smoothing.hpp"
#include "fft_util.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace beatty {

namespace {

constexpr std::size_t kMaxGrid = std::size_t{1} << 27;

double frac(double x) { return x - std::floor(x); }

// {x} for an exact real, to double accuracy.
double exact_frac(const RealExpr& x) {
  const auto iv = x.eval(128);
  const Dyadic mid = iv.midpoint();
  return (mid - Dyadic(mid.floor(), 0)).to_double();
}

// {x} to 64 fractional bits.
long double exact_frac_ld(const RealExpr& x) {
  const auto iv = x.eval(160);
  const Dyadic mid = iv.midpoint();
  const BigInt bits = (mid - Dyadic(mid.floor(), 0)).scaled(64).floor();
  return std::ldexp(static_cast<long double>(bits.convert_to<std::uint64_t>()), -64);
}

std::int64_t to_i64(const BigInt& v) {
  if (v > BigInt(std::numeric_limits<std::int64_t>::max()) || v < BigInt(std::numeric_limits<std::int64_t>::min()))
    throw LimitTooLarge("value does not fit in 64 bits");
  return v.convert_to<std::int64_t>();
}

void check_grid(std::size_t T) {
  if (T > kMaxGrid) throw LimitTooLarge("grid size " + std::to_string(T) + " above " + std::to_string(kMaxGrid));
}

// Ordered prime k-tuples summing to n: weights prod log p_j and the primes.
struct Tuples {
  int k = 0;
  std::vector<double> weight;
  std::vector<std::uint32_t> primes;  // k entries per tuple
};

Tuples prime_tuples(std::uint64_t n, int k, const PrimeTable& table) {
  Tuples t;
  t.k = k;
  const auto primes = table.primes();
  std::vector<std::uint32_t> current(static_cast<std::size_t>(k));
  auto rec = [&](auto&& self, int slot, std::uint64_t remaining, double w) -> void {
    if (slot == k - 1) {
      if (!table.is_prime(remaining)) return;
      current[static_cast<std::size_t>(slot)] = static_cast<std::uint32_t>(remaining);
      t.weight.push_back(w * std::log(static_cast<double>(remaining)));
      t.primes.insert(t.primes.end(), current.begin(), current.end());
      return;
    }
    const std::uint64_t reserve = 2 * static_cast<std::uint64_t>(k - 1 - slot);
    for (std::uint32_t p : primes) {
      if (p + reserve > remaining) break;
      current[static_cast<std::size_t>(slot)] = p;
      self(self, slot + 1, remaining - p, w * std::log(static_cast<double>(p)));
    }
  };
  rec(rec, 0, n, 1.0);
  return t;
}

// Last convergent p/q of num/den with q <= q_max (num/den >= 0).
std::pair<std::int64_t, std::int64_t> best_convergent(std::int64_t num, std::int64_t den, std::int64_t q_max) {
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;  // p_{-2}/q_{-2}, p_{-1}/q_{-1}
  std::int64_t a_num = num, a_den = den;
  std::pair<std::int64_t, std::int64_t> best{0, 1};
  while (a_den != 0) {
    const std::int64_t a = a_num / a_den;
    const std::int64_t p = a * p1 + p0, q = a * q1 + q0;
    if (q > q_max) break;
    best = {p, q};
    p0 = p1;
    q0 = q1;
    p1 = p;
    q1 = q;
    const std::int64_t r = a_num % a_den;
    a_num = a_den;
    a_den = r;
  }
  return best;
}

}  // namespace

PrimeExpSum::PrimeExpSum(std::uint64_t N) : n_(N) {
  if (N < 2) throw std::invalid_argument("PrimeExpSum: N must be at least 2");
  const auto table = sieve(N);
  primes_.assign(table.primes().begin(), table.primes().end());
  CompensatedSum<double> theta, sq;
  for (std::uint32_t p : primes_) {
    const double l = std::log(static_cast<double>(p));
    logs_.push_back(l);
    theta.add(l);
    sq.add(l * l);
  }
  theta_ = theta.value();
  log_sq_ = sq.value();
}

Complex PrimeExpSum::operator()(double xi) const {
  const double x = frac(xi);
  CompensatedSum<Complex> s;
  for (std::size_t i = 0; i < primes_.size(); ++i) s.add(logs_[i] * unit_phase(x * primes_[i]));
  return s.value();
}

Complex PrimeExpSum::at(std::int64_t a, std::int64_t q, double theta) const {
  if (q < 1) throw std::invalid_argument("PrimeExpSum::at: q must be positive");
  const std::int64_t ar = ((a % q) + q) % q;
  CompensatedSum<Complex> s;
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    const auto r = static_cast<std::int64_t>(static_cast<__int128>(ar) * primes_[i] % q);
    const double phase = static_cast<double>(r) / static_cast<double>(q) + frac(theta * primes_[i]);
    s.add(logs_[i] * unit_phase(phase));
  }
  return s.value();
}

std::vector<Complex> PrimeExpSum::grid(std::size_t T) const { return shifted_grid(T, 0.0); }

std::vector<Complex> PrimeExpSum::shifted_grid(std::size_t T, double c) const {
  if (T < n_ + 1) throw std::invalid_argument("S_grid: T must be at least N + 1");
  check_grid(T);
  const double cf = frac(c);
  std::vector<Complex> in(T);
  for (std::size_t i = 0; i < primes_.size(); ++i)
    in[primes_[i]] = cf == 0.0 ? Complex(logs_[i]) : logs_[i] * unit_phase(cf * primes_[i]);
  return detail::dft_positive(std::move(in));
}

Complex S_point(double xi, std::uint64_t N) { return PrimeExpSum(N)(xi); }

std::vector<Complex> S_grid(std::uint64_t N, std::size_t T) { return PrimeExpSum(N).grid(T); }

ModulationVector::ModulationVector(std::vector<std::int64_t> mv, const std::vector<BeattySequence>& sequences)
    : m(std::move(mv)) {
  if (m.size() != sequences.size()) throw std::invalid_argument("ModulationVector: need one m per sequence");
  const RealExpr base = RealExpr(m[0]) * sequences[0].gamma();
  for (std::size_t j = 0; j < m.size(); ++j) {
    const RealExpr gm = RealExpr(m[j]) * sequences[j].gamma();
    shifts.push_back(exact_frac(gm));
    lambdas.push_back(j == 0 ? 0.0 : (gm - base).approx());
  }
}

std::int64_t ModulationVector::norm() const {
  std::int64_t r = 0;
  for (auto v : m) r = std::max(r, v < 0 ? -v : v);
  return r;
}

AnalysisParams AnalysisParams::for_n(std::uint64_t n, double A) {
  if (n < 3 || !(A > 0)) throw std::invalid_argument("AnalysisParams: need n >= 3 and A > 0");
  const double L = std::log(static_cast<double>(n));
  AnalysisParams p;
  p.A = A;
  p.n = n;
  p.delta = std::pow(L, -A);
  p.M = std::pow(L, A + 1);
  p.P = std::pow(L, 2 * A + 12);
  p.Q = static_cast<double>(n) / p.P;
  return p;
}

AnalysisParams AnalysisParams::for_exceptional(std::uint64_t x, double A) {
  AnalysisParams p = for_n(x, 2 * A + 1);
  const double L = std::log(static_cast<double>(x));
  p.A = A;
  p.P = std::pow(L, 3 * A + 10);
  p.Q = static_cast<double>(x) / p.P;
  return p;
}

Complex R_nm(std::uint64_t n, const ModulationVector& mv) {
  const int k = static_cast<int>(mv.m.size());
  if (k < 2) throw std::invalid_argument("R_nm: need k >= 2");
  if (n < 2 * static_cast<std::uint64_t>(k)) throw std::invalid_argument("R_nm: n must be at least 2k");
  const auto table = sieve(n);
  // factor[j][p] = log p * e(gamma_j m_j p)
  std::vector<std::vector<Complex>> factor(static_cast<std::size_t>(k), std::vector<Complex>(n + 1));
  for (int j = 0; j < k; ++j)
    for (std::uint32_t p : table.primes())
      factor[j][p] = std::log(static_cast<double>(p)) * unit_phase(mv.shifts[j] * p);
  const auto primes = table.primes();
  auto rec = [&](auto&& self, int slot, std::uint64_t remaining) -> Complex {
    if (slot == k - 1) return factor[slot][remaining];
    const std::uint64_t reserve = 2 * static_cast<std::uint64_t>(k - 1 - slot);
    CompensatedSum<Complex> s;
    for (std::uint32_t p : primes) {
      if (p + reserve > remaining) break;
      const Complex inner = self(self, slot + 1, remaining - p);
      if (inner != Complex(0.0)) s.add(factor[slot][p] * inner);
    }
    return s.value();
  };
  return rec(rec, 0, n);
}

OrthogonalityReport orthogonality_check(std::uint64_t n, const ModulationVector& mv) {
  const auto k = mv.m.size();
  OrthogonalityReport r;
  r.T = std::bit_ceil((k - 1) * n + 1);
  check_grid(r.T);
  r.direct = R_nm(n, mv);
  const PrimeExpSum S(n);
  std::vector<Complex> prod(r.T, Complex(1.0));
  for (std::size_t j = 0; j < k; ++j) {
    const auto g = S.shifted_grid(r.T, mv.shifts[j]);
    for (std::size_t t = 0; t < r.T; ++t) prod[t] *= g[t];
  }
  CompensatedSum<Complex> s;
  for (std::size_t t = 0; t < r.T; ++t) {
    const std::uint64_t nt = (n % r.T) * t % r.T;
    s.add(prod[t] * unit_phase(-static_cast<double>(nt) / static_cast<double>(r.T)));
  }
  r.discretized = s.value() / static_cast<double>(r.T);
  r.abs_error = std::abs(r.discretized - r.direct);
  return r;
}

FourierExpansionReport fourier_expansion_check(std::uint64_t n, const std::vector<BeattySequence>& sequences,
                                               double delta, std::int64_t M, unsigned threads) {
  const int k = static_cast<int>(sequences.size());
  if (k < 2) throw std::invalid_argument("fourier_expansion_check: need k >= 2");
  if (M < 0) throw std::invalid_argument("fourier_expansion_check: M must be nonnegative");
  FourierExpansionReport rep;

  std::vector<SmoothedIndicator> g;
  for (const auto& b : sequences) g.emplace_back(b.gamma_value(), delta, Side::plus);
  const RepresentationProblem prob(sequences, n);
  rep.r_plus = prob.smoothed_count(n, delta, Side::plus);

  const auto tuples = prime_tuples(n, k, prob.primes());
  const std::size_t count = tuples.weight.size();
  const auto side = static_cast<std::size_t>(2 * M + 1);
  double work = static_cast<double>(count);
  for (int j = 0; j < k; ++j) work *= static_cast<double>(side);
  if (work > 4e9) throw LimitTooLarge("fourier_expansion_check: (2M+1)^k times tuple count too large");
  rep.r0 = std::accumulate(tuples.weight.begin(), tuples.weight.end(), 0.0);

  // Positions {gamma_j p_j + delta_j} per tuple.
  std::vector<double> pos(tuples.primes.size());
  for (std::size_t i = 0; i < tuples.primes.size(); ++i) {
    const int j = static_cast<int>(i % static_cast<std::size_t>(k));
    pos[i] = sequences[j].position(tuples.primes[i]);
  }
  std::vector<std::vector<Complex>> coeff(static_cast<std::size_t>(k), std::vector<Complex>(side));
  for (int j = 0; j < k; ++j) {
    g[j].precompute(M);
    CompensatedSum<double> mass;
    for (std::int64_t m = -M; m <= M; ++m) {
      const Complex c = g[j].fourier_coeff(m);
      mass.add(std::abs(c));
      coeff[j][static_cast<std::size_t>(m + M)] = c;
    }
    rep.coeff_mass.push_back(mass.value());
  }

  // R(n, m) for each box point, chunked over the first coordinate.
  std::vector<Complex> partial(side);
  parallel_chunks(side, threads, [&](std::size_t b, std::size_t e) {
    std::vector<std::int64_t> m(static_cast<std::size_t>(k));
    for (std::size_t first = b; first < e; ++first) {
      CompensatedSum<Complex> acc;
      std::fill(m.begin(), m.end(), -M);
      m[0] = static_cast<std::int64_t>(first) - M;
      for (;;) {
        Complex c(1.0);
        for (int j = 0; j < k; ++j) c *= coeff[j][static_cast<std::size_t>(m[j] + M)];
        CompensatedSum<Complex> r;
        for (std::size_t t = 0; t < count; ++t) {
          double phase = 0.0;
          for (int j = 0; j < k; ++j) phase += static_cast<double>(m[j]) * pos[t * k + j];
          r.add(tuples.weight[t] * unit_phase(phase));
        }
        acc.add(c * r.value());
        int j = 1;
        while (j < k && m[j] == M) m[j++] = -M;
        if (j == k) break;
        ++m[j];
      }
      partial[first] = acc.value();
    }
  });
  CompensatedSum<Complex> total;
  for (const auto& v : partial) total.add(v);
  rep.truncated_sum = total.value();
  rep.residual = std::abs(Complex(rep.r_plus) - rep.truncated_sum);

  // |g^(m)| <= C_r w^(1-r) (1+|m|)^-r with measured C_r; summing over
  // |m| > M gives 2 C_r w^(1-r) (1+M)^(1-r) / (r-1). Best r in 2..6.
  const std::int64_t m_max = std::max<std::int64_t>(4 * M, static_cast<std::int64_t>(std::ceil(20.0 / delta)));
  double with_tail = 1.0, without = 1.0;
  for (int j = 0; j < k; ++j) {
    const auto c = decay_constants(g[j], 6, m_max);
    double best = std::numeric_limits<double>::infinity();
    for (int r = 2; r <= 6; ++r) {
      const double b = 2.0 * c[r - 1] * std::pow(delta, 1.0 - r) * std::pow(1.0 + static_cast<double>(M), 1.0 - r) /
                       (r - 1);
      best = std::min(best, b);
    }
    rep.coeff_tail.push_back(best);
    with_tail *= rep.coeff_mass[j] + best;
    without *= rep.coeff_mass[j];
  }
  // |R(n, m)| <= R(n, 0); the last term budgets floating-point error.
  rep.tail_bound = rep.r0 * (with_tail - without) + 1e-12 * rep.r0 * with_tail;
  return rep;
}

void for_each_farey_arc(std::int64_t Q, const std::function<void(const FareyArc&)>& visit) {
  if (Q < 2) throw std::invalid_argument("farey_arcs: Q must be at least 2");
  if (Q > 100'000) throw LimitTooLarge("farey_arcs: Q above 10^5");
  // Consecutive Farey fractions prev = a/b < cur = c/d; next by the usual recurrence.
  std::int64_t a = 0, b = 1, c = 1, d = Q;
  Fraction lo{1, Q};
  while (true) {
    if (c == d) {
      visit({c, d, lo, {Q + 1, Q}});
      return;
    }
    const std::int64_t j = (Q + b) / d;
    const std::int64_t e = j * c - a, f = j * d - b;
    const Fraction hi{c + e, d + f};
    visit({c, d, lo, hi});
    lo = hi;
    a = c;
    b = d;
    c = e;
    d = f;
  }
}

std::vector<FareyArc> farey_arcs(std::int64_t Q, std::size_t max_arcs) {
  if (Q >= 2 && Q <= 100'000) {
    // |F_Q cap (0, 1]| = sum_{q <= Q} phi(q).
    std::vector<std::int64_t> phi(static_cast<std::size_t>(Q) + 1);
    std::iota(phi.begin(), phi.end(), 0);
    for (std::int64_t p = 2; p <= Q; ++p)
      if (phi[p] == p)
        for (std::int64_t m = p; m <= Q; m += p) phi[m] -= phi[m] / p;
    const auto total = static_cast<std::size_t>(std::accumulate(phi.begin() + 1, phi.end(), std::int64_t{0}));
    if (total > max_arcs)
      throw LimitTooLarge("farey_arcs: " + std::to_string(total) + " arcs exceed the budget of " +
                          std::to_string(max_arcs));
  }
  std::vector<FareyArc> out;
  for_each_farey_arc(Q, [&out](const FareyArc& arc) { out.push_back(arc); });
  return out;
}

double lemma1_bound(std::uint64_t N, std::int64_t q, double theta) {
  const double n = static_cast<double>(N), qq = static_cast<double>(q);
  return (n / qq + std::pow(n, 0.8) + qq) * (1.0 + qq * qq * std::abs(theta)) * std::pow(std::log(2.0 * n), 4);
}

Lemma1Row lemma1_ratio(const PrimeExpSum& S, std::int64_t a, std::int64_t q, double theta) {
  if (q < 1 || static_cast<std::uint64_t>(q) > S.N()) throw std::invalid_argument("lemma1_ratio: need 1 <= q <= N");
  if (std::gcd(a, q) != 1) throw std::invalid_argument("lemma1_ratio: gcd(a, q) must be 1");
  Lemma1Row row;
  row.a = a;
  row.q = q;
  row.theta = theta;
  row.xi = static_cast<double>(a) / static_cast<double>(q) + theta;
  row.abs_s = std::abs(S.at(a, q, theta));
  row.bound = lemma1_bound(S.N(), q, theta);
  row.ratio = row.abs_s / row.bound;
  return row;
}

std::vector<Lemma1Row> lemma1_scan(const PrimeExpSum& S, std::int64_t T, std::int64_t q_max) {
  if (T < 1 || q_max < 1) throw std::invalid_argument("lemma1_scan: T and q_max must be positive");
  q_max = std::min<std::int64_t>(q_max, static_cast<std::int64_t>(S.N()));
  std::vector<Lemma1Row> rows;
  for (std::int64_t t = 0; t < T; ++t) {
    const auto [a, q] = best_convergent(t, T, q_max);
    const double theta = static_cast<double>(t * q - a * T) / static_cast<double>(T * q);
    auto row = lemma1_ratio(S, a, q, theta);
    row.xi = static_cast<double>(t) / static_cast<double>(T);
    rows.push_back(row);
  }
  return rows;
}

void write_lemma1_csv(std::ostream& out, const std::vector<Lemma1Row>& rows) {
  CsvWriter csv(out);
  csv.header({"xi", "a", "q", "theta", "abs_S", "bound", "ratio"});
  for (const auto& r : rows) csv.row({r.xi, r.a, r.q, r.theta, r.abs_s, r.bound, r.ratio});
}

Lemma2Row lemma2_ratio(const RealExpr& alpha, std::uint64_t X, double Y, std::int64_t a, std::int64_t q) {
  if (X < 1 || !(Y >= 1.0)) throw std::invalid_argument("lemma2_ratio: need X >= 1 and Y >= 1");
  if (q < 1 || std::gcd(a, q) != 1) throw std::invalid_argument("lemma2_ratio: need q >= 1 and gcd(a, q) = 1");
  Lemma2Row row;
  row.X = static_cast<double>(X);
  row.Y = Y;
  row.a = a;
  row.q = q;
  row.theta = (alpha - RealExpr::rational(BigInt(a), BigInt(q))).approx();
  const long double f = exact_frac_ld(alpha);
  CompensatedSum<double> lhs;
  const double xy = row.X * Y;
  for (std::uint64_t x = 1; x <= X; ++x) {
    long double v = f * static_cast<long double>(x);
    v -= std::floor(v);
    const double dist = static_cast<double>(std::min(v, 1.0L - v));
    const double cap = xy / static_cast<double>(x);
    lhs.add(dist > 0.0 ? std::min(cap, 1.0 / dist) : cap);
  }
  row.lhs = lhs.value();
  const double qq = static_cast<double>(q);
  row.bound = (xy / qq + row.X + qq) * (1.0 + qq * qq * std::abs(row.theta)) * std::log(2.0 * row.X * qq);
  row.ratio = row.lhs / row.bound;
  return row;
}

std::vector<Lemma2Row> lemma2_scan(const RealExpr& alpha, const std::vector<std::uint64_t>& Xs, double Y) {
  std::vector<Lemma2Row> rows;
  for (auto X : Xs) {
    const auto cf = continued_fraction(alpha, BigInt(X));
    const Convergent* c = nullptr;
    for (const auto& conv : cf.convergents)
      if (conv.q >= 1 && conv.q <= BigInt(X)) c = &conv;
    if (c == nullptr) throw std::logic_error("lemma2_scan: no convergent below X");
    rows.push_back(lemma2_ratio(alpha, X, Y, to_i64(c->p), to_i64(c->q)));
  }
  return rows;
}

void write_lemma2_csv(std::ostream& out, const std::vector<Lemma2Row>& rows) {
  CsvWriter csv(out);
  csv.header({"X", "Y", "a", "q", "theta", "lhs", "bound", "ratio"});
  for (const auto& r : rows) csv.row({r.X, r.Y, r.a, r.q, r.theta, r.lhs, r.bound, r.ratio});
}

ParsevalReport parseval_check(std::uint64_t N, std::size_t T) {
  if (T <= N) throw std::invalid_argument("parseval_check: T must exceed N");
  const PrimeExpSum S(N);
  const auto g = S.grid(T);
  CompensatedSum<double> acc;
  for (const auto& v : g) acc.add(std::norm(v));
  ParsevalReport r;
  r.mean_square = acc.value() / static_cast<double>(T);
  r.exact = S.sum_log_squares();
  r.residual = std::abs(r.mean_square - r.exact);
  r.relative_residual = r.residual / r.exact;
  return r;
}

BesselReport bessel_check(std::uint64_t x, const ModulationVector& mv) {
  if (mv.m.size() != 2) throw std::invalid_argument("bessel_check: requires k = 2");
  const PrimeExpSum S(x);
  const auto primes = S.primes();
  const auto logs = S.logs();
  std::vector<Complex> f1(x + 1), f2(x + 1);
  for (std::size_t i = 0; i < primes.size(); ++i) {
    f1[primes[i]] = logs[i] * unit_phase(mv.shifts[0] * primes[i]);
    f2[primes[i]] = logs[i] * unit_phase(mv.shifts[1] * primes[i]);
  }
  BesselReport r;
  CompensatedSum<double> lhs;
  for (std::uint64_t n = 4; n <= x; ++n) {
    CompensatedSum<Complex> s;
    for (std::uint32_t p : primes) {
      if (p + 2 > n) break;
      if (f2[n - p] != Complex(0.0)) s.add(f1[p] * f2[n - p]);
    }
    lhs.add(std::norm(s.value()));
  }
  r.lhs = lhs.value();
  const std::size_t T = std::bit_ceil(2 * x + 1);
  const auto g1 = S.shifted_grid(T, mv.shifts[0]);
  const auto g2 = S.shifted_grid(T, mv.shifts[1]);
  CompensatedSum<double> rhs;
  for (std::size_t t = 0; t < T; ++t) rhs.add(std::norm(g1[t] * g2[t]));
  r.rhs = rhs.value() / static_cast<double>(T);
  return r;
}

MinorArcReport minor_arc_scan(const PrimeExpSum& S, const std::vector<BeattySequence>& sequences,
                              std::int64_t m_max, double q_lo_exp, double q_hi_exp, double epsilon,
                              unsigned threads) {
  if (sequences.empty() || m_max < 1) throw std::invalid_argument("minor_arc_scan: need sequences and m_max >= 1");
  struct Form {
    std::string label;
    RealExpr expr;
  };
  std::vector<Form> forms;
  for (std::size_t i = 0; i < sequences.size(); ++i)
    for (std::int64_t m = 1; m <= m_max; ++m)
      forms.push_back({std::to_string(m) + "*gamma" + std::to_string(i + 1),
                       linear_form({m}, {sequences[i].gamma()})});
  if (sequences.size() >= 2) {
    const std::vector<RealExpr> pair = {sequences[0].gamma(), sequences[1].gamma()};
    for (std::int64_t m1 = 1; m1 <= m_max; ++m1)
      for (std::int64_t m2 = -m_max; m2 <= m_max; ++m2) {
        if (m2 == 0) continue;
        RealExpr e = linear_form({-m1, m2}, pair);
        if (e.rationality() != Rationality::irrational) continue;
        forms.push_back({std::to_string(m2) + "*gamma2-" + std::to_string(m1) + "*gamma1", std::move(e)});
      }
  }

  const double N = static_cast<double>(S.N());
  const BigInt Q(static_cast<std::int64_t>(std::floor(std::pow(N, q_hi_exp))));
  const double q_lo = std::pow(N, q_lo_exp);
  MinorArcReport rep;
  rep.points.resize(forms.size());
  parallel_chunks(forms.size(), threads, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      const auto approx = lemma3_approx(forms[i].expr, Q, epsilon);
      MinorArcPoint pt;
      pt.label = forms[i].label;
      pt.xi = exact_frac(forms[i].expr);
      pt.q = to_i64(approx.q);
      pt.a = to_i64(approx.a);
      pt.theta = (forms[i].expr - RealExpr::rational(approx.a, approx.q)).approx();
      pt.in_range = static_cast<double>(pt.q) >= q_lo && BigInt(pt.q) <= Q;
      pt.ratio = std::abs(S.at(pt.a, pt.q, pt.theta)) / S.chebyshev_theta();
      rep.points[i] = std::move(pt);
    }
  });
  for (const auto& p : rep.points) {
    if (!p.in_range) continue;
    ++rep.in_range;
    rep.max_ratio = std::max(rep.max_ratio, p.ratio);
  }
  return rep;
}

}  // namespace beatty
