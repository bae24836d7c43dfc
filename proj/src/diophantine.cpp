#include "beatty/diophantine.hpp"

#include "beatty/csv.hpp"
#include "beatty/errors.hpp"
#include "beatty/numeric.hpp"

#include <boost/multiprecision/integer.hpp>

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

namespace beatty {

namespace mp = boost::multiprecision;

namespace {

constexpr int kCertifyStartBits = 128;
constexpr int kCertifyMaxBits = 1 << 16;

BigRational lower_abs(const IntervalReal& x) {
  if (x.contains_zero()) return 0;
  const BigRational lo = x.lo().to_rational(), hi = x.hi().to_rational();
  return x.lo().sign() > 0 ? lo : BigRational(-hi);
}

BigRational upper_abs(const IntervalReal& x) {
  const BigRational lo = mp::abs(x.lo().to_rational()), hi = mp::abs(x.hi().to_rational());
  return lo > hi ? lo : hi;
}

// Enclosure of |q*theta - p| at the given precision.
IntervalReal residual(const RealExpr& theta, const BigInt& q, const BigInt& p, int bits) {
  return theta.eval(bits) * q + BigInt(-p);
}

int bits_for(const BigInt& q) {
  return kCertifyStartBits + 2 * static_cast<int>(q.is_zero() ? 0 : mp::msb(mp::abs(q)));
}

enum class Decision { below, not_below, undecided };

// Whether |q*theta - p| < bound (strict) or <= bound, escalating precision.
Decision certify_below(const RealExpr& theta, const BigInt& q, const BigInt& p, const BigRational& bound,
                       bool strict) {
  for (int bits = bits_for(q); bits <= kCertifyMaxBits; bits *= 2) {
    const IntervalReal r = residual(theta, q, p, bits);
    const BigRational up = upper_abs(r), lo = lower_abs(r);
    if (strict ? up < bound : up <= bound) return Decision::below;
    if (strict ? lo >= bound : lo > bound) return Decision::not_below;
  }
  return Decision::undecided;
}

std::optional<ContinuedFraction> expand(const RealExpr& theta, const BigInt& q_limit, int bits) {
  ContinuedFraction cf{theta, {}, {}};
  BigInt p1 = 1, q1 = 0, p2 = 0, q2 = 1;  // p_{j-1}, q_{j-1}, p_{j-2}, q_{j-2}
  IntervalReal x = theta.eval(bits);
  const std::int64_t frac_bits = bits;
  for (;;) {
    const auto a = floor_interval(x);
    if (!a) return std::nullopt;
    const BigInt p = *a * p1 + p2;
    const BigInt q = *a * q1 + q2;
    cf.partial_quotients.push_back(*a);
    cf.convergents.push_back({p, q});
    if (q > q_limit) return cf;
    p2 = p1;
    q2 = q1;
    p1 = p;
    q1 = q;
    const IntervalReal frac = x + BigInt(-*a);
    auto next = frac.reciprocal(frac_bits);
    if (!next) return std::nullopt;
    x = *next;
  }
}

// floor((P + sqrt(D)) / Q) for nonsquare D > 0, Q != 0.
BigInt floor_surd(const BigInt& P, const BigInt& D, const BigInt& Q) {
  const BigInt s = isqrt(D);
  if (Q.sign() > 0) return floor_div(P + s, Q);
  return floor_div(-P - s - 1, -Q);
}

unsigned __int128 to_u128(const BigInt& v) {
  const BigInt mask = (BigInt(1) << 64) - 1;
  const auto hi = static_cast<std::uint64_t>(BigInt(v >> 64) & mask);
  const auto lo = static_cast<std::uint64_t>(BigInt(v & mask));
  return (static_cast<unsigned __int128>(hi) << 64) | lo;
}

// frac(theta) * 2^128, truncated.
unsigned __int128 fixed_point_frac(const RealExpr& theta) {
  const auto x = theta.eval(200);
  const Dyadic lo = x.lo();
  const Dyadic f = lo - Dyadic(lo.floor(), 0);
  return to_u128(f.scaled(128).floor());
}

double fixed_distance(unsigned __int128 v) {
  const unsigned __int128 w = -v;
  return std::ldexp(static_cast<double>(v < w ? v : w), -128);
}

// Distance to the nearest integer as an interval, for cross-checks.
std::pair<double, double> interval_distance(const RealExpr& form) {
  const IntervalReal x = form.eval(256);
  const BigInt nearest = (x.midpoint() + Dyadic(BigInt(1), -1)).floor();
  const IntervalReal r = x + BigInt(-nearest);
  return {static_cast<double>(lower_abs(r)), static_cast<double>(upper_abs(r))};
}

double exponent_of(double distance, std::int64_t norm, TypeMode mode) {
  if (norm < 2) return std::numeric_limits<double>::quiet_NaN();
  if (distance <= 0.0) return std::numeric_limits<double>::infinity();
  const double ln = std::log(static_cast<double>(norm));
  if (mode == TypeMode::power) return -std::log(distance) / ln;
  return std::log(-std::log(distance)) / ln;
}

}  // namespace

ContinuedFraction continued_fraction(const RealExpr& theta, const BigInt& q_limit, int max_bits) {
  if (theta.rationality() != Rationality::irrational)
    throw ValidationError("continued_fraction: theta = " + theta.to_string() + " is not known to be irrational");
  if (q_limit < 1) throw std::invalid_argument("continued_fraction: q_limit must be positive");
  for (int bits = 64 + 4 * static_cast<int>(mp::msb(q_limit)); bits <= max_bits; bits *= 2) {
    if (auto cf = expand(theta, q_limit, bits)) {
      verify_convergents(*cf);
      return std::move(*cf);
    }
  }
  throw PrecisionExhausted("continued_fraction: expansion of " + theta.to_string() + " undecided at " +
                           std::to_string(max_bits) + " bits");
}

void verify_convergents(const ContinuedFraction& cf) {
  const auto& c = cf.convergents;
  for (std::size_t j = 1; j < c.size(); ++j) {
    const BigInt det = c[j].p * c[j - 1].q - c[j - 1].p * c[j].q;
    if (mp::abs(det) != 1)
      throw std::logic_error("convergent " + std::to_string(j) + " breaks the determinant identity");
    if (j >= 2 && c[j].q <= c[j - 1].q)
      throw std::logic_error("convergent denominators not increasing at " + std::to_string(j));
  }
  for (std::size_t j = 0; j + 1 < c.size(); ++j) {
    const BigRational bound(BigInt(1), c[j + 1].q);
    if (certify_below(cf.theta, c[j].q, c[j].p, bound, true) != Decision::below)
      throw std::logic_error("convergent " + std::to_string(j) + " fails |q theta - p| < 1/q'");
  }
}

PeriodicExpansion quadratic_expansion(const Quadratic& x) {
  BigInt P = x.b.sign() > 0 ? x.a : BigInt(-x.a);
  BigInt Q = x.b.sign() > 0 ? x.c : BigInt(-x.c);
  BigInt D = x.b * x.b * x.d;
  if (BigInt(D - P * P) % Q != 0) {
    const BigInt aq = mp::abs(Q);
    P *= aq;
    D *= Q * Q;
    Q *= aq;
  }
  std::map<std::pair<BigInt, BigInt>, std::size_t> seen;
  std::vector<BigInt> quotients;
  for (;;) {
    auto [it, fresh] = seen.emplace(std::make_pair(P, Q), quotients.size());
    if (!fresh) {
      const std::size_t start = it->second;
      return {{quotients.begin(), quotients.begin() + static_cast<std::ptrdiff_t>(start)},
              {quotients.begin() + static_cast<std::ptrdiff_t>(start), quotients.end()}};
    }
    const BigInt a = floor_surd(P, D, Q);
    quotients.push_back(a);
    P = a * Q - P;
    Q = (D - P * P) / Q;
  }
}

RealExpr linear_form(const std::vector<std::int64_t>& m, const std::vector<RealExpr>& thetas) {
  if (m.size() != thetas.size()) throw std::invalid_argument("linear_form: size mismatch");
  bool zero = true;
  for (auto v : m) zero = zero && v == 0;
  if (zero) throw ZeroVector("linear_form: coefficient vector is zero");
  RealExpr sum;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i] != 0) sum = sum + RealExpr(m[i]) * thetas[i];
  return sum;
}

RationalApprox lemma3_approx(const RealExpr& theta, const BigInt& Q, double epsilon) {
  if (Q < 16) throw std::invalid_argument("lemma3_approx: Q must be at least 16");
  if (!(epsilon > 0.0 && epsilon < 0.5)) throw std::invalid_argument("lemma3_approx: epsilon must be in (0, 1/2)");
  const auto cf = continued_fraction(theta, Q);
  const auto& c = cf.convergents;
  // c.back().q > Q >= c.front().q = 1, so the last one with q <= Q exists.
  const Convergent& best = c[c.size() - 2];
  RationalApprox out{best.p, best.q, c.back().q, 0.0, false};
  if (mp::gcd(out.a, out.q) != 1) throw std::logic_error("lemma3_approx: convergent not in lowest terms");
  // |q theta - a| < 1/q' < 1/Q, so this certificate can only fail on a bug.
  if (certify_below(theta, out.q, out.a, BigRational(BigInt(1), Q), false) != Decision::below)
    throw std::logic_error("lemma3_approx: residual exceeds 1/Q");
  const IntervalReal r = residual(theta, out.q, out.a, bits_for(Q) + 64);
  out.residual_bound = std::nextafter(static_cast<double>(upper_abs(r)), std::numeric_limits<double>::infinity());
  out.below_floor = out.q.convert_to<double>() < std::pow(Q.convert_to<double>(), epsilon);
  return out;
}

bool verify_approx(const RealExpr& theta, const RationalApprox& r, const BigInt& Q) {
  if (r.q < 1 || r.q > Q) return false;
  if (mp::gcd(r.a, r.q) != 1) return false;
  return certify_below(theta, r.q, r.a, BigRational(BigInt(1), Q), false) == Decision::below;
}

TypeScanReport type_scan(const std::vector<RealExpr>& thetas, std::int64_t q_max, TypeMode mode, unsigned threads) {
  const std::size_t s = thetas.size();
  if (s != 1 && s != 2) throw std::invalid_argument("type_scan: need one or two thetas");
  if (q_max < 2) throw std::invalid_argument("type_scan: q_max must be at least 2");
  if (s == 1 && q_max > 10'000'000) throw LimitTooLarge("type_scan: q_max above 10^7 for a single theta");
  if (s == 2 && (2 * q_max + 1) * (2 * q_max + 1) > 1'000'000)
    throw LimitTooLarge("type_scan: lattice box (2*q_max+1)^2 exceeds 10^6 points");

  TypeScanReport rep;
  rep.thetas = thetas;
  rep.q_max = q_max;
  rep.mode = mode;
  std::vector<unsigned __int128> fx;
  for (const auto& t : thetas) fx.push_back(fixed_point_frac(t));

  auto make = [&](std::vector<std::int64_t> m) {
    unsigned __int128 v = 0;
    std::int64_t norm = 0;
    for (std::size_t i = 0; i < s; ++i) {
      v += static_cast<unsigned __int128>(static_cast<__int128>(m[i])) * fx[i];
      norm = std::max(norm, m[i] < 0 ? -m[i] : m[i]);
    }
    const double d = fixed_distance(v);
    return TypeRecord{std::move(m), d, exponent_of(d, norm, mode)};
  };

  // Rows are m_1 = 0 .. q_max; row 0 holds m_2 = 1..q_max (one of each
  // +-m pair), later rows m_2 = -q_max..q_max.
  if (s == 1) {
    rep.records.resize(static_cast<std::size_t>(q_max));
    parallel_chunks(rep.records.size(), threads, [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) rep.records[i] = make({static_cast<std::int64_t>(i) + 1});
    });
  } else {
    const auto width = static_cast<std::size_t>(2 * q_max + 1);
    const auto first = static_cast<std::size_t>(q_max);
    rep.records.resize(first + static_cast<std::size_t>(q_max) * width);
    parallel_chunks(static_cast<std::size_t>(q_max) + 1, threads, [&](std::size_t b, std::size_t e) {
      for (std::size_t row = b; row < e; ++row) {
        const auto m1 = static_cast<std::int64_t>(row);
        if (row == 0) {
          for (std::int64_t m2 = 1; m2 <= q_max; ++m2) rep.records[static_cast<std::size_t>(m2 - 1)] = make({0, m2});
        } else {
          const std::size_t base = first + (row - 1) * width;
          for (std::int64_t m2 = -q_max; m2 <= q_max; ++m2)
            rep.records[base + static_cast<std::size_t>(m2 + q_max)] = make({m1, m2});
        }
      }
    });
  }

  // Maximum per norm, then running maxima; every new record is cross-checked
  // against an interval evaluation of the linear form.
  std::vector<double> by_norm(static_cast<std::size_t>(q_max) + 1, -std::numeric_limits<double>::infinity());
  std::vector<const TypeRecord*> arg(by_norm.size(), nullptr);
  for (const auto& r : rep.records) {
    std::int64_t norm = 0;
    for (auto v : r.m) norm = std::max(norm, v < 0 ? -v : v);
    if (norm < 2) continue;
    const auto n = static_cast<std::size_t>(norm);
    if (r.exponent > by_norm[n]) {
      by_norm[n] = r.exponent;
      arg[n] = &r;
    }
  }
  double best = -std::numeric_limits<double>::infinity();
  double tail = best;
  for (std::size_t n = 2; n < by_norm.size(); ++n) {
    if (2 * static_cast<std::int64_t>(n) > q_max) tail = std::max(tail, by_norm[n]);
    if (by_norm[n] <= best) continue;
    best = by_norm[n];
    rep.running_max.emplace_back(static_cast<std::int64_t>(n), best);
    const TypeRecord& r = *arg[n];
    const auto [lo, hi] = interval_distance(linear_form(r.m, thetas));
    const double slack = 1e-24 + 1e-12 * hi;
    if (r.distance < lo - slack || r.distance > hi + slack)
      throw std::logic_error("type_scan: fixed-point distance disagrees with interval evaluation");
  }
  rep.max_exponent = best;
  rep.tail_max_exponent = tail;
  return rep;
}

void write_type_scan_csv(std::ostream& out, const TypeScanReport& report) {
  CsvWriter csv(out);
  std::vector<std::string> head;
  for (std::size_t i = 0; i < report.thetas.size(); ++i) head.push_back("m" + std::to_string(i + 1));
  head.push_back("distance");
  head.push_back("exponent");
  csv.header(head);
  for (const auto& r : report.records) {
    std::vector<CsvField> row;
    for (auto v : r.m) row.emplace_back(v);
    row.emplace_back(r.distance);
    if (std::isnan(r.exponent))
      row.emplace_back(std::string());
    else
      row.emplace_back(r.exponent);
    csv.row(row);
  }
}

}  // namespace beatty
