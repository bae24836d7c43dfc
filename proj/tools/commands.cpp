#include "commands.hpp"

#include "beatty/csv.hpp"
#include "beatty/diophantine.hpp"
#include "beatty/errors.hpp"
#include "beatty/exp_sums.hpp"
#include "beatty/representations.hpp"
#include "beatty/singular_series.hpp"
#include "beatty/smoothing.hpp"
#include "svg.hpp"

#include <boost/version.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#ifndef BEATTY_VERSION
#define BEATTY_VERSION "0.0.0"
#endif

namespace beatty::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Twelve significant digits, so reruns give identical bytes.
json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::stod(fmt::format("{:.12g}", v));
}

struct Context {
  const ExperimentConfig& cfg;
  const RunOptions& opts;
  std::ostream& log;
  std::vector<std::string> outputs;
  bool passed = true;

  fs::path path(const std::string& name) {
    outputs.push_back(name);
    return opts.out_dir / name;
  }
  void write_json(const std::string& name, const json& j) {
    std::ofstream out(path(name), std::ios::binary);
    out << j.dump(2) << "\n";
  }
  std::ofstream open(const std::string& name) { return std::ofstream(path(name), std::ios::binary); }
  void plot(const std::string& name, const PlotSpec& plot_spec) {
    if (emit_plot(opts.out_dir / name, plot_spec, log)) outputs.push_back(name);
  }
};

std::vector<RealExpr> alphas(const ExperimentConfig& cfg) {
  std::vector<RealExpr> out;
  for (const auto& s : cfg.sequences) out.push_back(s.alpha());
  return out;
}

void require_k(const ExperimentConfig& cfg, int k, const std::string& command) {
  if (cfg.k != k) throw ValidationError(command + " requires k = " + std::to_string(k));
}

void verify_asymptotic(Context& c) {
  const auto& cfg = c.cfg;
  const RepresentationProblem prob(cfg.sequences, cfg.limit);
  const auto table = prob.count_all_upto(cfg.weighted ? Weighting::weighted : Weighting::unweighted);
  const std::uint64_t lo = std::max<std::uint64_t>(cfg.first, 2 * static_cast<std::uint64_t>(cfg.k));
  if (lo > cfg.limit) throw ValidationError("first exceeds limit");

  std::vector<std::uint64_t> ns;
  if (cfg.samples > 0) {
    // Uniform sample keeping the parity of `lo`.
    std::mt19937_64 rng(c.opts.seed);
    std::uniform_int_distribution<std::uint64_t> pick(0, (cfg.limit - lo) / 2);
    for (std::uint64_t i = 0; i < cfg.samples; ++i) ns.push_back(lo + 2 * pick(rng));
    std::sort(ns.begin(), ns.end());
  } else {
    for (std::uint64_t n = lo; n <= cfg.limit; n += cfg.stride) ns.push_back(n);
  }

  const SingularSeriesEvaluator evaluator;
  const auto al = alphas(cfg);
  auto csv_out = c.open("verify_asymptotic.csv");
  CsvWriter csv(csv_out);
  csv.header({"n", "R", "main_term", "ratio"});
  std::vector<double> xs, ratios;
  for (auto n : ns) {
    const double mt = main_term(n, al, evaluator);
    CsvField ratio = std::string();
    if (mt != 0.0) {
      ratio = table.values[n] / mt;
      xs.push_back(static_cast<double>(n));
      ratios.push_back(table.values[n] / mt);
    }
    csv.row({n, table.values[n], mt, ratio});
  }

  double mean = 0;
  std::size_t in_band = 0;
  for (double r : ratios) {
    mean += r;
    in_band += r >= cfg.band[0] && r <= cfg.band[1];
  }
  const bool have = !ratios.empty();
  if (have) mean /= static_cast<double>(ratios.size());
  const double fraction = have ? static_cast<double>(in_band) / static_cast<double>(ratios.size()) : 0.0;
  const bool ok = have && mean >= cfg.mean_window[0] && mean <= cfg.mean_window[1] && fraction >= cfg.band_fraction;
  c.passed = ok;
  c.write_json("verify_asymptotic.json",
               {{"k", cfg.k},
                {"limit", cfg.limit},
                {"weighted", cfg.weighted},
                {"sampled_n", ns.size()},
                {"ratios", ratios.size()},
                {"mean_ratio", have ? num(mean) : json(nullptr)},
                {"min_ratio", have ? num(*std::min_element(ratios.begin(), ratios.end())) : json(nullptr)},
                {"max_ratio", have ? num(*std::max_element(ratios.begin(), ratios.end())) : json(nullptr)},
                {"fraction_in_band", num(fraction)},
                {"mean_window", cfg.mean_window},
                {"band", cfg.band},
                {"band_fraction", cfg.band_fraction},
                {"roundoff_bound", num(table.roundoff_bound)},
                {"passed", ok}});
  c.plot("ratio.svg", {"R(n) / main term", "n", "ratio", false, false, {{"ratio", xs, ratios}}, {{"y = 1", 1.0, 0.0}}});
  c.log << fmt::format("verify-asymptotic: {} ratios, mean {:.6f}, {:.1f}% in band -> {}\n", ratios.size(), mean,
                       100 * fraction, ok ? "pass" : "FAIL");
}

void oracle_diff(Context& c) {
  const auto& cfg = c.cfg;
  const RepresentationProblem prob(cfg.sequences, cfg.limit);
  const std::uint64_t lo = 2 * static_cast<std::uint64_t>(cfg.k);
  std::vector<std::uint64_t> ns;
  for (std::uint64_t n = lo; n <= cfg.limit; ++n) ns.push_back(n);

  const auto fast_u = prob.count_all_upto(Weighting::unweighted);
  const auto slow_u = prob.count_exact_many(ns, Weighting::unweighted, c.opts.threads);
  const auto fast_w = prob.count_all_upto(Weighting::weighted);
  const auto slow_w = prob.count_exact_many(ns, Weighting::weighted, c.opts.threads);

  json mismatches = json::array();
  std::size_t unweighted_bad = 0, weighted_bad = 0;
  double max_rel = 0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const auto n = ns[i];
    if (fast_u.values[n] != slow_u[i]) {
      ++unweighted_bad;
      if (mismatches.size() < 100)
        mismatches.push_back({{"n", n}, {"mode", "unweighted"}, {"fast", fast_u.values[n]}, {"exact", slow_u[i]}});
    }
    const double diff = std::abs(fast_w.values[n] - slow_w[i]);
    const bool bad = slow_w[i] == 0 ? diff > fast_w.roundoff_bound : diff > 1e-6 * slow_w[i];
    if (slow_w[i] != 0) max_rel = std::max(max_rel, diff / slow_w[i]);
    if (bad) {
      ++weighted_bad;
      if (mismatches.size() < 100)
        mismatches.push_back(
            {{"n", n}, {"mode", "weighted"}, {"fast", num(fast_w.values[n])}, {"exact", num(slow_w[i])}});
    }
  }
  c.passed = unweighted_bad == 0 && weighted_bad == 0;
  c.write_json("oracle_diff.json", {{"k", cfg.k},
                                    {"limit", cfg.limit},
                                    {"checked", ns.size()},
                                    {"unweighted_mismatches", unweighted_bad},
                                    {"weighted_mismatches", weighted_bad},
                                    {"max_weighted_relative_difference", num(max_rel)},
                                    {"mismatches", mismatches},
                                    {"passed", c.passed}});
  c.log << fmt::format("oracle-diff: {} values, {} unweighted and {} weighted mismatches -> {}\n", ns.size(),
                       unweighted_bad, weighted_bad, c.passed ? "pass" : "FAIL");
}

void exceptional(Context& c) {
  const auto& cfg = c.cfg;
  require_k(cfg, 2, "exceptional-scan");
  const RepresentationProblem prob(cfg.sequences, cfg.limit);
  const auto exceptions = prob.exceptional_scan();
  auto checkpoints = cfg.checkpoints;
  if (checkpoints.empty()) checkpoints.push_back(cfg.limit);
  std::sort(checkpoints.begin(), checkpoints.end());
  json rows = json::array();
  std::vector<double> xs, dens;
  bool monotone = true;
  double prev = std::numeric_limits<double>::infinity();
  for (auto x : checkpoints) {
    if (x > cfg.limit) throw ValidationError("checkpoint " + std::to_string(x) + " exceeds limit");
    const auto count = static_cast<std::size_t>(std::upper_bound(exceptions.begin(), exceptions.end(), x) -
                                                exceptions.begin());
    const double density = static_cast<double>(count) / static_cast<double>(x);
    monotone = monotone && density <= prev;
    prev = density;
    rows.push_back({{"x", x}, {"count", count}, {"density", num(density)}});
    xs.push_back(static_cast<double>(x));
    dens.push_back(density);
  }
  c.passed = monotone;
  c.write_json("exceptional_scan.json", {{"limit", cfg.limit},
                                         {"exceptions", exceptions},
                                         {"count", exceptions.size()},
                                         {"reverified", true},
                                         {"checkpoints", rows},
                                         {"density_non_increasing", monotone},
                                         {"passed", monotone}});
  c.plot("exception_density.svg",
         {"Exceptions per unit length", "x", "count / x", false, false, {{"density", xs, dens, true}}, {}});
  c.log << fmt::format("exceptional-scan: {} exceptions up to {} -> {}\n", exceptions.size(), cfg.limit,
                       monotone ? "pass" : "FAIL");
}

void fourier_report(Context& c) {
  const auto& cfg = c.cfg;
  const double delta = cfg.delta.value_or(0.05);
  auto ns = cfg.n_values;
  if (ns.empty()) ns = {100, 500, 1000};
  json rows = json::array();
  bool ok = true;
  for (auto n : ns) {
    const auto rep = fourier_expansion_check(n, cfg.sequences, delta, cfg.M, c.opts.threads);
    ok = ok && rep.within_bound();
    rows.push_back({{"n", n},
                    {"R_plus", num(rep.r_plus)},
                    {"truncated_sum_re", num(rep.truncated_sum.real())},
                    {"truncated_sum_im", num(rep.truncated_sum.imag())},
                    {"residual", num(rep.residual)},
                    {"tail_bound", num(rep.tail_bound)},
                    {"R_n_0", num(rep.r0)},
                    {"within_bound", rep.within_bound()}});
  }

  // Decay of |g^(m)| per sequence, with the reference slopes -r.
  json decay = json::array();
  const std::int64_t m_max = std::max<std::int64_t>(cfg.M, static_cast<std::int64_t>(std::ceil(20.0 / delta)));
  PlotSpec decay_plot{"Fourier coefficient decay", "|m|", "|g^(m)|", true, true, {}, {}};
  for (std::size_t i = 0; i < cfg.sequences.size(); ++i) {
    const SmoothedIndicator g(cfg.sequences[i].gamma_value(), delta, Side::plus);
    g.precompute(m_max);
    const auto C = decay_constants(g, 4, m_max);
    Series s{fmt::format("gamma_{}", i + 1), {}, {}, true};
    for (std::int64_t m = 1; m <= m_max; ++m) {
      s.x.push_back(static_cast<double>(m));
      s.y.push_back(std::abs(g.fourier_coeff(m)));
    }
    decay_plot.series.push_back(std::move(s));
    json cr = json::array();
    for (double v : C) cr.push_back(num(v));
    decay.push_back({{"gamma", num(cfg.sequences[i].gamma_value())}, {"C_r", cr}});
    if (i == 0)
      for (int r = 1; r <= 4; ++r)
        decay_plot.references.push_back({fmt::format("slope -{}", r), C[r - 1] * std::pow(delta, 1.0 - r), -double(r)});
  }
  c.passed = ok;
  c.write_json("fourier_report.json",
               {{"delta", num(delta)}, {"M", cfg.M}, {"checks", rows}, {"decay", decay}, {"passed", ok}});
  c.plot("fourier_decay.svg", decay_plot);
  c.log << fmt::format("fourier-report: {} values of n -> {}\n", ns.size(), ok ? "pass" : "FAIL");
}

void dioph_type(Context& c) {
  const auto& cfg = c.cfg;
  std::vector<RealExpr> thetas;
  if (cfg.thetas.empty()) {
    for (std::size_t i = 0; i < std::min<std::size_t>(cfg.sequences.size(), 2); ++i)
      thetas.push_back(cfg.sequences[i].gamma());
  } else {
    for (const auto& t : cfg.thetas) thetas.push_back(parse_real_expr(t));
  }
  const auto mode = cfg.type_mode == "power" ? TypeMode::power : TypeMode::subexponential;
  const std::int64_t q_max = cfg.q_max > 0 ? cfg.q_max : thetas.size() == 1 ? 10'000 : 499;
  const auto rep = type_scan(thetas, q_max, mode, c.opts.threads);
  {
    auto out = c.open("type_scan.csv");
    write_type_scan_csv(out, rep);
  }
  json cfs = json::array();
  for (const auto& t : thetas) {
    const auto cf = continued_fraction(t, BigInt(q_max));
    json conv = json::array();
    for (const auto& q : cf.convergents) conv.push_back({q.p.str(), q.q.str()});
    json pq = json::array();
    for (const auto& a : cf.partial_quotients) pq.push_back(a.str());
    cfs.push_back({{"theta", t.to_string()}, {"partial_quotients", pq}, {"convergents", conv}});
  }
  json running = json::array();
  std::vector<double> xs, ys;
  for (const auto& [m, e] : rep.running_max) {
    running.push_back({m, num(e)});
    xs.push_back(static_cast<double>(m));
    ys.push_back(e);
  }
  c.write_json("dioph_type.json", {{"q_max", q_max},
                                   {"mode", cfg.type_mode},
                                   {"max_exponent", num(rep.max_exponent)},
                                   {"tail_max_exponent", num(rep.tail_max_exponent)},
                                   {"running_max", running},
                                   {"continued_fractions", cfs}});
  c.plot("type_exponent.svg",
         {"Running maximum of the type exponent", "|m|", "exponent", true, false, {{"running max", xs, ys, true}}, {}});
  c.log << fmt::format("dioph-type: max exponent {:.4f}, tail {:.4f}\n", rep.max_exponent, rep.tail_max_exponent);
}

void circle_scan(Context& c) {
  const auto& cfg = c.cfg;
  const PrimeExpSum S(cfg.N);
  const auto q_cap = static_cast<std::int64_t>(std::floor(std::sqrt(static_cast<double>(cfg.N))));
  const auto rows = lemma1_scan(S, cfg.grid, q_cap);
  {
    auto out = c.open("lemma1_scan.csv");
    write_lemma1_csv(out, rows);
  }
  double worst_lemma1 = 0;
  std::vector<double> xs, ys;
  for (const auto& r : rows) {
    worst_lemma1 = std::max(worst_lemma1, r.ratio);
    xs.push_back(r.xi);
    ys.push_back(r.abs_s / S.chebyshev_theta());
  }

  const auto minor = minor_arc_scan(S, cfg.sequences, cfg.m_max, cfg.q_lo_exp, cfg.q_hi_exp, cfg.epsilon,
                                    c.opts.threads);
  {
    auto out = c.open("minor_arcs.csv");
    CsvWriter csv(out);
    csv.header({"label", "xi", "a", "q", "theta", "in_range", "ratio"});
    for (const auto& p : minor.points)
      csv.row({p.label, p.xi, p.a, p.q, p.theta, std::int64_t{p.in_range}, p.ratio});
  }

  json arcs = json::array();
  for (const auto& a : farey_arcs(cfg.arcs_q))
    arcs.push_back({{"a", a.a}, {"q", a.q}, {"lo", {a.lo.num, a.lo.den}}, {"hi", {a.hi.num, a.hi.den}}});
  c.write_json("farey_arcs.json", {{"Q", cfg.arcs_q}, {"arcs", arcs}});

  const std::size_t T = std::bit_ceil(static_cast<std::size_t>(cfg.N) + 1);
  const auto pars = parseval_check(cfg.N, T);
  const bool ok = minor.in_range > 0 && minor.max_ratio <= cfg.threshold && std::isfinite(worst_lemma1);
  c.passed = ok;
  c.write_json("circle_scan.json", {{"N", cfg.N},
                                    {"chebyshev_theta", num(S.chebyshev_theta())},
                                    {"lemma1_points", rows.size()},
                                    {"lemma1_max_ratio", num(worst_lemma1)},
                                    {"minor_arc_points", minor.points.size()},
                                    {"minor_arc_in_range", minor.in_range},
                                    {"minor_arc_max_ratio", num(minor.max_ratio)},
                                    {"threshold", num(cfg.threshold)},
                                    {"parseval_T", T},
                                    {"parseval_relative_residual", num(pars.relative_residual)},
                                    {"passed", ok}});
  c.plot("s_trace.svg", {"|S(xi)| / S(0) across the Farey dissection", "xi", "|S| / S(0)", false, false,
                         {{"|S(xi)| / S(0)", xs, ys, true}}, {{"threshold", cfg.threshold, 0.0}}});
  c.log << fmt::format("circle-scan: minor-arc max {:.4f} over {} certified points -> {}\n", minor.max_ratio,
                       minor.in_range, ok ? "pass" : "FAIL");
}

void singular(Context& c) {
  const auto& cfg = c.cfg;
  auto ns = cfg.n_values;
  if (ns.empty())
    for (std::uint64_t n = 2; n <= 40; ++n) ns.push_back(n);
  const SingularSeriesEvaluator evaluator;
  auto out = c.open("singular_series.csv");
  CsvWriter csv(out);
  csv.header({"n", "k", "value", "error_bound", "cutoff"});
  for (auto n : ns) {
    const auto v = evaluator.evaluate(n, cfg.k, cfg.tol);
    csv.row({n, std::int64_t{cfg.k}, v.value, v.error_bound, v.cutoff_prime});
  }
  c.log << fmt::format("singular-series: {} values for k = {}\n", ns.size(), cfg.k);
}

void lemma2(Context& c) {
  const auto& cfg = c.cfg;
  json rows = json::array();
  for (std::size_t i = 0; i < cfg.sequences.size(); ++i) {
    const auto r = lemma2_scan(cfg.sequences[i].alpha(), cfg.X_values, cfg.Y);
    auto out = c.open(fmt::format("lemma2_alpha{}.csv", i + 1));
    write_lemma2_csv(out, r);
    double worst = 0;
    for (const auto& row : r) worst = std::max(worst, row.ratio);
    rows.push_back({{"alpha", cfg.alpha_text[i]}, {"max_ratio", num(worst)}});
  }
  c.write_json("lemma2_scan.json", {{"Y", num(cfg.Y)}, {"X_values", cfg.X_values}, {"scans", rows}});
  c.log << "lemma2-scan: done\n";
}

const std::map<std::string, std::function<void(Context&)>>& commands() {
  static const std::map<std::string, std::function<void(Context&)>> table = {
      {"verify-asymptotic", verify_asymptotic}, {"oracle-diff", oracle_diff},  {"exceptional-scan", exceptional},
      {"fourier-report", fourier_report},       {"dioph-type", dioph_type},    {"circle-scan", circle_scan},
      {"singular-series", singular},            {"lemma2-scan", lemma2},
  };
  return table;
}

std::string read_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : commands()) v.push_back(name);
    return v;
  }();
  return names;
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("{:016x}", h);
}

int run_command(const std::string& name, const ExperimentConfig& cfg, const RunOptions& opts, std::ostream& log) {
  const auto it = commands().find(name);
  if (it == commands().end()) throw ValidationError("unknown command '" + name + "'");
  fs::create_directories(opts.out_dir);
  const auto start = std::chrono::steady_clock::now();
  Context ctx{cfg, opts, log, {}, true};
  it->second(ctx);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const int code = ctx.passed ? kExitOk : kExitCheckFailed;

  json manifest = {
      {"command", name},
      {"config", cfg.source.string()},
      {"config_hash", "fnv1a64:" + fnv1a_hex(cfg.source.empty() ? std::string() : read_bytes(cfg.source))},
      {"versions",
       {{"beatty", BEATTY_VERSION},
        {"boost", BOOST_LIB_VERSION},
        {"fmt", FMT_VERSION},
        {"nlohmann_json", fmt::format("{}.{}.{}", NLOHMANN_JSON_VERSION_MAJOR, NLOHMANN_JSON_VERSION_MINOR,
                                      NLOHMANN_JSON_VERSION_PATCH)},
        {"compiler", __VERSION__}}},
      {"threads", opts.threads},
      {"seed", opts.seed},
      {"limit", cfg.limit},
      {"wall_time_seconds", wall},
      {"outputs", ctx.outputs},
      {"exit_code", code},
  };
  std::ofstream(opts.out_dir / "manifest.json", std::ios::binary) << manifest.dump(2) << "\n";
  return code;
}

}  // namespace beatty::cli
