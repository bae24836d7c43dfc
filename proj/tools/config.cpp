#include "config.hpp"

#include "beatty/errors.hpp"
#include "beatty/real_expr.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>

namespace beatty::cli {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string unquote(std::string s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
  return s;
}

struct Value {
  bool is_array = false;
  std::vector<std::string> items;
  int line = 0;
};

Value parse_value(const std::string& text, int line) {
  Value v;
  v.line = line;
  if (text.empty()) throw ParseError("empty value", line);
  if (text.front() != '[') {
    v.items.push_back(unquote(text));
    return v;
  }
  if (text.back() != ']') throw ParseError("unterminated array", line);
  v.is_array = true;
  const std::string body = text.substr(1, text.size() - 2);
  if (trim(body).empty()) return v;
  int depth = 0;
  std::string cur;
  for (char c : body) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth < 0) throw ParseError("unbalanced parentheses in array", line);
    if (c == ',' && depth == 0) {
      if (trim(cur).empty()) throw ParseError("empty array element", line);
      v.items.push_back(unquote(trim(cur)));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (depth != 0) throw ParseError("unbalanced parentheses in array", line);
  if (trim(cur).empty()) throw ParseError("empty array element", line);
  v.items.push_back(unquote(trim(cur)));
  return v;
}

double to_double(const std::string& s, const std::string& key, int line) {
  double v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v))
    throw ParseError("field '" + key + "': expected a number, got '" + s + "'", line);
  return v;
}

std::int64_t to_int(const std::string& s, const std::string& key, int line) {
  std::int64_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec == std::errc() && p == s.data() + s.size()) return v;
  // Accept 1e5 style literals when they are integral.
  const double d = to_double(s, key, line);
  if (d != std::floor(d) || std::abs(d) > 9e18)
    throw ParseError("field '" + key + "': expected an integer, got '" + s + "'", line);
  return static_cast<std::int64_t>(d);
}

std::uint64_t to_uint(const std::string& s, const std::string& key, int line) {
  const auto v = to_int(s, key, line);
  if (v < 0) throw ParseError("field '" + key + "': expected a nonnegative integer", line);
  return static_cast<std::uint64_t>(v);
}

bool to_bool(const std::string& s, const std::string& key, int line) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw ParseError("field '" + key + "': expected true or false", line);
}

const std::string& scalar(const Value& v, const std::string& key) {
  if (v.is_array || v.items.size() != 1) throw ParseError("field '" + key + "': expected a scalar", v.line);
  return v.items.front();
}

const std::vector<std::string>& array(const Value& v, const std::string& key) {
  if (!v.is_array) throw ParseError("field '" + key + "': expected an array", v.line);
  return v.items;
}

template <class T, class F>
std::vector<T> map_items(const Value& v, const std::string& key, F f) {
  std::vector<T> out;
  for (const auto& s : array(v, key)) out.push_back(f(s, key, v.line));
  return out;
}

using Setter = std::function<void(ExperimentConfig&, const Value&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"k", [](auto& c, auto& v, auto& k) { c.k = static_cast<int>(to_int(scalar(v, k), k, v.line)); }},
      {"alpha", [](auto& c, auto& v, auto& k) { c.alpha_text = array(v, k); }},
      {"beta", [](auto& c, auto& v, auto& k) { c.beta_text = array(v, k); }},
      {"limit", [](auto& c, auto& v, auto& k) { c.limit = to_uint(scalar(v, k), k, v.line); }},
      {"A", [](auto& c, auto& v, auto& k) { c.A = to_double(scalar(v, k), k, v.line); }},
      {"delta", [](auto& c, auto& v, auto& k) { c.delta = to_double(scalar(v, k), k, v.line); }},
      {"precision_bits",
       [](auto& c, auto& v, auto& k) { c.precision_bits = static_cast<int>(to_int(scalar(v, k), k, v.line)); }},
      {"weighted", [](auto& c, auto& v, auto& k) { c.weighted = to_bool(scalar(v, k), k, v.line); }},
      {"output_dir", [](auto& c, auto& v, auto& k) { c.output_dir = scalar(v, k); }},
      {"first", [](auto& c, auto& v, auto& k) { c.first = to_uint(scalar(v, k), k, v.line); }},
      {"stride", [](auto& c, auto& v, auto& k) { c.stride = to_uint(scalar(v, k), k, v.line); }},
      {"samples", [](auto& c, auto& v, auto& k) { c.samples = to_uint(scalar(v, k), k, v.line); }},
      {"mean_window", [](auto& c, auto& v, auto& k) { c.mean_window = map_items<double>(v, k, to_double); }},
      {"band", [](auto& c, auto& v, auto& k) { c.band = map_items<double>(v, k, to_double); }},
      {"band_fraction", [](auto& c, auto& v, auto& k) { c.band_fraction = to_double(scalar(v, k), k, v.line); }},
      {"n_values", [](auto& c, auto& v, auto& k) { c.n_values = map_items<std::uint64_t>(v, k, to_uint); }},
      {"M", [](auto& c, auto& v, auto& k) { c.M = to_int(scalar(v, k), k, v.line); }},
      {"checkpoints", [](auto& c, auto& v, auto& k) { c.checkpoints = map_items<std::uint64_t>(v, k, to_uint); }},
      {"thetas", [](auto& c, auto& v, auto& k) { c.thetas = array(v, k); }},
      {"q_max", [](auto& c, auto& v, auto& k) { c.q_max = to_int(scalar(v, k), k, v.line); }},
      {"type_mode", [](auto& c, auto& v, auto& k) { c.type_mode = scalar(v, k); }},
      {"N", [](auto& c, auto& v, auto& k) { c.N = to_uint(scalar(v, k), k, v.line); }},
      {"m_max", [](auto& c, auto& v, auto& k) { c.m_max = to_int(scalar(v, k), k, v.line); }},
      {"threshold", [](auto& c, auto& v, auto& k) { c.threshold = to_double(scalar(v, k), k, v.line); }},
      {"q_lo_exp", [](auto& c, auto& v, auto& k) { c.q_lo_exp = to_double(scalar(v, k), k, v.line); }},
      {"q_hi_exp", [](auto& c, auto& v, auto& k) { c.q_hi_exp = to_double(scalar(v, k), k, v.line); }},
      {"epsilon", [](auto& c, auto& v, auto& k) { c.epsilon = to_double(scalar(v, k), k, v.line); }},
      {"grid", [](auto& c, auto& v, auto& k) { c.grid = to_int(scalar(v, k), k, v.line); }},
      {"arcs_q", [](auto& c, auto& v, auto& k) { c.arcs_q = to_int(scalar(v, k), k, v.line); }},
      {"tol", [](auto& c, auto& v, auto& k) { c.tol = to_double(scalar(v, k), k, v.line); }},
      {"X_values", [](auto& c, auto& v, auto& k) { c.X_values = map_items<std::uint64_t>(v, k, to_uint); }},
      {"Y", [](auto& c, auto& v, auto& k) { c.Y = to_double(scalar(v, k), k, v.line); }},
  };
  return table;
}

}  // namespace

ExperimentConfig parse_config_text(std::istream& in, const std::filesystem::path& source) {
  ExperimentConfig cfg;
  cfg.source = source;
  std::set<std::string> seen;
  std::map<std::string, int> lines;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    // '#' outside quotes starts a comment.
    bool quoted = false;
    std::size_t cut = raw.size();
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] == '"') quoted = !quoted;
      if (raw[i] == '#' && !quoted) {
        cut = i;
        break;
      }
    }
    const std::string text = trim(std::string_view(raw).substr(0, cut));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", line);
    const std::string key = trim(std::string_view(text).substr(0, eq));
    const std::string value = trim(std::string_view(text).substr(eq + 1));
    if (key.empty()) throw ParseError("missing key before '='", line);
    const auto it = setters().find(key);
    if (it == setters().end()) throw ParseError("unknown field '" + key + "'", line);
    if (!seen.insert(key).second) throw ParseError("field '" + key + "' given twice", line);
    lines[key] = line;
    it->second(cfg, parse_value(value, line), key);
  }
  for (const char* required : {"k", "alpha", "beta"})
    if (!seen.contains(required)) throw ParseError(std::string("missing required field '") + required + "'");
  // RealExpr grammar is checked here so errors point at the right line.
  for (const auto* field : {&cfg.alpha_text, &cfg.beta_text, &cfg.thetas}) {
    const std::string key = field == &cfg.alpha_text ? "alpha" : field == &cfg.beta_text ? "beta" : "thetas";
    for (const auto& t : *field) {
      try {
        (void)parse_real_expr(t);
      } catch (const ParseError& e) {
        throw ParseError("field '" + key + "': " + e.what(), lines[key]);
      }
    }
  }
  return cfg;
}

ExperimentConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file " + path.string());
  return parse_config_text(in, path);
}

void validate(ExperimentConfig& cfg) {
  if (cfg.k < 1 || cfg.k > 8) throw ValidationError("k must be between 1 and 8");
  if (cfg.alpha_text.size() != static_cast<std::size_t>(cfg.k))
    throw ValidationError("alpha has " + std::to_string(cfg.alpha_text.size()) + " entries, expected k = " +
                          std::to_string(cfg.k));
  if (cfg.beta_text.size() != static_cast<std::size_t>(cfg.k))
    throw ValidationError("beta has " + std::to_string(cfg.beta_text.size()) + " entries, expected k = " +
                          std::to_string(cfg.k));
  if (cfg.limit < 4 || cfg.limit > kMaxLimit)
    throw ValidationError("limit must lie in [4, " + std::to_string(kMaxLimit) + "]");
  if (cfg.precision_bits < 64 || cfg.precision_bits > (1 << 20))
    throw ValidationError("precision_bits must lie in [64, 2^20]");
  if (!(cfg.A > 0)) throw ValidationError("A must be positive");
  if (cfg.stride == 0) throw ValidationError("stride must be positive");
  if (cfg.mean_window.size() != 2 || cfg.band.size() != 2)
    throw ValidationError("mean_window and band must have two entries");
  if (cfg.type_mode != "power" && cfg.type_mode != "subexponential")
    throw ValidationError("type_mode must be power or subexponential");
  cfg.sequences.clear();
  PrecisionPolicy policy;
  policy.max_bits = cfg.precision_bits;
  for (int i = 0; i < cfg.k; ++i) {
    try {
      cfg.sequences.emplace_back(parse_real_expr(cfg.alpha_text[i]), parse_real_expr(cfg.beta_text[i]), policy);
    } catch (const ValidationError& e) {
      throw ValidationError("alpha[" + std::to_string(i) + "]: " + e.what());
    }
  }
  if (cfg.delta) {
    for (const auto& s : cfg.sequences) {
      const double g = s.gamma_value();
      if (!(*cfg.delta > 0 && *cfg.delta < std::min(g, 1 - g) / 4))
        throw ValidationError("delta = " + std::to_string(*cfg.delta) + " is not admissible for gamma = " +
                              std::to_string(g));
    }
  }
}

}  // namespace beatty::cli
