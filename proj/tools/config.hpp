#pragma once

// Experiment configuration: one `key = value` per line, arrays as
// `[a, b, c]`, `#` starts a comment.

#include "beatty/beatty_sequence.hpp"

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace beatty::cli {

struct ExperimentConfig {
  std::filesystem::path source;
  int k = 0;
  std::vector<std::string> alpha_text;
  std::vector<std::string> beta_text;
  std::vector<BeattySequence> sequences;
  std::uint64_t limit = 200'000;
  double A = 1.0;
  std::optional<double> delta;
  int precision_bits = 4096;
  bool weighted = true;
  std::string output_dir = "out";

  // verify-asymptotic
  std::uint64_t first = 0;
  std::uint64_t stride = 1;
  std::uint64_t samples = 0;
  std::vector<double> mean_window = {0.9, 1.1};
  std::vector<double> band = {0.8, 1.2};
  double band_fraction = 0.9;

  // fourier-report, singular-series
  std::vector<std::uint64_t> n_values;
  std::int64_t M = 200;

  // exceptional-scan
  std::vector<std::uint64_t> checkpoints;

  // dioph-type
  std::vector<std::string> thetas;
  std::int64_t q_max = 0;  // 0: 10^4 for one theta, 499 for two
  std::string type_mode = "power";

  // circle-scan
  std::uint64_t N = 100'000;
  std::int64_t m_max = 20;
  double threshold = 0.2;
  double q_lo_exp = 0.1;
  double q_hi_exp = 0.5;
  double epsilon = 0.2;
  std::int64_t grid = 1000;
  std::int64_t arcs_q = 100;

  // singular-series
  double tol = 1e-6;

  // lemma2-scan
  std::vector<std::uint64_t> X_values = {100, 1000, 10'000, 100'000};
  double Y = 1.0;
};

inline constexpr std::uint64_t kMaxLimit = 50'000'000;

// Syntax and required keys; throws ParseError carrying the line number.
ExperimentConfig parse_config_text(std::istream& in, const std::filesystem::path& source = {});
ExperimentConfig parse_config(const std::filesystem::path& path);

// Invariants: array lengths, irrational alpha > 1, limit budget, delta
// admissible for every gamma. Builds `sequences`. Throws ValidationError.
void validate(ExperimentConfig& cfg);

}  // namespace beatty::cli
