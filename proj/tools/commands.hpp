#pragma once

#include "config.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace beatty::cli {

struct RunOptions {
  std::filesystem::path out_dir;
  unsigned threads = 1;
  std::uint64_t seed = 0;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitCheckFailed = 2;

const std::vector<std::string>& command_names();

// Runs one command, writing its reports and manifest.json under
// opts.out_dir. Returns kExitOk or kExitCheckFailed; operational problems
// surface as exceptions.
int run_command(const std::string& name, const ExperimentConfig& cfg, const RunOptions& opts, std::ostream& log);

// 64-bit FNV-1a of the bytes, as 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace beatty::cli
