#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace beatty {

// Floating values are written with 12 significant digits so reruns produce
// identical bytes.
std::string format_real(double v);

// RFC 4180 quoting: fields containing a comma, quote, CR or LF are quoted,
// with embedded quotes doubled.
std::string csv_escape(std::string_view field);

using CsvField = std::variant<std::string, std::int64_t, std::uint64_t, double>;

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}
  void header(const std::vector<std::string>& names);
  void row(const std::vector<CsvField>& fields);

 private:
  std::ostream& out_;
};

}  // namespace beatty
