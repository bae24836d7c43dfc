#include "beatty/csv.hpp"

#include <fmt/format.h>

#include <cmath>

namespace beatty {

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";  // folds -0
  return fmt::format("{:.12g}", v);
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void CsvWriter::header(const std::vector<std::string>& names) {
  for (std::size_t i = 0; i < names.size(); ++i) out_ << (i ? "," : "") << csv_escape(names[i]);
  out_ << "\r\n";
}

void CsvWriter::row(const std::vector<CsvField>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ << ',';
    std::visit(
        [this](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, std::string>)
            out_ << csv_escape(v);
          else if constexpr (std::is_same_v<T, double>)
            out_ << format_real(v);
          else
            out_ << v;
        },
        fields[i]);
  }
  out_ << "\r\n";
}

}  // namespace beatty
