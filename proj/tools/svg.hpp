#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace beatty::cli {

struct Series {
  std::string label;
  std::vector<double> x, y;
  bool line = false;  // polyline instead of scatter
};

struct ReferenceLine {
  std::string label;
  // y = scale * x^slope; slope 0 gives a horizontal line.
  double scale = 1.0;
  double slope = 0.0;
};

struct PlotSpec {
  std::string title, x_label, y_label;
  bool log_x = false, log_y = false;
  std::vector<Series> series;
  std::vector<ReferenceLine> references;
};

// Self-contained SVG document.
std::string render_svg(const PlotSpec& plot);

// Writes the plot unless every series is empty (or has no plottable point on
// the chosen axes), in which case a warning goes to `warn` and false is
// returned.
bool emit_plot(const std::filesystem::path& path, const PlotSpec& plot, std::ostream& warn);

}  // namespace beatty::cli
