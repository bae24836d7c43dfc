#include "svg.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

namespace beatty::cli {

namespace {

constexpr double kWidth = 720, kHeight = 460;
constexpr double kLeft = 80, kRight = 170, kTop = 40, kBottom = 60;
const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Axis {
  bool log = false;
  double lo = 0, hi = 1;
  double px_lo = 0, px_hi = 1;

  bool usable(double v) const { return std::isfinite(v) && (!log || v > 0); }
  double t(double v) const { return log ? std::log10(v) : v; }
  double map(double v) const { return px_lo + (t(v) - lo) / (hi - lo) * (px_hi - px_lo); }
};

void fit(Axis& a, double mn, double mx) {
  if (a.log) {
    mn = std::log10(mn);
    mx = std::log10(mx);
  }
  if (mn == mx) {
    mn -= 0.5;
    mx += 0.5;
  }
  const double pad = 0.04 * (mx - mn);
  a.lo = mn - pad;
  a.hi = mx + pad;
}

std::string tick_label(double t, bool log) {
  if (log) return fmt::format("1e{}", static_cast<int>(std::round(t)));
  return fmt::format("{:.4g}", t);
}

}  // namespace

std::string render_svg(const PlotSpec& plot) {
  Axis ax{plot.log_x}, ay{plot.log_y};
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  for (const auto& s : plot.series)
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!ax.usable(s.x[i]) || !ay.usable(s.y[i])) continue;
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  for (const auto& r : plot.references)
    if (r.slope == 0 && ay.usable(r.scale)) {
      ymin = std::min(ymin, r.scale);
      ymax = std::max(ymax, r.scale);
    }
  fit(ax, xmin, xmax);
  fit(ay, ymin, ymax);
  ax.px_lo = kLeft;
  ax.px_hi = kWidth - kRight;
  ay.px_lo = kHeight - kBottom;
  ay.px_hi = kTop;

  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\" "
      "font-family=\"sans-serif\" font-size=\"12\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
      kWidth, kHeight);
  out += fmt::format("<text x=\"{:.1f}\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">{}</text>\n",
                     (kLeft + kWidth - kRight) / 2, escape(plot.title));
  out += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n", kLeft,
                     kTop, kWidth - kLeft - kRight, kHeight - kTop - kBottom);

  // Ticks: integer decades on log axes, 5 even steps otherwise.
  auto ticks = [](const Axis& a) {
    std::vector<double> t;
    if (a.log) {
      for (double d = std::ceil(a.lo); d <= a.hi && t.size() < 12; d += 1) t.push_back(d);
    } else {
      for (int i = 0; i <= 5; ++i) t.push_back(a.lo + (a.hi - a.lo) * i / 5);
    }
    return t;
  };
  for (double t : ticks(ax)) {
    const double px = kLeft + (t - ax.lo) / (ax.hi - ax.lo) * (kWidth - kLeft - kRight);
    out += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1}\" x2=\"{0:.2f}\" y2=\"{2}\" stroke=\"black\"/>\n", px,
                       kHeight - kBottom, kHeight - kBottom + 5);
    out += fmt::format("<text x=\"{:.2f}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", px, kHeight - kBottom + 18,
                       tick_label(t, ax.log));
  }
  for (double t : ticks(ay)) {
    const double py = ay.px_lo + (t - ay.lo) / (ay.hi - ay.lo) * (ay.px_hi - ay.px_lo);
    out += fmt::format("<line x1=\"{0}\" y1=\"{1:.2f}\" x2=\"{2}\" y2=\"{1:.2f}\" stroke=\"black\"/>\n", kLeft - 5, py,
                       kLeft);
    out += fmt::format("<text x=\"{}\" y=\"{:.2f}\" text-anchor=\"end\">{}</text>\n", kLeft - 8, py + 4,
                       tick_label(t, ay.log));
  }
  out += fmt::format("<text x=\"{:.1f}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", (kLeft + kWidth - kRight) / 2,
                     kHeight - 15, escape(plot.x_label));
  out += fmt::format("<text x=\"18\" y=\"{0:.1f}\" text-anchor=\"middle\" transform=\"rotate(-90 18 {0:.1f})\">{1}</text>\n",
                     (kTop + kHeight - kBottom) / 2, escape(plot.y_label));

  out += fmt::format("<clipPath id=\"plot\"><rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\"/></clipPath>\n", kLeft,
                     kTop, kWidth - kLeft - kRight, kHeight - kTop - kBottom);
  double legend_y = kTop + 10;
  auto legend = [&](const std::string& label, const std::string& color, bool dashed) {
    out += fmt::format("<line x1=\"{0}\" y1=\"{1:.1f}\" x2=\"{2}\" y2=\"{1:.1f}\" stroke=\"{3}\"{4}/>\n",
                       kWidth - kRight + 10, legend_y, kWidth - kRight + 30, color,
                       dashed ? " stroke-dasharray=\"4 3\"" : "");
    out += fmt::format("<text x=\"{}\" y=\"{:.1f}\">{}</text>\n", kWidth - kRight + 35, legend_y + 4, escape(label));
    legend_y += 18;
  };

  for (const auto& r : plot.references) {
    // Sample the reference curve across the visible x range.
    std::string pts;
    for (int i = 0; i <= 64; ++i) {
      const double t = ax.lo + (ax.hi - ax.lo) * i / 64;
      const double x = ax.log ? std::pow(10.0, t) : t;
      const double y = r.slope == 0 ? r.scale : r.scale * std::pow(x, r.slope);
      if (!ay.usable(y)) continue;
      pts += fmt::format("{:.2f},{:.2f} ", ax.map(x), ay.map(y));
    }
    out += fmt::format(
        "<polyline clip-path=\"url(#plot)\" points=\"{}\" fill=\"none\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n",
        pts);
    legend(r.label, "gray", true);
  }

  std::size_t color = 0;
  for (const auto& s : plot.series) {
    const char* c = kColors[color++ % std::size(kColors)];
    std::string pts;
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!ax.usable(s.x[i]) || !ay.usable(s.y[i])) continue;
      if (s.line)
        pts += fmt::format("{:.2f},{:.2f} ", ax.map(s.x[i]), ay.map(s.y[i]));
      else
        out += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"2\" fill=\"{}\"/>\n", ax.map(s.x[i]),
                           ay.map(s.y[i]), c);
    }
    if (s.line) out += fmt::format("<polyline points=\"{}\" fill=\"none\" stroke=\"{}\"/>\n", pts, c);
    legend(s.label, c, false);
  }
  out += "</svg>\n";
  return out;
}

bool emit_plot(const std::filesystem::path& path, const PlotSpec& plot, std::ostream& warn) {
  const Axis ax{plot.log_x}, ay{plot.log_y};
  bool any = false;
  for (const auto& s : plot.series)
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()) && !any; ++i)
      any = ax.usable(s.x[i]) && ay.usable(s.y[i]);
  if (!any) {
    warn << "warning: plot " << path.filename().string() << " has no data; skipped\n";
    return false;
  }
  std::ofstream out(path, std::ios::binary);
  out << render_svg(plot);
  return true;
}

}  // namespace beatty::cli
