#include "hysim/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>

namespace hysim {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 62.0;
constexpr double kRight = 18.0;
constexpr double kTop = 32.0;
constexpr double kBottom = 46.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v, const char* spec = "%.6g") {
  char buf[48];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

}  // namespace

void render_svg(const std::filesystem::path& path, const std::string& title,
                const std::string& x_label, const std::string& y_label,
                const std::vector<PlotSeries>& series, bool log_x, bool log_y) {
  constexpr double kLogFloor = 1e-16;
  auto tx = [&](double v) { return log_x ? std::log10(std::max(std::abs(v), kLogFloor)) : v; };
  auto ty = [&](double v) { return log_y ? std::log10(std::max(std::abs(v), kLogFloor)) : v; };

  double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
  double y_min = x_min, y_max = -x_min;
  bool any = false;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.xy) {
      const double xv = tx(x), yv = ty(y);
      if (!std::isfinite(xv) || !std::isfinite(yv)) continue;
      any = true;
      x_min = std::min(x_min, xv);
      x_max = std::max(x_max, xv);
      y_min = std::min(y_min, yv);
      y_max = std::max(y_max, yv);
    }
  }
  if (!any) {
    x_min = 0.0;
    x_max = 1.0;
    y_min = 0.0;
    y_max = 1.0;
  }
  if (x_max == x_min) {
    x_min -= 0.5;
    x_max += 0.5;
  }
  if (y_max == y_min) {
    y_min -= 0.5;
    y_max += 0.5;
  }

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double v) { return kLeft + (v - x_min) / (x_max - x_min) * pw; };
  auto py = [&](double v) { return kTop + (y_max - v) / (y_max - y_min) * ph; };

  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string());

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
     << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
     << "\">\n";
  os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw
     << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"black\"/>\n";
  os << "<text x=\"" << kWidth / 2 << "\" y=\"18\" text-anchor=\"middle\" "
        "font-family=\"sans-serif\" font-size=\"13\">" << title << "</text>\n";
  os << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 8
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
     << x_label << "</text>\n";
  os << "<text x=\"14\" y=\"" << kTop + ph / 2
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
        "transform=\"rotate(-90 14 " << kTop + ph / 2 << ")\">" << y_label
     << "</text>\n";

  const int kTicks = 4;
  for (int i = 0; i <= kTicks; ++i) {
    const double fx = x_min + (x_max - x_min) * i / kTicks;
    const double gx = px(fx);
    os << "<line x1=\"" << gx << "\" y1=\"" << kTop + ph << "\" x2=\"" << gx
       << "\" y2=\"" << kTop + ph + 5 << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << gx << "\" y=\"" << kTop + ph + 18
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">"
       << fmt(fx, "%.4g") << "</text>\n";

    const double fy = y_min + (y_max - y_min) * i / kTicks;
    const double gy = py(fy);
    os << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << gy << "\" x2=\"" << kLeft
       << "\" y2=\"" << gy << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << kLeft - 8 << "\" y=\"" << gy + 3
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">"
       << fmt(fy, "%.4g") << "</text>\n";
  }

  int color = 0;
  double legend_y = kTop + 14.0;
  for (const auto& s : series) {
    std::string pts;
    for (const auto& [x, y] : s.xy) {
      const double xv = tx(x), yv = ty(y);
      if (!std::isfinite(xv) || !std::isfinite(yv)) continue;
      pts += fmt(px(xv), "%.2f");
      pts += ',';
      pts += fmt(py(yv), "%.2f");
      pts += ' ';
    }
    if (pts.empty()) continue;
    const char* stroke = kPalette[color % (sizeof(kPalette) / sizeof(kPalette[0]))];
    os << "<polyline fill=\"none\" stroke=\"" << stroke
       << "\" stroke-width=\"1.2\" points=\"" << pts << "\"/>\n";
    if (!s.label.empty()) {
      os << "<text x=\"" << kLeft + pw - 6 << "\" y=\"" << legend_y
         << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" fill=\""
         << stroke << "\">" << s.label << "</text>\n";
      legend_y += 14.0;
    }
    ++color;
  }
  os << "</svg>\n";
}

void plot_trace(const Trace& trace, PlotKind kind, const std::filesystem::path& path) {
  PlotSeries s;
  std::string title, xl, yl;
  bool log_y = false;
  switch (kind) {
    case PlotKind::error_vs_t:
      title = "control error";
      xl = "t, s";
      yl = "e";
      s.xy.reserve(trace.size());
      for (std::size_t i = 0; i < trace.size(); ++i) s.xy.emplace_back(trace.t[i], trace.e[i]);
      break;
    case PlotKind::log_error_vs_t:
      title = "control error, log scale";
      xl = "t, s";
      yl = "log10 |e|";
      log_y = true;
      s.xy.reserve(trace.size());
      for (std::size_t i = 0; i < trace.size(); ++i) s.xy.emplace_back(trace.t[i], trace.e[i]);
      break;
    case PlotKind::loop_w_vs_u:
      title = "hysteresis loop";
      xl = "u";
      yl = "w = H(u)";
      s.xy.reserve(trace.size());
      for (std::size_t i = 0; i < trace.size(); ++i) s.xy.emplace_back(trace.u[i], trace.w[i]);
      break;
    case PlotKind::sweep_loglog:
      throw std::invalid_argument("sweep_loglog needs a sweep table, not a trace");
  }
  render_svg(path, title, xl, yl, {std::move(s)}, false, log_y);
}

void plot_sweep(const SweepTable& table, const std::filesystem::path& path) {
  std::map<double, PlotSeries> by_gain;
  for (const auto& row : table.rows) {
    auto& s = by_gain[row.K];
    if (s.label.empty()) s.label = "K=" + fmt(row.K, "%.6g");
    s.xy.emplace_back(2.0 * std::numbers::pi * row.omega, row.max_abs_e);
  }
  std::vector<PlotSeries> series;
  series.reserve(by_gain.size());
  for (auto& [k, s] : by_gain) series.push_back(std::move(s));
  render_svg(path, "steady-state max |e| vs frequency", "frequency 2*pi*omega, Hz (log10)",
             "max |e| (log10)", series, true, true);
}

}  // namespace hysim
