#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "hysim/analysis.hpp"
#include "hysim/simulator.hpp"

namespace hysim {

enum class PlotKind { error_vs_t, log_error_vs_t, sweep_loglog, loop_w_vs_u };

/// One labeled polyline.
struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> xy;
};

/// Deterministic static SVG: fixed size, axes, labels, no timestamps, so
/// outputs are diffable. log axes plot log10 of the values.
void render_svg(const std::filesystem::path& path, const std::string& title,
                const std::string& x_label, const std::string& y_label,
                const std::vector<PlotSeries>& series, bool log_x = false,
                bool log_y = false);

/// Trace plots (error_vs_t, log_error_vs_t, loop_w_vs_u).
void plot_trace(const Trace& trace, PlotKind kind, const std::filesystem::path& path);

/// Sweep plot (sweep_loglog): one polyline per gain K over the 2*pi*omega
/// frequency axis.
void plot_sweep(const SweepTable& table, const std::filesystem::path& path);

}  // namespace hysim
