#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "kerrqnd/sweep.hpp"

namespace kerrqnd {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Horizontal black line across the plot.
struct ReferenceLine {
  std::string label;
  double y = 0.0;
  bool dotted = false;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  std::vector<PlotSeries> series;
  std::vector<ReferenceLine> references;
  int width = 720;
  int height = 480;
};

/// Self-contained SVG line plot. Points that cannot be placed (non-finite, or
/// non-positive on a log axis) break the polyline.
void write_svg(std::ostream& out, const PlotSpec& plot);

/// Sweep curves on log-y axes with the single-photon line (Delta N_s = 1) and
/// the non-Gaussianity level dns_max(mu_reference).
PlotSpec sweep_plot(const SweepSpec& spec, const SweepResult& result);

}  // namespace kerrqnd
