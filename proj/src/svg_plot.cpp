#include "kerrqnd/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "kerrqnd/thresholds.hpp"

namespace kerrqnd {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

struct Axis {
  bool log = false;
  double lo = 0.0;  // in transformed units
  double hi = 1.0;
  double px_lo = 0.0;
  double px_hi = 1.0;

  bool placeable(double v) const { return std::isfinite(v) && (!log || v > 0.0); }
  double transform(double v) const { return log ? std::log10(v) : v; }
  double to_px(double v) const { return px_lo + (transform(v) - lo) / (hi - lo) * (px_hi - px_lo); }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v, bool log) {
  char buf[32];
  if (log) {
    std::snprintf(buf, sizeof buf, "1e%d", static_cast<int>(std::lround(std::log10(v))));
  } else {
    std::snprintf(buf, sizeof buf, "%g", v);
  }
  return buf;
}

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

/// Data range in transformed units, padded so it is never empty.
/// `pad` (in decades) keeps values on a decade boundary off the frame.
void fit(Axis& a, double lo, double hi, double pad) {
  if (!(lo <= hi)) lo = hi = a.log ? 1.0 : 0.0;
  lo = a.transform(lo);
  hi = a.transform(hi);
  if (a.log) {
    lo = std::floor(lo - pad);
    hi = std::ceil(hi + pad);
    if (hi <= lo) hi = lo + 1.0;
  } else if (hi <= lo) {
    lo -= 0.5;
    hi += 0.5;
  }
  a.lo = lo;
  a.hi = hi;
}

std::vector<double> ticks(const Axis& a) {
  std::vector<double> out;
  if (a.log) {
    const int step = std::max(1, static_cast<int>(std::ceil((a.hi - a.lo) / 10.0)));
    for (int e = static_cast<int>(a.lo); e <= static_cast<int>(a.hi); e += step) out.push_back(std::pow(10.0, e));
    return out;
  }
  const double raw = (a.hi - a.lo) / 8.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * mag >= raw) {
      step = m * mag;
      break;
    }
  }
  for (double v = std::ceil(a.lo / step) * step; v <= a.hi + 1e-9 * step; v += step) out.push_back(v);
  return out;
}

const char* dash(const ReferenceLine& r) { return r.dotted ? " stroke-dasharray=\"2 3\"" : ""; }

}  // namespace

void write_svg(std::ostream& out, const PlotSpec& plot) {
  const double left = 80, right = 190, top = 40, bottom = 60;
  Axis xa{plot.log_x, 0, 1, left, plot.width - right};
  Axis ya{plot.log_y, 0, 1, plot.height - bottom, top};

  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = x_lo, y_hi = -x_lo;
  for (const PlotSeries& s : plot.series) {
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!xa.placeable(s.x[i]) || !ya.placeable(s.y[i])) continue;
      x_lo = std::min(x_lo, s.x[i]);
      x_hi = std::max(x_hi, s.x[i]);
      y_lo = std::min(y_lo, s.y[i]);
      y_hi = std::max(y_hi, s.y[i]);
    }
  }
  for (const ReferenceLine& r : plot.references) {
    if (!ya.placeable(r.y)) continue;
    y_lo = std::min(y_lo, r.y);
    y_hi = std::max(y_hi, r.y);
  }
  fit(xa, x_lo, x_hi, 0.0);
  fit(ya, y_lo, y_hi, 0.05);

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << plot.width << "\" height=\"" << plot.height
      << "\" viewBox=\"0 0 " << plot.width << ' ' << plot.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!plot.title.empty()) {
    out << "<text x=\"" << fmt((xa.px_lo + xa.px_hi) / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
        << escape(plot.title) << "</text>\n";
  }

  out << "<g stroke=\"#ddd\" stroke-width=\"1\">\n";
  for (double t : ticks(xa)) {
    const std::string px = fmt(xa.to_px(t));
    out << "<line x1=\"" << px << "\" y1=\"" << fmt(ya.px_hi) << "\" x2=\"" << px << "\" y2=\"" << fmt(ya.px_lo)
        << "\"/>\n";
  }
  for (double t : ticks(ya)) {
    const std::string py = fmt(ya.to_px(t));
    out << "<line x1=\"" << fmt(xa.px_lo) << "\" y1=\"" << py << "\" x2=\"" << fmt(xa.px_hi) << "\" y2=\"" << py
        << "\"/>\n";
  }
  out << "</g>\n";

  out << "<rect x=\"" << fmt(xa.px_lo) << "\" y=\"" << fmt(ya.px_hi) << "\" width=\"" << fmt(xa.px_hi - xa.px_lo)
      << "\" height=\"" << fmt(ya.px_lo - ya.px_hi) << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double t : ticks(xa)) {
    out << "<text x=\"" << fmt(xa.to_px(t)) << "\" y=\"" << fmt(ya.px_lo + 18) << "\" text-anchor=\"middle\">"
        << tick_label(t, xa.log) << "</text>\n";
  }
  for (double t : ticks(ya)) {
    out << "<text x=\"" << fmt(xa.px_lo - 6) << "\" y=\"" << fmt(ya.to_px(t) + 4) << "\" text-anchor=\"end\">"
        << tick_label(t, ya.log) << "</text>\n";
  }
  out << "<text x=\"" << fmt((xa.px_lo + xa.px_hi) / 2) << "\" y=\"" << fmt(plot.height - 16.0)
      << "\" text-anchor=\"middle\">" << escape(plot.x_label) << "</text>\n";
  out << "<text transform=\"translate(18 " << fmt((ya.px_lo + ya.px_hi) / 2)
      << ") rotate(-90)\" text-anchor=\"middle\">" << escape(plot.y_label) << "</text>\n";

  for (const ReferenceLine& r : plot.references) {
    if (!ya.placeable(r.y)) continue;
    const std::string py = fmt(ya.to_px(r.y));
    out << "<line x1=\"" << fmt(xa.px_lo) << "\" y1=\"" << py << "\" x2=\"" << fmt(xa.px_hi) << "\" y2=\"" << py
        << "\" stroke=\"black\"" << dash(r) << "/>\n";
  }

  for (std::size_t k = 0; k < plot.series.size(); ++k) {
    const PlotSeries& s = plot.series[k];
    const char* color = kPalette[k % std::size(kPalette)];
    std::string pts;
    auto flush = [&] {
      if (!pts.empty()) {
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"" << pts << "\"/>\n";
      }
      pts.clear();
    };
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!xa.placeable(s.x[i]) || !ya.placeable(s.y[i])) {
        flush();
        continue;
      }
      if (!pts.empty()) pts += ' ';
      pts += fmt(xa.to_px(s.x[i])) + ',' + fmt(ya.to_px(s.y[i]));
    }
    flush();
  }

  double ly = ya.px_hi + 10;
  const double lx = xa.px_hi + 14;
  for (std::size_t k = 0; k < plot.series.size(); ++k) {
    out << "<line x1=\"" << fmt(lx) << "\" y1=\"" << fmt(ly) << "\" x2=\"" << fmt(lx + 24) << "\" y2=\"" << fmt(ly)
        << "\" stroke=\"" << kPalette[k % std::size(kPalette)] << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << fmt(lx + 30) << "\" y=\"" << fmt(ly + 4) << "\">" << escape(plot.series[k].label)
        << "</text>\n";
    ly += 18;
  }
  for (const ReferenceLine& r : plot.references) {
    out << "<line x1=\"" << fmt(lx) << "\" y1=\"" << fmt(ly) << "\" x2=\"" << fmt(lx + 24) << "\" y2=\"" << fmt(ly)
        << "\" stroke=\"black\"" << dash(r) << "/>\n"
        << "<text x=\"" << fmt(lx + 30) << "\" y=\"" << fmt(ly + 4) << "\">" << escape(r.label) << "</text>\n";
    ly += 18;
  }
  out << "</svg>\n";
}

PlotSpec sweep_plot(const SweepSpec& spec, const SweepResult& result) {
  PlotSpec p;
  p.title = "Delta N_s (" + spec.name + ")";
  p.y_label = "Delta N_s (photons)";
  p.log_y = true;
  if (spec.axis == SweepAxis::probe_photons) {
    p.x_label = "probe photons N_p";
    p.log_x = spec.log;
  } else {
    p.x_label = "parametric amplification (dB)";
    p.log_x = false;
  }
  for (std::size_t k = 0; k < result.labels.size(); ++k) {
    p.series.push_back({result.labels[k], result.axis, result.dns[k]});
  }
  p.references.push_back({"single photon", 1.0});
  char buf[64];
  std::snprintf(buf, sizeof buf, "non-Gaussian, mu=%g", spec.mu_reference);
  p.references.push_back({buf, dns_max(spec.mu_reference), true});
  return p;
}

}  // namespace kerrqnd
