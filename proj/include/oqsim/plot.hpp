// plot.hpp - self-contained two-panel SVG rendering of a run.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "oqsim/record.hpp"

namespace oqsim {

namespace detail {

struct AxisRange {
  double lo = 0, hi = 1;
};

inline AxisRange padded_range(const std::vector<double>& v) {
  double lo = 0, hi = 0;
  bool seen = false;
  for (double x : v) {
    if (!std::isfinite(x)) continue;
    if (!seen) {
      lo = hi = x;
      seen = true;
    } else {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
  }
  if (!seen) return {0, 1};
  const double span = hi - lo;
  if (span < 1e-12) {
    const double pad = std::max(0.5, std::abs(hi) * 0.1);  // flat series stay visible
    return {lo - pad, hi + pad};
  }
  return {lo - 0.05 * span, hi + 0.05 * span};
}

inline std::string fmt_coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string fmt_tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

struct PanelGeom {
  double x0, y0, w, h;
};

// Appends one dual-axis panel: series `a` against the left axis, `b` against
// the right one, polylines broken at non-finite samples.
inline void append_panel(std::string& svg, const PanelGeom& g, const std::vector<double>& t,
                         const std::vector<double>& a, const std::vector<double>& b,
                         const std::string& label_a, const std::string& label_b,
                         const std::string& title, const std::string& x_label,
                         bool x_tick_labels) {
  const char* color_a = "#1f77b4";
  const char* color_b = "#d62728";
  const AxisRange rt = padded_range(t);
  const AxisRange ra = padded_range(a);
  const AxisRange rb = padded_range(b);
  const auto sx = [&](double v) { return g.x0 + (v - rt.lo) / (rt.hi - rt.lo) * g.w; };
  const auto sya = [&](double v) { return g.y0 + g.h - (v - ra.lo) / (ra.hi - ra.lo) * g.h; };
  const auto syb = [&](double v) { return g.y0 + g.h - (v - rb.lo) / (rb.hi - rb.lo) * g.h; };

  svg += "<rect x=\"" + fmt_coord(g.x0) + "\" y=\"" + fmt_coord(g.y0) + "\" width=\"" +
         fmt_coord(g.w) + "\" height=\"" + fmt_coord(g.h) +
         "\" fill=\"none\" stroke=\"#888888\" stroke-width=\"1\"/>\n";
  svg += "<text x=\"" + fmt_coord(g.x0) + "\" y=\"" + fmt_coord(g.y0 - 8) +
         "\" font-size=\"13\" fill=\"#222222\">" + title + "</text>\n";

  for (int k = 0; k < 5; ++k) {
    const double f = k / 4.0;
    // left ticks
    const double va = ra.lo + f * (ra.hi - ra.lo);
    const double ya = g.y0 + g.h - f * g.h;
    svg += "<line x1=\"" + fmt_coord(g.x0 - 4) + "\" y1=\"" + fmt_coord(ya) + "\" x2=\"" +
           fmt_coord(g.x0) + "\" y2=\"" + fmt_coord(ya) + "\" stroke=\"#888888\"/>\n";
    svg += "<text x=\"" + fmt_coord(g.x0 - 7) + "\" y=\"" + fmt_coord(ya + 4) +
           "\" font-size=\"11\" text-anchor=\"end\" fill=\"" + color_a + "\">" + fmt_tick(va) +
           "</text>\n";
    // right ticks
    const double vb = rb.lo + f * (rb.hi - rb.lo);
    svg += "<line x1=\"" + fmt_coord(g.x0 + g.w) + "\" y1=\"" + fmt_coord(ya) + "\" x2=\"" +
           fmt_coord(g.x0 + g.w + 4) + "\" y2=\"" + fmt_coord(ya) + "\" stroke=\"#888888\"/>\n";
    svg += "<text x=\"" + fmt_coord(g.x0 + g.w + 7) + "\" y=\"" + fmt_coord(ya + 4) +
           "\" font-size=\"11\" fill=\"" + color_b + "\">" + fmt_tick(vb) + "</text>\n";
    // x ticks
    const double vt = rt.lo + f * (rt.hi - rt.lo);
    const double xt = g.x0 + f * g.w;
    svg += "<line x1=\"" + fmt_coord(xt) + "\" y1=\"" + fmt_coord(g.y0 + g.h) + "\" x2=\"" +
           fmt_coord(xt) + "\" y2=\"" + fmt_coord(g.y0 + g.h + 4) + "\" stroke=\"#888888\"/>\n";
    if (x_tick_labels)
      svg += "<text x=\"" + fmt_coord(xt) + "\" y=\"" + fmt_coord(g.y0 + g.h + 16) +
             "\" font-size=\"11\" text-anchor=\"middle\" fill=\"#222222\">" + fmt_tick(vt) +
             "</text>\n";
  }
  if (x_tick_labels)
    svg += "<text x=\"" + fmt_coord(g.x0 + 0.5 * g.w) + "\" y=\"" +
           fmt_coord(g.y0 + g.h + 32) +
           "\" font-size=\"12\" text-anchor=\"middle\" fill=\"#222222\">" + x_label + "</text>\n";

  const auto polylines = [&](const std::vector<double>& series, const char* color, bool dashed,
                             const auto& sy) {
    std::string pts;
    int count = 0;
    const auto flush = [&]() {
      if (count >= 2)
        svg += std::string("<polyline fill=\"none\" stroke=\"") + color +
               "\" stroke-width=\"1.5\"" + (dashed ? " stroke-dasharray=\"6 3\"" : "") +
               " points=\"" + pts + "\"/>\n";
      pts.clear();
      count = 0;
    };
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (!std::isfinite(t[i]) || !std::isfinite(series[i])) {
        flush();
        continue;
      }
      if (!pts.empty()) pts += " ";
      pts += fmt_coord(sx(t[i])) + "," + fmt_coord(sy(series[i]));
      ++count;
    }
    flush();
  };
  polylines(a, color_a, false, sya);
  polylines(b, color_b, true, syb);

  // legend, top-right corner of the panel
  const double lx = g.x0 + g.w - 150;
  const double ly = g.y0 + 14;
  svg += "<line x1=\"" + fmt_coord(lx) + "\" y1=\"" + fmt_coord(ly) + "\" x2=\"" +
         fmt_coord(lx + 22) + "\" y2=\"" + fmt_coord(ly) + "\" stroke=\"" + color_a +
         "\" stroke-width=\"1.5\"/>\n";
  svg += "<text x=\"" + fmt_coord(lx + 27) + "\" y=\"" + fmt_coord(ly + 4) +
         "\" font-size=\"11\" fill=\"#222222\">" + label_a + "</text>\n";
  svg += "<line x1=\"" + fmt_coord(lx) + "\" y1=\"" + fmt_coord(ly + 15) + "\" x2=\"" +
         fmt_coord(lx + 22) + "\" y2=\"" + fmt_coord(ly + 15) + "\" stroke=\"" + color_b +
         "\" stroke-width=\"1.5\" stroke-dasharray=\"6 3\"/>\n";
  svg += "<text x=\"" + fmt_coord(lx + 27) + "\" y=\"" + fmt_coord(ly + 19) +
         "\" font-size=\"11\" fill=\"#222222\">" + label_b + "</text>\n";
}

}  // namespace detail

/// Renders the run as a standalone SVG: panel (a) nonclassical volume with
/// entropy, panel (b) entropy production with ergotropy.
inline std::string svg_text(const RunOutput& out) {
  std::vector<double> t, delta, entropy, sigma, ergotropy;
  for (const auto& r : out.records) {
    t.push_back(r.abscissa);
    delta.push_back(r.delta);
    entropy.push_back(r.entropy);
    sigma.push_back(r.sigma);
    ergotropy.push_back(r.ergotropy);
  }
  std::string model = "run";
  std::string x_label = "t";
  for (const auto& [k, v] : out.metadata) {
    if (k == "model") model = v;
    if (k == "abscissa_label") x_label = v;
  }

  const double width = 760, height = 586;
  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::fmt_coord(width) +
         "\" height=\"" + detail::fmt_coord(height) + "\" viewBox=\"0 0 " +
         detail::fmt_coord(width) + " " + detail::fmt_coord(height) +
         "\" font-family=\"Helvetica, Arial, sans-serif\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + detail::fmt_coord(width) + "\" height=\"" +
         detail::fmt_coord(height) + "\" fill=\"#ffffff\"/>\n";
  svg += "<text x=\"70\" y=\"20\" font-size=\"13\" fill=\"#222222\">model: " + model +
         "</text>\n";

  detail::append_panel(svg, {70, 48, 620, 200}, t, delta, entropy, "nonclassical volume",
                       "entropy", "(a) nonclassical volume and entropy", x_label, false);
  detail::append_panel(svg, {70, 318, 620, 200}, t, sigma, ergotropy, "entropy production",
                       "ergotropy", "(b) entropy production and ergotropy", x_label, true);
  svg += "</svg>\n";
  return svg;
}

inline void write_plot(const RunOutput& out, const std::string& path) {
  atomic_write_file(path, svg_text(out));
}

}  // namespace oqsim
