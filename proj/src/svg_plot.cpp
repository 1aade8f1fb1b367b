#include "lfc/svg_plot.hpp"

#include "lfc/trace_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace lfc {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string fmt_tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

} // namespace

std::string render_svg(const PlotSpec& spec) {
  const int ml = 70, mr = 20, mt = 30, mb = 45;
  const double pw = spec.width - ml - mr;
  const double ph = spec.height - mt - mb;

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : spec.series) {
    for (double v : s.x) {
      xmin = std::min(xmin, v);
      xmax = std::max(xmax, v);
    }
    for (double v : s.y) {
      ymin = std::min(ymin, v);
      ymax = std::max(ymax, v);
    }
  }
  if (!std::isfinite(xmin)) {
    xmin = 0.0;
    xmax = 1.0;
  }
  if (!std::isfinite(ymin)) {
    ymin = -1.0;
    ymax = 1.0;
  }
  if (xmax == xmin) xmax = xmin + 1.0;
  if (ymax == ymin) {
    ymax = ymin + 1.0;
    ymin -= 1.0;
  }
  const double ypad = 0.05 * (ymax - ymin);
  ymin -= ypad;
  ymax += ypad;

  const auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
  const auto py = [&](double y) { return mt + (ymax - y) / (ymax - ymin) * ph; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width
      << "\" height=\"" << spec.height << "\" viewBox=\"0 0 " << spec.width << " "
      << spec.height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (const auto& b : spec.bands) {
    const double x0 = std::clamp(b.start, xmin, xmax);
    const double x1 = std::clamp(b.end, xmin, xmax);
    if (x1 <= x0) continue;
    out << "<rect x=\"" << fmt(px(x0)) << "\" y=\"" << mt << "\" width=\""
        << fmt(px(x1) - px(x0)) << "\" height=\"" << fmt(ph)
        << "\" fill=\"#f0e8d8\" stroke=\"none\"/>\n";
  }

  const int nticks = 6;
  out << "<g font-family=\"monospace\" font-size=\"11\" fill=\"#333\">\n";
  for (int i = 0; i <= nticks; ++i) {
    const double xv = xmin + (xmax - xmin) * i / nticks;
    const double yv = ymin + (ymax - ymin) * i / nticks;
    out << "<line x1=\"" << fmt(px(xv)) << "\" y1=\"" << mt + ph << "\" x2=\""
        << fmt(px(xv)) << "\" y2=\"" << mt + ph + 4 << "\" stroke=\"#333\"/>\n";
    out << "<text x=\"" << fmt(px(xv)) << "\" y=\"" << mt + ph + 18
        << "\" text-anchor=\"middle\">" << fmt_tick(xv) << "</text>\n";
    out << "<line x1=\"" << ml - 4 << "\" y1=\"" << fmt(py(yv)) << "\" x2=\"" << ml
        << "\" y2=\"" << fmt(py(yv)) << "\" stroke=\"#333\"/>\n";
    out << "<text x=\"" << ml - 7 << "\" y=\"" << fmt(py(yv) + 4)
        << "\" text-anchor=\"end\">" << fmt_tick(yv) << "</text>\n";
  }
  out << "</g>\n";

  out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << fmt(pw)
      << "\" height=\"" << fmt(ph) << "\" fill=\"none\" stroke=\"#333\"/>\n";

  for (const auto& s : spec.series) {
    const std::size_t n = std::min(s.x.size(), s.y.size());
    if (n == 0) continue;
    std::size_t stride = 1;
    if (spec.max_points_per_series > 0 &&
        n > static_cast<std::size_t>(spec.max_points_per_series)) {
      stride = (n + spec.max_points_per_series - 1) / spec.max_points_per_series;
    }
    out << "<polyline fill=\"none\" stroke=\"" << s.color
        << "\" stroke-width=\"1.2\" points=\"";
    for (std::size_t k = 0; k < n; k += stride) {
      out << fmt(px(s.x[k])) << ',' << fmt(py(s.y[k])) << ' ';
    }
    // always include the final sample
    out << fmt(px(s.x[n - 1])) << ',' << fmt(py(s.y[n - 1]));
    out << "\"/>\n";
  }

  out << "<text x=\"" << spec.width / 2 << "\" y=\"18\" text-anchor=\"middle\" "
      << "font-family=\"monospace\" font-size=\"13\">" << escape(spec.title)
      << "</text>\n";
  out << "<text x=\"" << spec.width / 2 << "\" y=\"" << spec.height - 8
      << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"12\">"
      << escape(spec.x_label) << "</text>\n";
  out << "<text x=\"14\" y=\"" << mt + ph / 2
      << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"12\" "
      << "transform=\"rotate(-90 14 " << mt + ph / 2 << ")\">" << escape(spec.y_label)
      << "</text>\n";

  int lx = ml + 10;
  for (const auto& s : spec.series) {
    out << "<line x1=\"" << lx << "\" y1=\"" << mt + 12 << "\" x2=\"" << lx + 18
        << "\" y2=\"" << mt + 12 << "\" stroke=\"" << s.color
        << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << lx + 22 << "\" y=\"" << mt + 16
        << "\" font-family=\"monospace\" font-size=\"11\">" << escape(s.label)
        << "</text>\n";
    lx += 22 + 8 * static_cast<int>(s.label.size()) + 18;
  }

  out << "</svg>\n";
  return out.str();
}

void write_svg(const PlotSpec& spec, const std::filesystem::path& path) {
  atomic_write(path, render_svg(spec));
}

} // namespace lfc
