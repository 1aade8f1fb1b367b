#ifndef LFC_SVG_PLOT_HPP_
#define LFC_SVG_PLOT_HPP_

#include <filesystem>
#include <string>
#include <vector>

namespace lfc {

struct PlotSeries {
  std::string label;
  std::string color; // e.g. "#1f77b4"
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotBand {
  double start = 0.0;
  double end = 0.0;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<PlotSeries> series;
  std::vector<PlotBand> bands; // shaded disturbance intervals
  int width = 900;
  int height = 360;
  int max_points_per_series = 2000; // uniform downsampling above this
};

// Deterministic standalone SVG (no timestamps or random ids), suitable for
// golden-file comparison.
std::string render_svg(const PlotSpec& spec);
void write_svg(const PlotSpec& spec, const std::filesystem::path& path);

} // namespace lfc

#endif // LFC_SVG_PLOT_HPP_
