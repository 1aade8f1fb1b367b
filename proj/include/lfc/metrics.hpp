#ifndef LFC_METRICS_HPP_
#define LFC_METRICS_HPP_

#include "lfc/sim.hpp"

#include <string>
#include <vector>

namespace lfc {

struct IndexReport {
  double itae = 0.0;
  double itse = 0.0;
  double ise = 0.0;
  double iae = 0.0;
};

struct EventTransient {
  int area = 0;
  double event_time_s = 0.0;
  double window_end_s = 0.0;
  double overshoot_pu = 0.0;  // max df in window
  double undershoot_pu = 0.0; // min df in window
  double settling_time_s = 0.0;
  bool settled = true;
};

struct TransientReport {
  double band_pu = 0.0;
  std::vector<EventTransient> events;
};

struct IndexComparison {
  std::string name;
  double value_test = 0.0;
  double value_baseline = 0.0;
  double improvement_percent = 0.0; // (baseline - test)/baseline * 100
  bool undefined = false;           // baseline 0 with nonzero test
};

struct ComparisonReport {
  std::vector<IndexComparison> indices;
};

// Trapezoidal evaluation of the four integral indices over
// sum_i(|df_i| + |dP_tie_i|) and sum_i(df_i^2 + dP_tie_i^2).
IndexReport integral_indices(const SimTrace& trace);

// Per area, per event window [event, next event or horizon): frequency
// overshoot/undershoot and settling time to the +-band around zero.
TransientReport transient_metrics(const SimTrace& trace, std::span<const double> events,
                                  double band_pu);

ComparisonReport compare_controllers(const IndexReport& test, const IndexReport& baseline);

} // namespace lfc

#endif // LFC_METRICS_HPP_
