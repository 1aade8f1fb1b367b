#include "lfc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lfc {

IndexReport integral_indices(const SimTrace& trace) {
  if (trace.num_samples() == 0) {
    throw std::invalid_argument("integral_indices: empty trace");
  }

  const int n = trace.num_samples();
  std::vector<double> abs_err(n), sq_err(n);
  for (int k = 0; k < n; ++k) {
    double ae = 0.0, se = 0.0;
    for (int a = 0; a < trace.num_areas; ++a) {
      const double df = trace.state_at(k, a, kFreq);
      const double tie = trace.state_at(k, a, kTiePower);
      ae += std::abs(df) + std::abs(tie);
      se += df * df + tie * tie;
    }
    abs_err[k] = ae;
    sq_err[k] = se;
  }

  IndexReport r;
  for (int k = 0; k + 1 < n; ++k) {
    const double h = trace.time[k + 1] - trace.time[k];
    r.iae += 0.5 * h * (abs_err[k] + abs_err[k + 1]);
    r.ise += 0.5 * h * (sq_err[k] + sq_err[k + 1]);
    r.itae += 0.5 * h * (trace.time[k] * abs_err[k] + trace.time[k + 1] * abs_err[k + 1]);
    r.itse += 0.5 * h * (trace.time[k] * sq_err[k] + trace.time[k + 1] * sq_err[k + 1]);
  }
  return r;
}

TransientReport transient_metrics(const SimTrace& trace, std::span<const double> events,
                                  double band_pu) {
  const double horizon = trace.time.empty() ? 0.0 : trace.time.back();
  for (double e : events) {
    if (e < 0.0 || e > horizon) {
      throw std::invalid_argument("transient_metrics: event outside horizon");
    }
  }
  std::vector<double> sorted(events.begin(), events.end());
  std::sort(sorted.begin(), sorted.end());

  TransientReport report;
  report.band_pu = band_pu;
  for (std::size_t e = 0; e < sorted.size(); ++e) {
    const double start = sorted[e];
    const double end = e + 1 < sorted.size() ? sorted[e + 1] : horizon;
    if (!(end > start)) continue;
    for (int a = 0; a < trace.num_areas; ++a) {
      EventTransient et;
      et.area = a;
      et.event_time_s = start;
      et.window_end_s = end;
      double last_exceed = start;
      bool exceeded = false;
      double last_df = 0.0;
      for (int k = 0; k < trace.num_samples(); ++k) {
        const double t = trace.time[k];
        if (t < start || t >= end) continue;
        const double df = trace.state_at(k, a, kFreq);
        et.overshoot_pu = std::max(et.overshoot_pu, df);
        et.undershoot_pu = std::min(et.undershoot_pu, df);
        if (std::abs(df) > band_pu) {
          last_exceed = t;
          exceeded = true;
        }
        last_df = df;
      }
      et.settling_time_s = exceeded ? last_exceed - start : 0.0;
      et.settled = std::abs(last_df) <= band_pu;
      report.events.push_back(et);
    }
  }
  return report;
}

ComparisonReport compare_controllers(const IndexReport& test, const IndexReport& baseline) {
  ComparisonReport report;
  const auto add = [&](const char* name, double a, double b) {
    IndexComparison c;
    c.name = name;
    c.value_test = a;
    c.value_baseline = b;
    if (b == 0.0) {
      c.undefined = a != 0.0;
      c.improvement_percent = 0.0;
    } else {
      c.improvement_percent = (b - a) / b * 100.0;
    }
    report.indices.push_back(c);
  };
  add("ITAE", test.itae, baseline.itae);
  add("ITSE", test.itse, baseline.itse);
  add("ISE", test.ise, baseline.ise);
  add("IAE", test.iae, baseline.iae);
  return report;
}

} // namespace lfc
