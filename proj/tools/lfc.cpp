#include "lfc/bench39.hpp"
#include "lfc/metrics.hpp"
#include "lfc/scenario_config.hpp"
#include "lfc/sim.hpp"
#include "lfc/svg_plot.hpp"
#include "lfc/trace_io.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>

namespace fs = std::filesystem;
using namespace lfc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitDiverged = 3;
constexpr int kExitIo = 4;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                          "#9467bd", "#8c564b"};

struct ScenarioArgs {
  std::string scenario = "bench39";
  std::string config_file;
  std::string controller; // empty = scenario/file default
  double dt = 0.0;        // 0 = keep
  double horizon = 0.0;
  double noise = -1.0; // <0 = keep
  std::int64_t seed = -1;
  std::string out_dir;

  void add_to(CLI::App& cmd, bool with_controller = true) {
    cmd.add_option("--scenario", scenario, "Built-in scenario name")
        ->default_str("bench39");
    cmd.add_option("--config", config_file, "Scenario config file (overrides --scenario)");
    if (with_controller) {
      cmd.add_option("--controller", controller, "gitsmc or pi")
          ->check(CLI::IsMember({"gitsmc", "pi"}));
    }
    cmd.add_option("--dt", dt, "Step size override [s]");
    cmd.add_option("--horizon", horizon, "Horizon override [s]");
    cmd.add_option("--noise", noise, "Noise std override [pu]");
    cmd.add_option("--seed", seed, "Noise seed override");
    cmd.add_option("--out", out_dir, "Output directory (default $LFC_OUT_DIR or ./out)");
  }

  fs::path resolve_out() const {
    if (!out_dir.empty()) return out_dir;
    if (const char* env = std::getenv("LFC_OUT_DIR")) return env;
    return "out";
  }

  ScenarioConfig load(const std::string& controller_name) const {
    ScenarioConfig cfg;
    if (!config_file.empty()) {
      cfg = load_scenario_file(config_file, controller_name);
    } else if (scenario == "bench39") {
      const auto choice = controller_name == "pi" ? BenchController::kPi
                                                  : BenchController::kGitsmc;
      cfg = builtin_benchmark(choice);
    } else {
      throw ConfigError("unknown scenario '" + scenario + "' (built-in: bench39)");
    }
    if (dt > 0.0) cfg.dt_s = dt;
    if (horizon > 0.0) {
      cfg.horizon_s = horizon;
      for (auto& area : cfg.schedule.areas) {
        for (auto* channel : {&area.load, &area.pv, &area.wind}) {
          std::erase_if(channel->segments,
                        [&](const Segment& s) { return s.start_s >= horizon; });
          for (auto& s : channel->segments) s.end_s = std::min(s.end_s, horizon);
        }
      }
    }
    if (noise >= 0.0) cfg.schedule.noise_std = noise;
    if (seed >= 0) cfg.schedule.noise_seed = static_cast<std::uint64_t>(seed);
    cfg.validate();
    return cfg;
  }

  std::string config_text(const std::string& controller_name) const {
    if (!config_file.empty()) {
      std::ifstream in(config_file, std::ios::binary);
      std::ostringstream buf;
      buf << in.rdbuf();
      return buf.str();
    }
    return benchmark_config_text(controller_name == "pi" ? BenchController::kPi
                                                         : BenchController::kGitsmc);
  }
};

std::vector<double> area_series(const SimTrace& trace, int area, int state) {
  std::vector<double> y(trace.num_samples());
  for (int k = 0; k < trace.num_samples(); ++k) y[k] = trace.state_at(k, area, state);
  return y;
}

std::vector<PlotBand> schedule_bands(const DisturbanceSchedule& schedule, int area) {
  std::vector<PlotBand> bands;
  const auto add = [&](const ChannelProfile& p) {
    for (const auto& seg : p.segments) bands.push_back({seg.start_s, seg.end_s});
  };
  add(schedule.areas[area].load);
  add(schedule.areas[area].pv);
  add(schedule.areas[area].wind);
  return bands;
}

PlotSpec area_plot(const std::string& title, const std::string& y_label) {
  PlotSpec spec;
  spec.title = title;
  spec.x_label = "t [s]";
  spec.y_label = y_label;
  return spec;
}

std::vector<fs::path> write_area_plots(const SimTrace& trace,
                                       const DisturbanceSchedule& schedule,
                                       const std::string& label, const fs::path& dir) {
  std::vector<fs::path> written;
  for (int a = 0; a < trace.num_areas; ++a) {
    const std::string area_tag = "area" + std::to_string(a + 1);
    PlotSpec freq = area_plot("Frequency deviation, " + area_tag, "df [pu]");
    freq.bands = schedule_bands(schedule, a);
    freq.series.push_back({label, kPalette[a % 4], trace.time,
                           area_series(trace, a, kFreq)});
    const fs::path freq_path = dir / ("freq_" + area_tag + ".svg");
    write_svg(freq, freq_path);
    written.push_back(freq_path);

    PlotSpec tie = area_plot("Tie-line power deviation, " + area_tag, "dP_tie [pu]");
    tie.bands = freq.bands;
    tie.series.push_back({label, kPalette[a % 4], trace.time,
                          area_series(trace, a, kTiePower)});
    const fs::path tie_path = dir / ("tie_" + area_tag + ".svg");
    write_svg(tie, tie_path);
    written.push_back(tie_path);
  }
  return written;
}

std::string reaching_table(const ReachingReport& report) {
  std::ostringstream out;
  out << "area,counted,violations,violation_fraction\n";
  for (std::size_t a = 0; a < report.violation_fraction.size(); ++a) {
    out << a + 1 << ',' << report.counted[a] << ',' << report.violations[a] << ','
        << format_double(report.violation_fraction[a]) << "\n";
  }
  return out.str();
}

bool is_gitsmc(const ScenarioConfig& cfg) {
  return !cfg.controllers.empty() &&
         std::holds_alternative<GitsmcChoice>(cfg.controllers.front());
}

int cmd_run(const ScenarioArgs& args) {
  const ScenarioConfig cfg = args.load(args.controller);
  const fs::path dir = args.resolve_out();
  fs::create_directories(dir);

  const SimTrace trace = run_scenario(cfg);
  write_trace_csv(trace, dir / "trace.csv");
  atomic_write(dir / "indices.csv", index_table(integral_indices(trace)));
  atomic_write(dir / "scenario.cfg", args.config_text(args.controller));
  const auto plots = write_area_plots(trace, cfg.schedule, "trace", dir);
  if (is_gitsmc(cfg)) {
    const double eps = std::get<GitsmcChoice>(cfg.controllers.front()).gains.boundary_eps;
    atomic_write(dir / "reaching.csv",
                 reaching_table(reaching_monitor(trace, 10.0 * eps, 0.5)));
  }

  std::cout << "wrote " << (dir / "trace.csv").string() << ", indices.csv and "
            << plots.size() << " plots to " << dir.string() << "\n";
  std::cout << index_table(integral_indices(trace));
  return kExitOk;
}

int cmd_compare(const ScenarioArgs& args, const std::string& a, const std::string& b) {
  const ScenarioConfig cfg_a = args.load(a);
  const ScenarioConfig cfg_b = args.load(b);
  const fs::path dir = args.resolve_out();
  fs::create_directories(dir);

  const SimTrace trace_a = run_scenario(cfg_a);
  const SimTrace trace_b = run_scenario(cfg_b);
  const ComparisonReport report =
      compare_controllers(integral_indices(trace_a), integral_indices(trace_b));
  atomic_write(dir / "comparison.csv", comparison_table(report));
  write_trace_csv(trace_a, dir / ("trace_" + a + ".csv"));
  write_trace_csv(trace_b, dir / ("trace_" + b + ".csv"));

  for (int ar = 0; ar < trace_a.num_areas; ++ar) {
    const std::string area_tag = "area" + std::to_string(ar + 1);
    PlotSpec freq = area_plot("Frequency deviation, " + area_tag + ": " + a + " vs " + b,
                              "df [pu]");
    freq.bands = schedule_bands(cfg_a.schedule, ar);
    freq.series.push_back({a, kPalette[0], trace_a.time, area_series(trace_a, ar, kFreq)});
    freq.series.push_back({b, kPalette[1], trace_b.time, area_series(trace_b, ar, kFreq)});
    write_svg(freq, dir / ("compare_freq_" + area_tag + ".svg"));

    PlotSpec tie = area_plot("Tie-line power, " + area_tag + ": " + a + " vs " + b,
                             "dP_tie [pu]");
    tie.bands = freq.bands;
    tie.series.push_back({a, kPalette[0], trace_a.time,
                          area_series(trace_a, ar, kTiePower)});
    tie.series.push_back({b, kPalette[1], trace_b.time,
                          area_series(trace_b, ar, kTiePower)});
    write_svg(tie, dir / ("compare_tie_" + area_tag + ".svg"));
  }

  std::cout << "wrote comparison artifacts to " << dir.string() << "\n";
  std::cout << comparison_table(report);
  return kExitOk;
}

int cmd_audit(int area, double rel_tol, bool flagged_only) {
  std::cout << "area,matrix,row,col,built,published,rel_diff,flagged,note\n";
  for (int a = 1; a <= 4; ++a) {
    if (area != 0 && area != a) continue;
    const AuditReport report = audit_benchmark_area(a, rel_tol);
    for (const auto& e : report.entries) {
      if (flagged_only && !e.flagged) continue;
      std::cout << e.area << ',' << e.matrix << ',' << e.row << ',' << e.col << ','
                << format_double(e.built) << ',' << format_double(e.published) << ','
                << format_double(e.rel_diff) << ',' << (e.flagged ? "yes" : "no") << ','
                << e.note << "\n";
    }
  }
  return kExitOk;
}

struct SweepAxis {
  std::string name;
  std::vector<double> values;
};

void apply_gain(ScenarioConfig& cfg, const std::string& name, double value) {
  for (auto& choice : cfg.controllers) {
    if (auto* g = std::get_if<GitsmcChoice>(&choice)) {
      if (name == "eta1") g->gains.eta1 = value;
      else if (name == "eta2") g->gains.eta2 = value;
      else if (name == "lambda1") g->gains.lambda1 = value;
      else if (name == "lambda2") g->gains.lambda2 = value;
      else if (name == "lambda") { g->gains.lambda1 = value; g->gains.lambda2 = value; }
      else if (name == "alpha") g->gains.alpha = value;
      else if (name == "boundary_eps") g->gains.boundary_eps = value;
      else throw ConfigError("parameter '" + name + "' does not apply to gitsmc");
      g->gains.validate();
    } else if (auto* p = std::get_if<PiChoice>(&choice)) {
      if (name == "kp") p->gains.kp = value;
      else if (name == "ki") p->gains.ki = value;
      else throw ConfigError("parameter '" + name + "' does not apply to pi");
    }
  }
}

double pick_index(const IndexReport& r, const std::string& name) {
  if (name == "itae") return r.itae;
  if (name == "itse") return r.itse;
  if (name == "ise") return r.ise;
  if (name == "iae") return r.iae;
  throw ConfigError("unknown index '" + name + "'");
}

int cmd_sweep(const ScenarioArgs& args, const std::vector<std::string>& grid_specs,
              const std::string& index_name) {
  std::vector<SweepAxis> axes;
  for (const auto& spec : grid_specs) {
    const std::size_t eq = spec.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("grid spec '" + spec + "' is not name=v1,v2,..");
    }
    SweepAxis axis;
    axis.name = spec.substr(0, eq);
    std::stringstream ss(spec.substr(eq + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) axis.values.push_back(std::stod(item));
    }
    if (axis.values.empty()) {
      throw ConfigError("grid spec '" + spec + "' has no values");
    }
    axes.push_back(axis);
  }
  if (axes.empty()) throw ConfigError("sweep needs at least one --grid spec");

  struct Row {
    std::vector<double> point;
    IndexReport indices;
    bool diverged = false;
  };
  std::vector<Row> rows;
  std::vector<std::size_t> cursor(axes.size(), 0);
  for (;;) {
    Row row;
    ScenarioConfig cfg = args.load(args.controller);
    for (std::size_t i = 0; i < axes.size(); ++i) {
      row.point.push_back(axes[i].values[cursor[i]]);
      apply_gain(cfg, axes[i].name, row.point.back()); // throws on invalid value
    }
    try {
      row.indices = integral_indices(run_scenario(cfg));
    } catch (const SimDivergedError&) {
      row.diverged = true;
    }
    rows.push_back(std::move(row));

    std::size_t k = 0;
    while (k < axes.size() && ++cursor[k] == axes[k].values.size()) cursor[k++] = 0;
    if (k == axes.size()) break;
  }

  std::stable_sort(rows.begin(), rows.end(), [&](const Row& a, const Row& b) {
    if (a.diverged != b.diverged) return !a.diverged;
    return pick_index(a.indices, index_name) < pick_index(b.indices, index_name);
  });

  std::ostringstream out;
  for (const auto& axis : axes) out << axis.name << ',';
  out << "itae,itse,ise,iae,status\n";
  for (const auto& row : rows) {
    for (double v : row.point) out << format_double(v) << ',';
    if (row.diverged) {
      out << ",,,,diverged\n";
    } else {
      out << format_double(row.indices.itae) << ',' << format_double(row.indices.itse)
          << ',' << format_double(row.indices.ise) << ',' << format_double(row.indices.iae)
          << ",ok\n";
    }
  }

  const fs::path dir = args.resolve_out();
  fs::create_directories(dir);
  atomic_write(dir / "sweep.csv", out.str());
  std::cout << out.str();
  return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decentralized GITSMC load-frequency control simulator"};
  app.require_subcommand(1);

  ScenarioArgs run_args;
  CLI::App* run = app.add_subcommand("run", "Simulate one scenario and write artifacts");
  run_args.add_to(*run);

  ScenarioArgs cmp_args;
  std::string cmp_a = "gitsmc", cmp_b = "pi";
  CLI::App* cmp = app.add_subcommand("compare", "Run two controllers on one scenario");
  cmp_args.add_to(*cmp, false);
  cmp->add_option("--a", cmp_a, "Test controller")->check(CLI::IsMember({"gitsmc", "pi"}));
  cmp->add_option("--b", cmp_b, "Baseline controller")
      ->check(CLI::IsMember({"gitsmc", "pi"}));

  int audit_area = 0;
  double audit_tol = 0.005;
  bool audit_flagged_only = false;
  CLI::App* audit = app.add_subcommand("audit", "Compare formula vs published matrices");
  audit->add_option("--area", audit_area, "Restrict to one area (1..4, 0 = all)")
      ->check(CLI::Range(0, 4));
  audit->add_option("--rel-tol", audit_tol, "Relative flagging tolerance")
      ->check(CLI::NonNegativeNumber);
  audit->add_flag("--flagged-only", audit_flagged_only, "Print only flagged elements");

  ScenarioArgs sweep_args;
  std::vector<std::string> sweep_grid;
  std::string sweep_index = "itse";
  CLI::App* sweep = app.add_subcommand("sweep", "Grid-search controller gains");
  sweep_args.add_to(*sweep);
  sweep->add_option("--grid", sweep_grid,
                    "Axis spec name=v1,v2,.. (repeatable; Cartesian product). "
                    "Names: eta1 eta2 lambda lambda1 lambda2 alpha boundary_eps kp ki");
  sweep->add_option("--index", sweep_index, "Ranking index: itae|itse|ise|iae")
      ->check(CLI::IsMember({"itae", "itse", "ise", "iae"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) return cmd_run(run_args);
    if (*cmp) return cmd_compare(cmp_args, cmp_a, cmp_b);
    if (*audit) return cmd_audit(audit_area, audit_tol, audit_flagged_only);
    if (*sweep) return cmd_sweep(sweep_args, sweep_grid, sweep_index);
  } catch (const SimDivergedError& e) {
    std::cerr << e.what() << "\n";
    return kExitDiverged;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitOk;
}
