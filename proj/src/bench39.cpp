#include "lfc/bench39.hpp"

#include <cmath>
#include <stdexcept>

namespace lfc {

namespace {

PlantMatrices published_area(const std::array<std::array<double, 7>, 7>& a, double b_gov) {
  PlantMatrices m;
  for (int r = 0; r < 7; ++r) {
    for (int c = 0; c < 7; ++c) m.A0(r, c) = a[r][c];
  }
  m.B0(kGovernor) = b_gov;
  m.surface_row(kGovernor) = 1.0 / b_gov;
  // The paper does not print psi; derive it from the published inertia and
  // lag entries so the disturbance path matches the printed dynamics.
  m.psi0(kFreq, 0) = m.A0(kFreq, kTiePower);
  m.psi0(kPv, 1) = -m.A0(kPv, kPv);
  m.psi0(kWt, 2) = -m.A0(kWt, kWt);
  return m;
}

AreaParameters make_area(double t_t, double t_g, double r, double h) {
  AreaParameters p;
  p.turbine_T_t = t_t;
  p.governor_T_g = t_g;
  p.droop_R = r;
  p.inertia_H = h;
  p.damping_D = 1.0;
  p.frequency_bias_beta = p.damping_D + 1.0 / r;
  p.integral_gain_K_E = 5.0;
  // The published PV/WT lag entries (-25, -23.81) imply these constants; the
  // prose values (1.8 s, 1.5 s) do not reproduce them.
  p.pv_time_T_PV = 0.04;
  p.wt_time_T_WT = 0.042;
  return p;
}

BenchmarkData make_benchmark() {
  BenchmarkData d;

  d.generators = {
      {1000.00, 0.3742, 0.0804, 0.0471, 10.00, 1.0}, // G1
      {520.81, 0.3888, 0.0774, 0.0541, 6.06, 1.0},   // G2
      {650.00, 0.3645, 0.0748, 0.0518, 7.16, 1.0},   // G3
      {632.00, 0.3707, 0.0759, 0.0540, 5.72, 1.0},   // G4
      {508.00, 0.3770, 0.0729, 0.0470, 5.20, 1.0},   // G5
      {650.00, 0.4316, 0.0791, 0.0459, 6.96, 1.0},   // G6
      {560.00, 0.3657, 0.0722, 0.0481, 5.28, 1.0},   // G7
      {540.00, 0.3665, 0.0805, 0.0484, 4.86, 1.0},   // G8
      {830.00, 0.4222, 0.0737, 0.0479, 6.90, 1.0},   // G9
      {250.00, 0.4324, 0.0852, 0.0525, 8.40, 1.0},   // G10
  };
  d.generator_area = {1, 2, 2, 3, 3, 3, 3, 4, 4, 4};

  d.area_params = {
      make_area(0.3742, 0.0804, 0.0471, 10.0),
      // Printed beta/H for this area (6.6706 / 19.9394) are transposed
      // relative to beta = D + 1/R and the rating-weighted inertia.
      make_area(0.3766, 0.0760, 0.0528, 6.6706),
      make_area(0.3862, 0.0750, 0.0486, 6.6706),
      make_area(0.4070, 0.0798, 0.0487, 6.4515),
  };

  // The printed matrices cannot be simulated: the K_E*beta entries near 100
  // put open-loop poles at +2.5 +/- 11i, and no PI gain stabilizes them. The
  // simulated plant is rebuilt from the same equivalent constants with a
  // conventional secondary integral gain and the prose PV/WT lags; the
  // printed data stays verbatim for the audit.
  d.sim_params = d.area_params;
  for (auto& p : d.sim_params) {
    p.integral_gain_K_E = 1.0;
    p.pv_time_T_PV = 1.8;
    p.wt_time_T_WT = 1.5;
  }

  d.ties.coeff = Eigen::MatrixXd::Zero(4, 4);
  const auto tie = [&](int i, int j, double v) {
    d.ties.coeff(i, j) = v;
    d.ties.coeff(j, i) = v;
  };
  tie(0, 2, 1.3272);
  tie(1, 2, 0.2959);
  tie(1, 3, 0.6128);
  tie(2, 3, 0.3959);

  d.published = {
      published_area({{{0, 8.33, 0, 0, 0, 0, 0},
                       {-5, -5, 5, 0, 0, 5, 5},
                       {0, 0, -2.67, 0, 2.67, 0, 0},
                       {5, 11.15, 0, 0, 0, 0, 0},
                       {0, -264.07, 0, -12.43, -12.43, 0, 0},
                       {0, 0, 0, 0, 0, -25, 0},
                       {0, 0, 0, 0, 0, 0, -23.81}}},
                     12.43),
      published_area({{{0, 5.70, 0, 0, 0, 0, 0},
                       {-3.33, -3.33, 3.33, 0, 0, 3.33, 3.33},
                       {0, 0, -2.65, 0, 2.65, 0, 0},
                       {5, 99.69, 0, 0, 0, 0, 0},
                       {0, -279.36, 0, -13.15, -13.15, 0, 0},
                       {0, 0, 0, 0, 0, -25, 0},
                       {0, 0, 0, 0, 0, 0, -23.81}}},
                     13.15),
      published_area({{{0, 12.68, 0, 0, 0, 0, 0},
                       {-2.92, -2.92, 2.92, 0, 0, 2.92, 2.92},
                       {0, 0, -2.58, 0, 2.58, 0, 0},
                       {5, 107.88, 0, 0, 0, 0, 0},
                       {0, -423.37, 0, -13.33, -13.33, 0, 0},
                       {0, 0, 0, 0, 0, -25, 0},
                       {0, 0, 0, 0, 0, 0, -23.81}}},
                     20.57),
      published_area({{{0, 6.33, 0, 0, 0, 0, 0},
                       {-3.22, -3.22, 3.22, 0, 0, 3.22, 3.22},
                       {0, 0, -2.45, 0, 2.45, 0, 0},
                       {5, 107.66, 0, 0, 0, 0, 0},
                       {0, -257.31, 0, -12.53, -12.53, 0, 0},
                       {0, 0, 0, 0, 0, -25, 0},
                       {0, 0, 0, 0, 0, 0, -23.81}}},
                     12.53),
  };

  d.schedule.areas.resize(4);
  d.schedule.areas[0].load.segments = {{50.0, 250.0, 0.5}};
  d.schedule.areas[1].load.segments = {{150.0, 250.0, 1.0}};
  d.schedule.areas[2].load.segments = {{250.0, 300.0, 1.0}};
  d.schedule.areas[3].load.segments = {{250.0, 350.0, 1.0}};
  for (auto& a : d.schedule.areas) {
    a.pv.segments = {{50.0, 300.0, 0.25}};
    a.wind.segments = {{0.0, 100.0, 0.8}, {100.0, 270.0, 0.9}};
  }
  d.schedule.noise_std = 0.005;
  d.schedule.noise_seed = 42;

  d.gitsmc_gains = GitsmcGains{}; // lambda 24, alpha 1.7
  // The switching term must dominate the worst-case theta-projected
  // disturbance (~2.3 for a 1 pu load step with this surface), and the
  // boundary-layer gain eta2/eps must stay well inside the RK4 stability
  // region at dt = 0.01 so the step-halving comparison converges.
  d.gitsmc_gains.eta2 = 6.0;
  d.gitsmc_gains.boundary_eps = 0.2;
  // Conventional well-damped tuning from the stable region of the grid search
  // in scripts/tune_pi.sh; the source does not state its PI gains.
  d.pi_gains = PiGains{1.5, 0.8, 0.0};

  d.eta1_vector_metadata = {1.498, 1.991, 0.637, 0.728, 0.1582, 0.248, 0.239};
  d.eta2_vector_metadata = {2.498, 2.991, 0.737, 0.728, 0.258, 0.148, 0.339};
  return d;
}

} // namespace

const BenchmarkData& benchmark_data() {
  static const BenchmarkData data = make_benchmark();
  return data;
}

ScenarioConfig builtin_benchmark(BenchController controller) {
  const BenchmarkData& d = benchmark_data();
  ScenarioConfig cfg;
  cfg.horizon_s = d.horizon_s;
  cfg.dt_s = d.dt_s;
  for (int i = 0; i < 4; ++i) {
    PlantMatrices m = build_plant_matrices(d.sim_params[i], d.ties.row_sum(i));
    // Surface weights chosen so the sliding (zero) dynamics stay stable and
    // well damped over the full disturbance schedule; the published
    // governor-only row leaves Delta_E unobservable, so it ramps away under
    // sustained disturbances. Normalized so theta*B0 = 1.
    Vec7 row = Vec7::Zero();
    row(kTiePower) = 0.25;
    row(kFreq) = 40.0;
    row(kSecondaryIntegral) = 1.0;
    row(kGovernor) = 0.1;
    m.surface_row = row / (row.transpose() * m.B0);
    cfg.model.areas.push_back(m);
  }
  cfg.model.ties = d.ties;
  cfg.schedule = d.schedule;
  for (int i = 0; i < 4; ++i) {
    if (controller == BenchController::kGitsmc) {
      cfg.controllers.push_back(GitsmcChoice{d.gitsmc_gains});
    } else {
      cfg.controllers.push_back(
          PiChoice{d.pi_gains, d.area_params[i].frequency_bias_beta});
    }
  }
  return cfg;
}

const std::vector<KnownAnomaly>& known_anomalies() {
  static const std::vector<KnownAnomaly> ledger = [] {
    std::vector<KnownAnomaly> v;
    const std::string inertia =
        "published inertia row is ~100x the 1/(2H) given by the equivalent constants";
    for (int area = 1; area <= 4; ++area) {
      for (int col : {0, 1, 2, 5, 6}) {
        v.push_back({area, "A0", 1, col, inertia});
      }
      v.push_back({area, "psi0", 1, 0, inertia});
    }
    v.push_back({1, "A0", 3, 1,
                 "published 11.15 vs K_E*beta = 111.16; suspected dropped digit"});
    v.push_back({2, "A0", 4, 1,
                 "published -279.36 reproduces only with the area-1 droop 0.0471; "
                 "the tabulated R = 0.0528 gives -249.2"});
    v.push_back({3, "A0", 4, 1,
                 "published -423.37 inconsistent with K_g/(R*T_g) = 274.35 from the "
                 "tabulated constants"});
    v.push_back({3, "B0", 4, 0,
                 "published input gain 20.57 inconsistent with K_g/T_g = 13.33"});
    v.push_back({3, "theta", 0, 4,
                 "published surface entry is the reciprocal of the anomalous 20.57 gain"});
    return v;
  }();
  return ledger;
}

std::vector<const AuditEntry*> AuditReport::flagged() const {
  std::vector<const AuditEntry*> out;
  for (const auto& e : entries) {
    if (e.flagged) out.push_back(&e);
  }
  return out;
}

bool AuditReport::empty() const { return flagged().empty(); }

namespace {

void audit_element(AuditReport& report, int area, const char* matrix, int row, int col,
                   double built, double published, double rel_tol) {
  AuditEntry e;
  e.area = area;
  e.matrix = matrix;
  e.row = row;
  e.col = col;
  e.built = built;
  e.published = published;
  e.rel_diff = std::abs(built - published) / std::max(std::abs(published), 1e-12);
  e.flagged = e.rel_diff > rel_tol;
  for (const auto& k : known_anomalies()) {
    if (k.area == area && k.matrix == matrix && k.row == row && k.col == col) {
      e.note = k.note;
      break;
    }
  }
  report.entries.push_back(e);
}

} // namespace

AuditReport audit_matrices(const PlantMatrices& built, const PlantMatrices& published,
                           double rel_tol, int area) {
  AuditReport report;
  report.rel_tol = rel_tol;
  for (int r = 0; r < 7; ++r) {
    for (int c = 0; c < 7; ++c) {
      audit_element(report, area, "A0", r, c, built.A0(r, c), published.A0(r, c), rel_tol);
    }
  }
  for (int r = 0; r < 7; ++r) {
    audit_element(report, area, "B0", r, 0, built.B0(r), published.B0(r), rel_tol);
  }
  for (int r = 0; r < 7; ++r) {
    for (int c = 0; c < 3; ++c) {
      audit_element(report, area, "psi0", r, c, built.psi0(r, c), published.psi0(r, c),
                    rel_tol);
    }
  }
  for (int c = 0; c < 7; ++c) {
    audit_element(report, area, "theta", 0, c, built.surface_row(c),
                  published.surface_row(c), rel_tol);
  }
  return report;
}

AuditReport audit_benchmark_area(int area, double rel_tol) {
  if (area < 1 || area > 4) {
    throw std::invalid_argument("audit_benchmark_area: area must be 1..4");
  }
  const BenchmarkData& d = benchmark_data();
  const PlantMatrices built =
      build_plant_matrices(d.area_params[area - 1], d.ties.row_sum(area - 1));
  return audit_matrices(built, d.published[area - 1], rel_tol, area);
}

} // namespace lfc
