#include "lfc/plant.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace lfc {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string(name) + " must be strictly positive");
  }
}

} // namespace

void GeneratorParameters::validate() const {
  require_positive(rating_mva, "rating_mva");
  require_positive(turbine_time_T_t, "turbine_time_T_t");
  require_positive(governor_time_T_g, "governor_time_T_g");
  require_positive(droop_R, "droop_R");
  require_positive(inertia_H, "inertia_H");
  require_positive(damping_D, "damping_D");
}

void AreaParameters::validate() const {
  require_positive(inertia_H, "inertia_H");
  require_positive(damping_D, "damping_D");
  require_positive(droop_R, "droop_R");
  require_positive(turbine_T_t, "turbine_T_t");
  require_positive(governor_T_g, "governor_T_g");
  require_positive(turbine_gain_K_t, "turbine_gain_K_t");
  require_positive(governor_gain_K_g, "governor_gain_K_g");
  require_positive(pv_time_T_PV, "pv_time_T_PV");
  require_positive(wt_time_T_WT, "wt_time_T_WT");
  const double expected = damping_D + 1.0 / droop_R;
  if (std::abs(frequency_bias_beta - expected) > 1e-6 * std::abs(expected)) {
    throw std::invalid_argument("frequency_bias_beta inconsistent with D + 1/R");
  }
}

TieLineTopology TieLineTopology::decoupled(int num_areas) {
  return {Eigen::MatrixXd::Zero(num_areas, num_areas)};
}

void TieLineTopology::validate() const {
  if (coeff.rows() != coeff.cols()) {
    throw std::invalid_argument("tie coefficient matrix must be square");
  }
  for (int i = 0; i < coeff.rows(); ++i) {
    if (coeff(i, i) != 0.0) {
      throw std::invalid_argument("tie coefficient diagonal must be zero");
    }
    for (int j = 0; j < coeff.cols(); ++j) {
      if (coeff(i, j) != coeff(j, i)) {
        throw std::invalid_argument("tie coefficient matrix must be symmetric");
      }
    }
  }
}

void MultiAreaModel::validate() const {
  ties.validate();
  if (static_cast<int>(areas.size()) != ties.num_areas()) {
    throw std::invalid_argument("area count does not match tie topology");
  }
  for (const auto& m : areas) {
    if (m.surface_gain() == 0.0) {
      throw std::invalid_argument("surface row gives singular product with B0");
    }
  }
}

AreaParameters aggregate_area_parameters(std::span<const GeneratorParameters> generators,
                                         double damping_D_eqv) {
  if (generators.empty()) {
    throw std::invalid_argument("generator list is empty");
  }
  require_positive(damping_D_eqv, "damping_D_eqv");

  double sum_tt = 0.0, sum_tg = 0.0, sum_s = 0.0, sum_sh = 0.0, sum_sr = 0.0;
  for (const auto& g : generators) {
    g.validate();
    sum_tt += g.turbine_time_T_t;
    sum_tg += g.governor_time_T_g;
    sum_s += g.rating_mva;
    sum_sh += g.rating_mva * g.inertia_H;
    sum_sr += g.rating_mva * g.droop_R;
  }
  const double n = static_cast<double>(generators.size());

  AreaParameters out;
  out.turbine_T_t = sum_tt / n;
  out.governor_T_g = sum_tg / n;
  out.inertia_H = sum_sh / sum_s;
  out.droop_R = sum_sr / sum_s;
  out.damping_D = damping_D_eqv;
  out.frequency_bias_beta = damping_D_eqv + 1.0 / out.droop_R;
  out.turbine_gain_K_t = 1.0;
  out.governor_gain_K_g = 1.0;
  return out;
}

PlantMatrices build_plant_matrices(const AreaParameters& params, double tie_row_sum) {
  params.validate();
  if (tie_row_sum < 0.0) {
    throw std::invalid_argument("tie_row_sum must be non-negative");
  }

  const double two_h = 2.0 * params.inertia_H;
  const double kt_tt = params.turbine_gain_K_t / params.turbine_T_t;
  const double kg_tg = params.governor_gain_K_g / params.governor_T_g;

  PlantMatrices m;
  m.A0(kTiePower, kFreq) = 2.0 * std::numbers::pi * tie_row_sum;

  m.A0(kFreq, kTiePower) = -1.0 / two_h;
  m.A0(kFreq, kFreq) = -params.damping_D / two_h;
  m.A0(kFreq, kMechPower) = 1.0 / two_h;
  m.A0(kFreq, kPv) = 1.0 / two_h;
  m.A0(kFreq, kWt) = 1.0 / two_h;

  m.A0(kMechPower, kMechPower) = -kt_tt;
  m.A0(kMechPower, kGovernor) = kt_tt;

  m.A0(kSecondaryIntegral, kTiePower) = params.integral_gain_K_E;
  m.A0(kSecondaryIntegral, kFreq) = params.integral_gain_K_E * params.frequency_bias_beta;

  m.A0(kGovernor, kFreq) = -kg_tg / params.droop_R;
  m.A0(kGovernor, kSecondaryIntegral) = -kg_tg;
  m.A0(kGovernor, kGovernor) = -kg_tg;

  m.A0(kPv, kPv) = -1.0 / params.pv_time_T_PV;
  m.A0(kWt, kWt) = -1.0 / params.wt_time_T_WT;

  m.B0(kGovernor) = kg_tg;

  m.psi0(kFreq, 0) = -1.0 / two_h;
  m.psi0(kPv, 1) = params.pv_gain_K_PV / params.pv_time_T_PV;
  m.psi0(kWt, 2) = params.wt_gain_K_WT / params.wt_time_T_WT;

  m.surface_row(kGovernor) = 1.0 / m.B0(kGovernor);
  return m;
}

Eigen::VectorXd plant_derivative(const Eigen::VectorXd& state,
                                 std::span<const double> controls,
                                 std::span<const DisturbanceInput> disturbances,
                                 const MultiAreaModel& model) {
  const int n = model.num_areas();
  if (state.size() != n * kStatesPerArea ||
      static_cast<int>(controls.size()) != n ||
      static_cast<int>(disturbances.size()) != n) {
    throw std::invalid_argument("plant_derivative: dimension mismatch");
  }

  Eigen::VectorXd deriv(state.size());
  for (int i = 0; i < n; ++i) {
    const auto x = state.segment<kStatesPerArea>(i * kStatesPerArea);
    const auto& m = model.areas[i];
    Vec7 dx = m.A0 * x + m.B0 * controls[i] + m.psi0 * disturbances[i].vec();

    double tie = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double df_j = state(j * kStatesPerArea + kFreq);
      tie += model.ties.coeff(i, j) * (x(kFreq) - df_j);
    }
    dx(kTiePower) = 2.0 * std::numbers::pi * tie;

    deriv.segment<kStatesPerArea>(i * kStatesPerArea) = dx;
  }
  return deriv;
}

} // namespace lfc
