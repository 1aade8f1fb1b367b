#ifndef LFC_PLANT_HPP_
#define LFC_PLANT_HPP_

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace lfc {

using Vec7 = Eigen::Matrix<double, 7, 1>;
using Mat7 = Eigen::Matrix<double, 7, 7>;
using RowVec7 = Eigen::Matrix<double, 1, 7>;
using Mat73 = Eigen::Matrix<double, 7, 3>;

// Per-area state layout: x = [dP_tie, df, dP_m, dE, dP_g, dP_pv, dP_wt].
enum StateIndex : int {
  kTiePower = 0,
  kFreq = 1,
  kMechPower = 2,
  kSecondaryIntegral = 3,
  kGovernor = 4,
  kPv = 5,
  kWt = 6,
};

inline constexpr int kStatesPerArea = 7;

struct GeneratorParameters {
  double rating_mva = 0.0;
  double turbine_time_T_t = 0.0;  // s
  double governor_time_T_g = 0.0; // s
  double droop_R = 0.0;           // pu Hz / pu MW
  double inertia_H = 0.0;         // s
  double damping_D = 0.0;         // pu

  void validate() const; // throws std::invalid_argument on non-positive fields
};

struct AreaParameters {
  double inertia_H = 0.0;
  double damping_D = 1.0;
  double droop_R = 0.0;
  double frequency_bias_beta = 0.0; // beta = D + 1/R
  double turbine_T_t = 0.0;
  double governor_T_g = 0.0;
  double turbine_gain_K_t = 1.0;
  double governor_gain_K_g = 1.0;
  double integral_gain_K_E = 5.0;
  double pv_time_T_PV = 1.8;
  double pv_gain_K_PV = 1.0;
  double wt_time_T_WT = 1.5;
  double wt_gain_K_WT = 1.0;

  void validate() const;
};

// Symmetric synchronizing-torque coefficients, zero diagonal, zero where no
// tie exists.
struct TieLineTopology {
  Eigen::MatrixXd coeff;

  static TieLineTopology decoupled(int num_areas);

  int num_areas() const { return static_cast<int>(coeff.rows()); }
  double row_sum(int area) const { return coeff.row(area).sum(); }
  void validate() const;
};

struct PlantMatrices {
  Mat7 A0 = Mat7::Zero();
  Vec7 B0 = Vec7::Zero();
  Mat73 psi0 = Mat73::Zero();
  RowVec7 surface_row = RowVec7::Zero(); // theta_i, must give theta*B0 != 0

  double surface_gain() const { return (surface_row * B0)(0); }
};

struct DisturbanceInput {
  double load = 0.0; // dP_L
  double pv = 0.0;   // dP_phi
  double wind = 0.0; // dP_wind

  Eigen::Vector3d vec() const { return {load, pv, wind}; }
};

struct MultiAreaModel {
  std::vector<PlantMatrices> areas;
  TieLineTopology ties;

  int num_areas() const { return static_cast<int>(areas.size()); }
  void validate() const;
};

// Equivalent-area constants from individual generator data: arithmetic mean
// for the time constants, rating-weighted mean for H and R.
AreaParameters aggregate_area_parameters(std::span<const GeneratorParameters> generators,
                                         double damping_D_eqv);

PlantMatrices build_plant_matrices(const AreaParameters& params, double tie_row_sum);

// Coupled derivative of the full multi-area system. The tie-power row is
// always evaluated from the topology, 2*pi*sum_j T_ij*(df_i - df_j), so the
// interchange sum is conserved exactly for symmetric T; the remaining rows
// use the per-area matrices.
Eigen::VectorXd plant_derivative(const Eigen::VectorXd& state,
                                 std::span<const double> controls,
                                 std::span<const DisturbanceInput> disturbances,
                                 const MultiAreaModel& model);

} // namespace lfc

#endif // LFC_PLANT_HPP_
