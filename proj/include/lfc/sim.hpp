#ifndef LFC_SIM_HPP_
#define LFC_SIM_HPP_

#include "lfc/control.hpp"
#include "lfc/plant.hpp"

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <variant>
#include <vector>

namespace lfc {

struct SimDivergedError : std::runtime_error {
  SimDivergedError(double t, int index, const std::string& what)
      : std::runtime_error(what), time_s(t), state_index(index) {}
  double time_s;
  int state_index;
};

// Piecewise-constant channel profile; level is 0 outside all segments.
// Segments are half-open [start_s, end_s).
struct Segment {
  double start_s = 0.0;
  double end_s = 0.0;
  double level_pu = 0.0;
};

struct ChannelProfile {
  std::vector<Segment> segments;

  double level_at(double t) const;
  void validate(double horizon_s) const;
};

struct AreaSchedule {
  ChannelProfile load;
  ChannelProfile pv;
  ChannelProfile wind;
};

struct DisturbanceSchedule {
  std::vector<AreaSchedule> areas;
  double noise_std = 0.0; // pu, per channel per control step
  std::uint64_t noise_seed = 0;

  void validate(double horizon_s) const;
  // Sorted unique segment start/end times across all channels.
  std::vector<double> edge_times() const;
};

// Deterministic seeded Gaussian source (xorshift + Box-Muller), so traces
// are reproducible across platforms.
class GaussianNoise {
public:
  explicit GaussianNoise(std::uint64_t seed);
  double next(); // standard normal draw

private:
  double uniform();
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Scheduled level per channel, plus one Gaussian draw per channel when a
// noise source is supplied (draw order: per area, then load/pv/wind).
std::vector<DisturbanceInput> disturbance_at(const DisturbanceSchedule& schedule,
                                             double t, GaussianNoise* noise);

struct GitsmcChoice {
  GitsmcGains gains;
};

struct PiChoice {
  PiGains gains;
  double frequency_bias_beta = 0.0;
};

using ControllerChoice = std::variant<GitsmcChoice, PiChoice>;

struct ScenarioConfig {
  double horizon_s = 0.0;
  double dt_s = 0.005;
  MultiAreaModel model;
  std::vector<ControllerChoice> controllers; // one per area
  DisturbanceSchedule schedule;
  Eigen::VectorXd initial_state;   // empty = zeros
  double divergence_limit = 1e3;   // pu, abort threshold on any state
  double controller_hold_s = 0.0;  // 0 = quasi-continuous controller

  void validate() const;
};

struct SimTrace {
  double dt_s = 0.0;
  int num_areas = 0;
  std::vector<double> time;
  std::vector<Eigen::VectorXd> states;                    // 7n per sample
  std::vector<std::vector<double>> mu;                    // [sample][area]
  std::vector<std::vector<double>> theta;                 // [sample][area]
  std::vector<std::vector<double>> lyapunov;              // theta^2/2
  std::vector<std::vector<DisturbanceInput>> disturbances;
  std::vector<double> event_times; // schedule step edges

  int num_samples() const { return static_cast<int>(time.size()); }
  double state_at(int sample, int area, int index) const {
    return states[sample](area * kStatesPerArea + index);
  }
};

// One classical RK4 step with the supplied derivative; throws
// SimDivergedError when the derivative goes non-finite.
Eigen::VectorXd rk4_step(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& deriv,
                         const Eigen::VectorXd& state, double dt, double t_for_error = 0.0);

SimTrace run_scenario(const ScenarioConfig& config);

struct ReachingReport {
  // Per area: fraction of counted samples with theta*theta_dot >= 0 while
  // |theta| > delta, and the number of samples counted.
  std::vector<double> violation_fraction;
  std::vector<long> counted;
  std::vector<long> violations;
};

ReachingReport reaching_monitor(const SimTrace& trace, double delta,
                                double exclusion_window_s);

struct UncertaintyTrace {
  // sigma_i(t) = xdot_i - A0*x_i - B0*mu_i, reconstructed by central
  // differences on the interior samples.
  std::vector<std::vector<double>> sigma_norm; // [area][interior sample]
  std::vector<double> max_norm;                // per area
  std::vector<double> declared_bound;          // zeta_i (0 = none declared)
  std::vector<bool> bound_holds;
};

UncertaintyTrace residual_uncertainty(const SimTrace& trace, const MultiAreaModel& model,
                                      std::span<const double> zeta = {});

// Time for the terminal subsystem xdot = -lambda*sgn(x)|x|^alpha to decay
// from |x(0)| = x0_mag to the threshold eps.
double finite_time_estimate(double x0_mag, double eps, double lambda, double alpha);

} // namespace lfc

#endif // LFC_SIM_HPP_
