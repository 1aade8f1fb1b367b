#include "lfc/sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace lfc {

double ChannelProfile::level_at(double t) const {
  for (const auto& s : segments) {
    if (t >= s.start_s && t < s.end_s) return s.level_pu;
  }
  return 0.0;
}

void ChannelProfile::validate(double horizon_s) const {
  for (const auto& s : segments) {
    if (!(s.end_s > s.start_s)) {
      throw std::invalid_argument("schedule segment must have end > start");
    }
    if (s.start_s < 0.0 || s.start_s > horizon_s) {
      throw std::invalid_argument("schedule segment outside [0, horizon]");
    }
    for (const auto& o : segments) {
      if (&o != &s && s.start_s < o.end_s && o.start_s < s.end_s) {
        throw std::invalid_argument("overlapping schedule segments on one channel");
      }
    }
  }
}

void DisturbanceSchedule::validate(double horizon_s) const {
  if (noise_std < 0.0) {
    throw std::invalid_argument("noise_std must be non-negative");
  }
  for (const auto& a : areas) {
    a.load.validate(horizon_s);
    a.pv.validate(horizon_s);
    a.wind.validate(horizon_s);
  }
}

std::vector<double> DisturbanceSchedule::edge_times() const {
  std::vector<double> edges;
  for (const auto& a : areas) {
    for (const auto* ch : {&a.load, &a.pv, &a.wind}) {
      for (const auto& s : ch->segments) {
        edges.push_back(s.start_s);
        edges.push_back(s.end_s);
      }
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

GaussianNoise::GaussianNoise(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

double GaussianNoise::uniform() {
  // xorshift64*
  state_ ^= state_ >> 12;
  state_ ^= state_ << 25;
  state_ ^= state_ >> 27;
  const std::uint64_t z = state_ * 0x2545f4914f6cdd1dULL;
  const double u = static_cast<double>(z >> 11) * 0x1.0p-53;
  return u > 0.0 ? u : 0x1.0p-53;
}

double GaussianNoise::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(phi);
  has_spare_ = true;
  return r * std::cos(phi);
}

std::vector<DisturbanceInput> disturbance_at(const DisturbanceSchedule& schedule,
                                             double t, GaussianNoise* noise) {
  std::vector<DisturbanceInput> out(schedule.areas.size());
  for (std::size_t i = 0; i < schedule.areas.size(); ++i) {
    const auto& a = schedule.areas[i];
    out[i].load = a.load.level_at(t);
    out[i].pv = a.pv.level_at(t);
    out[i].wind = a.wind.level_at(t);
    if (noise != nullptr && schedule.noise_std > 0.0) {
      out[i].load += schedule.noise_std * noise->next();
      out[i].pv += schedule.noise_std * noise->next();
      out[i].wind += schedule.noise_std * noise->next();
    }
  }
  return out;
}

void ScenarioConfig::validate() const {
  if (!(dt_s > 0.0)) {
    throw std::invalid_argument("dt_s must be positive");
  }
  if (!(horizon_s >= dt_s)) {
    throw std::invalid_argument("horizon_s must be at least dt_s");
  }
  model.validate();
  if (static_cast<int>(controllers.size()) != model.num_areas()) {
    throw std::invalid_argument("one controller per area is required");
  }
  if (static_cast<int>(schedule.areas.size()) != model.num_areas()) {
    throw std::invalid_argument("one disturbance schedule per area is required");
  }
  schedule.validate(horizon_s);
  if (initial_state.size() != 0 &&
      initial_state.size() != model.num_areas() * kStatesPerArea) {
    throw std::invalid_argument("initial_state has wrong dimension");
  }
  for (const auto& c : controllers) {
    if (const auto* g = std::get_if<GitsmcChoice>(&c)) g->gains.validate();
  }
  if (controller_hold_s < 0.0) {
    throw std::invalid_argument("controller_hold_s must be non-negative");
  }
}

Eigen::VectorXd rk4_step(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& deriv,
                         const Eigen::VectorXd& state, double dt, double t_for_error) {
  const auto checked = [&](const Eigen::VectorXd& y) {
    Eigen::VectorXd d = deriv(y);
    for (Eigen::Index k = 0; k < d.size(); ++k) {
      if (!std::isfinite(d(k))) {
        throw SimDivergedError(t_for_error, static_cast<int>(k),
                               "non-finite derivative at t=" + std::to_string(t_for_error) +
                                   ", state index " + std::to_string(k));
      }
    }
    return d;
  };
  if (!(dt > 0.0)) {
    throw std::invalid_argument("rk4_step: dt must be positive");
  }
  const Eigen::VectorXd k1 = checked(state);
  const Eigen::VectorXd k2 = checked(state + 0.5 * dt * k1);
  const Eigen::VectorXd k3 = checked(state + 0.5 * dt * k2);
  const Eigen::VectorXd k4 = checked(state + dt * k3);
  return state + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

namespace {

// Closed-loop evaluation on the augmented vector y = [x (7n) | aux (2n)].
// GITSMC areas carry the two surface integrals projected through the surface
// row; PI areas carry the ACE integral in the first slot.
struct ClosedLoop {
  const ScenarioConfig* cfg;
  int n;

  int aux_base() const { return n * kStatesPerArea; }

  void evaluate(const Eigen::VectorXd& y, int area, double& mu, double& theta) const {
    const auto x = y.segment<kStatesPerArea>(area * kStatesPerArea);
    const double s1 = y(aux_base() + 2 * area);
    const double s2 = y(aux_base() + 2 * area + 1);
    const auto& m = cfg->model.areas[area];
    if (const auto* g = std::get_if<GitsmcChoice>(&cfg->controllers[area])) {
      const double proj = (m.surface_row * x)(0);
      theta = proj + g->gains.lambda1 * s1 + g->gains.lambda2 * s2;
      mu = equivalent_control(x, m, g->gains) + switching_control(theta, m, g->gains);
      if (g->gains.mu_max > 0.0) mu = std::clamp(mu, -g->gains.mu_max, g->gains.mu_max);
    } else {
      const auto& p = std::get<PiChoice>(cfg->controllers[area]);
      const double ace = p.frequency_bias_beta * x(kFreq) + x(kTiePower);
      theta = 0.0;
      mu = -(p.gains.kp * ace + p.gains.ki * s1);
    }
  }

  Eigen::VectorXd derivative(const Eigen::VectorXd& y,
                             std::span<const DisturbanceInput> dist) const {
    std::vector<double> controls(n);
    Eigen::VectorXd dy(y.size());
    for (int i = 0; i < n; ++i) {
      double mu = 0.0, theta = 0.0;
      evaluate(y, i, mu, theta);
      controls[i] = mu;

      const auto x = y.segment<kStatesPerArea>(i * kStatesPerArea);
      const auto& m = cfg->model.areas[i];
      double ds1 = 0.0, ds2 = 0.0;
      if (const auto* g = std::get_if<GitsmcChoice>(&cfg->controllers[i])) {
        ds1 = (m.surface_row * x)(0);
        ds2 = (m.surface_row * signed_power(x, g->gains.alpha))(0);
      } else {
        const auto& p = std::get<PiChoice>(cfg->controllers[i]);
        const double ace = p.frequency_bias_beta * x(kFreq) + x(kTiePower);
        const double s1 = y(aux_base() + 2 * i);
        ds1 = ace;
        if (p.gains.integral_limit > 0.0 && std::abs(s1) >= p.gains.integral_limit &&
            s1 * ace > 0.0) {
          ds1 = 0.0; // anti-windup
        }
      }
      dy(aux_base() + 2 * i) = ds1;
      dy(aux_base() + 2 * i + 1) = ds2;
    }
    dy.head(n * kStatesPerArea) =
        plant_derivative(y.head(n * kStatesPerArea), controls, dist, cfg->model);
    return dy;
  }
};

} // namespace

SimTrace run_scenario(const ScenarioConfig& config) {
  config.validate();
  const int n = config.model.num_areas();
  const int num_steps = static_cast<int>(std::floor(config.horizon_s / config.dt_s + 0.5));

  SimTrace trace;
  trace.dt_s = config.dt_s;
  trace.num_areas = n;
  trace.event_times = config.schedule.edge_times();
  trace.time.reserve(num_steps + 1);
  trace.states.reserve(num_steps + 1);

  Eigen::VectorXd y = Eigen::VectorXd::Zero(n * kStatesPerArea + 2 * n);
  if (config.initial_state.size() != 0) {
    y.head(n * kStatesPerArea) = config.initial_state;
  }

  ClosedLoop loop{&config, n};
  GaussianNoise noise(config.schedule.noise_seed);
  GaussianNoise* noise_ptr = config.schedule.noise_std > 0.0 ? &noise : nullptr;

  // Discrete-actuation state (controller_hold_s > 0 only).
  const bool zoh = config.controller_hold_s > 0.0;
  const int hold_steps =
      zoh ? std::max(1, static_cast<int>(std::floor(config.controller_hold_s / config.dt_s + 0.5)))
          : 1;
  std::vector<ControllerState> held_cs(n);
  std::vector<double> held_mu(n, 0.0), held_theta(n, 0.0);

  for (int k = 0; k <= num_steps; ++k) {
    const double t = k * config.dt_s;
    const auto dist = disturbance_at(config.schedule, t, noise_ptr);

    std::vector<double> mu(n), theta(n), lyap(n);
    if (zoh) {
      if (k % hold_steps == 0 && k < num_steps) {
        for (int i = 0; i < n; ++i) {
          const Vec7 x = y.segment<kStatesPerArea>(i * kStatesPerArea);
          if (const auto* g = std::get_if<GitsmcChoice>(&config.controllers[i])) {
            const ControlSignal sig = gitsmc_step(x, held_cs[i], hold_steps * config.dt_s,
                                                  config.model.areas[i], g->gains);
            held_mu[i] = sig.mu;
            held_theta[i] = sig.theta;
          } else {
            const auto& p = std::get<PiChoice>(config.controllers[i]);
            held_mu[i] = pi_step(x(kFreq), x(kTiePower), p.frequency_bias_beta, p.gains,
                                 held_cs[i], hold_steps * config.dt_s);
            held_theta[i] = 0.0;
          }
        }
      }
      mu = held_mu;
      theta = held_theta;
    } else {
      for (int i = 0; i < n; ++i) loop.evaluate(y, i, mu[i], theta[i]);
    }
    for (int i = 0; i < n; ++i) lyap[i] = 0.5 * theta[i] * theta[i];

    trace.time.push_back(t);
    trace.states.push_back(y.head(n * kStatesPerArea));
    trace.mu.push_back(mu);
    trace.theta.push_back(theta);
    trace.lyapunov.push_back(lyap);
    trace.disturbances.push_back(dist);

    if (k == num_steps) break;

    if (zoh) {
      const std::vector<double> mu_hold = held_mu;
      y = rk4_step(
          [&](const Eigen::VectorXd& yy) {
            Eigen::VectorXd dy = Eigen::VectorXd::Zero(yy.size());
            dy.head(n * kStatesPerArea) =
                plant_derivative(yy.head(n * kStatesPerArea), mu_hold, dist, config.model);
            return dy;
          },
          y, config.dt_s, t);
    } else {
      y = rk4_step([&](const Eigen::VectorXd& yy) { return loop.derivative(yy, dist); }, y,
                   config.dt_s, t);
    }

    for (int idx = 0; idx < n * kStatesPerArea; ++idx) {
      if (!(std::abs(y(idx)) <= config.divergence_limit)) {
        throw SimDivergedError(t + config.dt_s, idx,
                               "simulation diverged at t=" + std::to_string(t + config.dt_s) +
                                   ", state index " + std::to_string(idx));
      }
    }
  }
  return trace;
}

ReachingReport reaching_monitor(const SimTrace& trace, double delta,
                                double exclusion_window_s) {
  if (trace.num_samples() < 2) {
    throw std::invalid_argument("reaching_monitor: trace needs at least 2 samples");
  }
  ReachingReport report;
  report.violation_fraction.assign(trace.num_areas, 0.0);
  report.counted.assign(trace.num_areas, 0);
  report.violations.assign(trace.num_areas, 0);

  const auto excluded = [&](double t) {
    for (double e : trace.event_times) {
      if (t >= e && t - e < exclusion_window_s) return true;
    }
    return false;
  };

  for (int k = 1; k + 1 < trace.num_samples(); ++k) {
    if (excluded(trace.time[k])) continue;
    for (int a = 0; a < trace.num_areas; ++a) {
      const double th = trace.theta[k][a];
      const double thd = (trace.theta[k + 1][a] - trace.theta[k - 1][a]) / (2.0 * trace.dt_s);
      ++report.counted[a];
      if (std::abs(th) > delta && th * thd >= 0.0) ++report.violations[a];
    }
  }
  for (int a = 0; a < trace.num_areas; ++a) {
    report.violation_fraction[a] =
        report.counted[a] > 0
            ? static_cast<double>(report.violations[a]) / static_cast<double>(report.counted[a])
            : 0.0;
  }
  return report;
}

UncertaintyTrace residual_uncertainty(const SimTrace& trace, const MultiAreaModel& model,
                                      std::span<const double> zeta) {
  const int n = trace.num_areas;
  UncertaintyTrace out;
  out.sigma_norm.assign(n, {});
  out.max_norm.assign(n, 0.0);
  out.declared_bound.assign(n, 0.0);
  out.bound_holds.assign(n, true);
  for (int a = 0; a < n && a < static_cast<int>(zeta.size()); ++a) {
    out.declared_bound[a] = zeta[a];
  }

  for (int k = 1; k + 1 < trace.num_samples(); ++k) {
    const Eigen::VectorXd xdot =
        (trace.states[k + 1] - trace.states[k - 1]) / (2.0 * trace.dt_s);
    for (int a = 0; a < n; ++a) {
      const Vec7 x = trace.states[k].segment<kStatesPerArea>(a * kStatesPerArea);
      const Vec7 sigma = xdot.segment<kStatesPerArea>(a * kStatesPerArea) -
                         model.areas[a].A0 * x - model.areas[a].B0 * trace.mu[k][a];
      const double norm = sigma.norm();
      out.sigma_norm[a].push_back(norm);
      out.max_norm[a] = std::max(out.max_norm[a], norm);
    }
  }
  for (int a = 0; a < n; ++a) {
    if (out.declared_bound[a] > 0.0 && out.max_norm[a] > out.declared_bound[a]) {
      out.bound_holds[a] = false;
    }
  }
  return out;
}

double finite_time_estimate(double x0_mag, double eps, double lambda, double alpha) {
  if (!(eps > 0.0)) {
    throw std::invalid_argument("finite_time_estimate: eps must be positive");
  }
  if (!(x0_mag >= eps)) {
    throw std::invalid_argument("finite_time_estimate: requires x0_mag >= eps");
  }
  if (!(alpha > 1.0) || !(lambda > 0.0)) {
    throw std::invalid_argument("finite_time_estimate: requires alpha > 1 and lambda > 0");
  }
  return (std::pow(eps, 1.0 - alpha) - std::pow(x0_mag, 1.0 - alpha)) /
         (lambda * (alpha - 1.0));
}

} // namespace lfc
