#include "lfc/control.hpp"

#include <cmath>
#include <stdexcept>

namespace lfc {

void GitsmcGains::validate() const {
  if (!(alpha > 1.0 && alpha < 2.0)) {
    throw std::invalid_argument("alpha must satisfy 1 < alpha < 2");
  }
  if (lambda1 < 0.0 || lambda2 < 0.0) {
    throw std::invalid_argument("lambda gains must be non-negative");
  }
  if (!(eta1 > 0.0) || !(eta2 > 0.0)) {
    throw std::invalid_argument("eta gains must be positive");
  }
  if (boundary_eps < 0.0) {
    throw std::invalid_argument("boundary_eps must be non-negative");
  }
  if (mu_max < 0.0) {
    throw std::invalid_argument("mu_max must be non-negative");
  }
}

double signed_power(double x, double alpha) {
  if (!(alpha > 0.0)) {
    throw std::invalid_argument("signed_power: alpha must be positive");
  }
  if (x == 0.0) return 0.0;
  return std::copysign(std::pow(std::abs(x), alpha), x);
}

Vec7 signed_power(const Vec7& x, double alpha) {
  Vec7 out;
  for (int k = 0; k < 7; ++k) out(k) = signed_power(x(k), alpha);
  return out;
}

double saturate(double theta, double eps) {
  if (eps > 0.0 && std::abs(theta) <= eps) return theta / eps;
  if (theta > 0.0) return 1.0;
  if (theta < 0.0) return -1.0;
  return 0.0;
}

double sliding_surface(const Vec7& x, const ControllerState& cs,
                       const RowVec7& surface_row, const GitsmcGains& gains) {
  return (surface_row * x)(0) + gains.lambda1 * (surface_row * cs.integral_x)(0) +
         gains.lambda2 * (surface_row * cs.integral_xalpha)(0);
}

double equivalent_control(const Vec7& x, const PlantMatrices& model,
                          const GitsmcGains& gains) {
  const double gb = model.surface_gain();
  if (gb == 0.0) {
    throw std::domain_error("equivalent_control: singular surface (theta*B0 = 0)");
  }
  const double drift = (model.surface_row * (model.A0 * x))(0) +
                       gains.lambda1 * (model.surface_row * x)(0) +
                       gains.lambda2 * (model.surface_row * signed_power(x, gains.alpha))(0);
  return -drift / gb;
}

double switching_control(double theta, const PlantMatrices& model,
                         const GitsmcGains& gains) {
  const double gb = model.surface_gain();
  if (gb == 0.0) {
    throw std::domain_error("switching_control: singular surface (theta*B0 = 0)");
  }
  return -(gains.eta1 * theta + gains.eta2 * saturate(theta, gains.boundary_eps)) / gb;
}

ControlSignal gitsmc_step(const Vec7& x, ControllerState& cs, double dt,
                          const PlantMatrices& model, const GitsmcGains& gains) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("gitsmc_step: dt must be positive");
  }
  cs.integral_x += x * dt;
  cs.integral_xalpha += signed_power(x, gains.alpha) * dt;

  ControlSignal sig;
  sig.theta = sliding_surface(x, cs, model.surface_row, gains);
  sig.mu_eq = equivalent_control(x, model, gains);
  sig.mu_sw = switching_control(sig.theta, model, gains);
  sig.mu = sig.mu_eq + sig.mu_sw;
  if (gains.mu_max > 0.0) {
    sig.mu = std::clamp(sig.mu, -gains.mu_max, gains.mu_max);
  }
  return sig;
}

double pi_step(double delta_f, double delta_p_tie, double beta,
               const PiGains& gains, ControllerState& cs, double dt) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("pi_step: dt must be positive");
  }
  const double ace = beta * delta_f + delta_p_tie;
  cs.pi_integral += ace * dt;
  if (gains.integral_limit > 0.0) {
    cs.pi_integral = std::clamp(cs.pi_integral, -gains.integral_limit, gains.integral_limit);
  }
  return -(gains.kp * ace + gains.ki * cs.pi_integral);
}

} // namespace lfc
