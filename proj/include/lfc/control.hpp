#ifndef LFC_CONTROL_HPP_
#define LFC_CONTROL_HPP_

#include "lfc/plant.hpp"

namespace lfc {

struct GitsmcGains {
  double lambda1 = 24.0;     // 1/s, linear integral term
  double lambda2 = 24.0;     // 1/s, terminal integral term
  double alpha = 1.7;        // fractional exponent, 1 < alpha < 2
  double eta1 = 2.0;         // 1/s, exponential reaching gain
  double eta2 = 0.5;         // pu/s, switching gain
  double boundary_eps = 1e-3; // pu, sign-smoothing half-width; 0 = pure sign
  double mu_max = 0.0;       // pu, symmetric control limit; 0 = off

  void validate() const;
};

struct PiGains {
  double kp = 0.0;
  double ki = 0.0;
  double integral_limit = 0.0; // pu, symmetric anti-windup clamp; 0 = off
};

struct ControllerState {
  Vec7 integral_x = Vec7::Zero();      // int x dt
  Vec7 integral_xalpha = Vec7::Zero(); // int sgn(x)|x|^alpha dt
  double pi_integral = 0.0;            // int ACE dt (PI only)
};

struct ControlSignal {
  double mu = 0.0;
  double mu_eq = 0.0;
  double mu_sw = 0.0;
  double theta = 0.0; // sliding variable
};

double signed_power(double x, double alpha);
Vec7 signed_power(const Vec7& x, double alpha);

// sat(theta) with linear boundary layer of half-width eps; eps = 0 gives the
// pure sign function with sat(0) := 0.
double saturate(double theta, double eps);

double sliding_surface(const Vec7& x, const ControllerState& cs,
                       const RowVec7& surface_row, const GitsmcGains& gains);

double equivalent_control(const Vec7& x, const PlantMatrices& model,
                          const GitsmcGains& gains);

double switching_control(double theta, const PlantMatrices& model,
                         const GitsmcGains& gains);

// One rectangle-rule controller step: advances the surface integrals by dt,
// then evaluates the total law mu = mu_eq + mu_sw at the updated surface.
ControlSignal gitsmc_step(const Vec7& x, ControllerState& cs, double dt,
                          const PlantMatrices& model, const GitsmcGains& gains);

// Classical PI on the area control error ACE = beta*df + dP_tie.
double pi_step(double delta_f, double delta_p_tie, double beta,
               const PiGains& gains, ControllerState& cs, double dt);

} // namespace lfc

#endif // LFC_CONTROL_HPP_
