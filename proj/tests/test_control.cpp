#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lfc/bench39.hpp"
#include "lfc/control.hpp"
#include "lfc/plant.hpp"

#include <cmath>
#include <random>

using namespace lfc;

namespace {

// theta*B0 = 1 with everything else zero, for hand-computable laws.
PlantMatrices unit_gain_model() {
  PlantMatrices m;
  m.B0(kGovernor) = 1.0;
  m.surface_row(kGovernor) = 1.0;
  return m;
}

Vec7 random_state(std::uint64_t seed, double scale = 0.5) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-scale, scale);
  Vec7 x;
  for (int k = 0; k < 7; ++k) x(k) = dist(rng);
  return x;
}

} // namespace

TEST_CASE("signed_power fixed points and odd extension") {
  CHECK(signed_power(0.0, 1.7) == 0.0);
  CHECK(signed_power(1.0, 1.7) == 1.0);
  // 2^1.7 = exp(1.7 ln 2)
  CHECK(signed_power(-2.0, 1.7) ==
        doctest::Approx(-std::exp(1.7 * std::log(2.0))).epsilon(1e-12));
  CHECK(signed_power(-2.0, 1.7) == doctest::Approx(-3.24901).epsilon(1e-5));
  CHECK_THROWS_AS(signed_power(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("signed_power inverts through 1/alpha") {
  const Vec7 x = random_state(3, 2.0);
  const Vec7 back = signed_power(signed_power(x, 1.7), 1.0 / 1.7);
  CHECK((back - x).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("saturation and its pure-sign limit") {
  CHECK(saturate(0.0, 1e-3) == 0.0);
  CHECK(saturate(0.5e-3, 1e-3) == doctest::Approx(0.5));
  CHECK(saturate(2e-3, 1e-3) == 1.0);
  CHECK(saturate(-2e-3, 1e-3) == -1.0);
  CHECK(saturate(0.3, 0.0) == 1.0);
  CHECK(saturate(-0.3, 0.0) == -1.0);
  CHECK(saturate(0.0, 0.0) == 0.0);
  // continuity at the layer edge
  CHECK(saturate(std::nextafter(1e-3, 0.0), 1e-3) ==
        doctest::Approx(saturate(std::nextafter(1e-3, 1.0), 1e-3)).epsilon(1e-9));
}

TEST_CASE("sliding surface examples") {
  const GitsmcGains gains;
  ControllerState cs;
  CHECK(sliding_surface(Vec7::Zero(), cs, RowVec7::Zero(), gains) == 0.0);

  RowVec7 theta = RowVec7::Zero();
  theta(kGovernor) = 1.0 / 12.43;
  Vec7 x = Vec7::Zero();
  x(kGovernor) = 12.43;
  CHECK(sliding_surface(x, cs, theta, gains) == doctest::Approx(1.0));

  // one rectangle-rule update grows theta by theta_row*(l1*x + l2*x^a)*dt
  const double dt = 0.01;
  cs.integral_x = x * dt;
  cs.integral_xalpha = signed_power(x, gains.alpha) * dt;
  const double grown = sliding_surface(x, cs, theta, gains);
  const double expect =
      (theta * x)(0) + dt * (gains.lambda1 * (theta * x)(0) +
                             gains.lambda2 * (theta * signed_power(x, gains.alpha))(0));
  CHECK(grown == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("published surfaces give unit products for all four areas") {
  for (const auto& m : benchmark_data().published) {
    CHECK(m.surface_gain() == doctest::Approx(1.0).epsilon(1e-3));
  }
}

TEST_CASE("equivalent control against a duplicate formula evaluation") {
  const GitsmcGains gains;
  const PlantMatrices& m = benchmark_data().published[0];
  CHECK(equivalent_control(Vec7::Zero(), m, gains) == 0.0);

  const Vec7 x = random_state(5);
  const double expect = -((m.surface_row * (m.A0 * x))(0) +
                          gains.lambda1 * (m.surface_row * x)(0) +
                          gains.lambda2 * (m.surface_row * signed_power(x, gains.alpha))(0)) /
                        (m.surface_row * m.B0)(0);
  CHECK(equivalent_control(x, m, gains) == doctest::Approx(expect).epsilon(1e-12));

  PlantMatrices singular = m;
  singular.surface_row = RowVec7::Zero();
  CHECK_THROWS_AS(equivalent_control(x, singular, gains), std::domain_error);
}

TEST_CASE("switching control hand example") {
  GitsmcGains gains;
  gains.eta1 = 2.0;
  gains.eta2 = 0.5;
  gains.boundary_eps = 1e-3;
  const PlantMatrices m = unit_gain_model();
  CHECK(switching_control(0.0, m, gains) == 0.0);
  CHECK(switching_control(0.1, m, gains) == doctest::Approx(-0.7));
  // continuity across the layer edge
  const double lo = switching_control(std::nextafter(1e-3, 0.0), m, gains);
  const double hi = switching_control(std::nextafter(1e-3, 1.0), m, gains);
  CHECK(lo == doctest::Approx(hi).epsilon(1e-9));
}

TEST_CASE("gitsmc_step composes the three sub-operations") {
  const GitsmcGains gains;
  const PlantMatrices& m = benchmark_data().published[1];
  const Vec7 x = random_state(9);
  const double dt = 0.005;

  ControllerState cs;
  const ControlSignal sig = gitsmc_step(x, cs, dt, m, gains);

  ControllerState by_hand;
  by_hand.integral_x = x * dt;
  by_hand.integral_xalpha = signed_power(x, gains.alpha) * dt;
  const double theta = sliding_surface(x, by_hand, m.surface_row, gains);
  CHECK(sig.theta == doctest::Approx(theta).epsilon(1e-14));
  CHECK(sig.mu_eq == doctest::Approx(equivalent_control(x, m, gains)).epsilon(1e-14));
  CHECK(sig.mu_sw == doctest::Approx(switching_control(theta, m, gains)).epsilon(1e-14));
  CHECK(sig.mu == sig.mu_eq + sig.mu_sw);

  // determinism from fresh state
  ControllerState cs2;
  const ControlSignal again = gitsmc_step(x, cs2, dt, m, gains);
  CHECK(again.mu == sig.mu);
  CHECK(again.theta == sig.theta);

  CHECK_THROWS_AS(gitsmc_step(x, cs, 0.0, m, gains), std::invalid_argument);
}

TEST_CASE("zero state yields zero control") {
  const GitsmcGains gains;
  ControllerState cs;
  const ControlSignal sig =
      gitsmc_step(Vec7::Zero(), cs, 0.005, benchmark_data().published[0], gains);
  CHECK(sig.mu == 0.0);
  CHECK(sig.theta == 0.0);
}

TEST_CASE("odd symmetry of the full law") {
  const GitsmcGains gains;
  const PlantMatrices& m = benchmark_data().published[2];
  const Vec7 x = random_state(13);
  ControllerState cs_pos, cs_neg;
  const ControlSignal pos = gitsmc_step(x, cs_pos, 0.005, m, gains);
  const ControlSignal neg = gitsmc_step(-x, cs_neg, 0.005, m, gains);
  CHECK(neg.theta == doctest::Approx(-pos.theta).epsilon(1e-12));
  CHECK(neg.mu_eq == doctest::Approx(-pos.mu_eq).epsilon(1e-12));
  CHECK(neg.mu_sw == doctest::Approx(-pos.mu_sw).epsilon(1e-12));
}

TEST_CASE("control saturation clamp") {
  GitsmcGains gains;
  gains.mu_max = 0.01;
  const PlantMatrices& m = benchmark_data().published[0];
  ControllerState cs;
  const ControlSignal sig = gitsmc_step(random_state(21), cs, 0.005, m, gains);
  CHECK(std::abs(sig.mu) <= 0.01);
}

TEST_CASE("on-surface theta dynamics follow the reaching law") {
  // With mu = mu_eq + mu_sw on the nominal decoupled plant,
  // theta_dot = theta*xdot + l1*theta*x + l2*theta*x^a reduces to
  // -eta1*theta - eta2*sat(theta) algebraically.
  GitsmcGains gains;
  gains.eta2 = 6.0;
  gains.boundary_eps = 0.2;
  AreaParameters p;
  p.inertia_H = 10.0;
  p.droop_R = 0.0471;
  p.frequency_bias_beta = 1.0 + 1.0 / 0.0471;
  p.turbine_T_t = 0.3742;
  p.governor_T_g = 0.0804;
  const PlantMatrices m = build_plant_matrices(p, 0.0);

  const Vec7 x = random_state(17, 0.3);
  ControllerState cs;
  cs.integral_x = random_state(18, 0.1);
  cs.integral_xalpha = random_state(19, 0.1);
  const double theta = sliding_surface(x, cs, m.surface_row, gains);
  const double mu = equivalent_control(x, m, gains) + switching_control(theta, m, gains);

  const Vec7 xdot = m.A0 * x + m.B0 * mu;
  const double theta_dot =
      (m.surface_row * xdot)(0) + gains.lambda1 * (m.surface_row * x)(0) +
      gains.lambda2 * (m.surface_row * signed_power(x, gains.alpha))(0);
  const double reaching = -gains.eta1 * theta - gains.eta2 * saturate(theta, gains.boundary_eps);
  CHECK(theta_dot == doctest::Approx(reaching).epsilon(1e-10));
}

TEST_CASE("pi_step analytic integrals") {
  PiGains gains;
  gains.kp = 1.5;
  gains.ki = 0.8;
  ControllerState cs;
  CHECK(pi_step(0.0, 0.0, 21.0, gains, cs, 0.01) == 0.0);

  // constant ACE = c over T = 1 s of rectangle steps
  const double beta = 20.0;
  const double df = 0.01;
  const double tie = 0.05;
  const double c = beta * df + tie;
  double mu = 0.0;
  cs = ControllerState{};
  for (int k = 0; k < 100; ++k) mu = pi_step(df, tie, beta, gains, cs, 0.01);
  CHECK(mu == doctest::Approx(-(gains.kp * c + gains.ki * c * 1.0)).epsilon(1e-12));

  // anti-windup clamp
  gains.integral_limit = 0.1;
  cs = ControllerState{};
  for (int k = 0; k < 1000; ++k) mu = pi_step(df, tie, beta, gains, cs, 0.01);
  CHECK(mu == doctest::Approx(-(gains.kp * c + gains.ki * 0.1)).epsilon(1e-12));

  CHECK_THROWS_AS(pi_step(df, tie, beta, gains, cs, -0.01), std::invalid_argument);
}

TEST_CASE("gains validation") {
  GitsmcGains g;
  g.alpha = 1.0;
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);
  g = GitsmcGains{};
  g.alpha = 2.0;
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);
  g = GitsmcGains{};
  g.eta2 = 0.0;
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);
  g = GitsmcGains{};
  g.boundary_eps = -1.0;
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);
  CHECK_NOTHROW(GitsmcGains{}.validate());
}
