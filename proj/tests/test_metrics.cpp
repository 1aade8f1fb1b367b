#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lfc/metrics.hpp"

#include <cmath>
#include <numbers>

using namespace lfc;

namespace {

SimTrace trace_from(double dt, const std::vector<double>& df,
                    const std::vector<double>& tie = {}) {
  SimTrace trace;
  trace.dt_s = dt;
  trace.num_areas = 1;
  for (std::size_t k = 0; k < df.size(); ++k) {
    trace.time.push_back(dt * static_cast<double>(k));
    Eigen::VectorXd x = Eigen::VectorXd::Zero(kStatesPerArea);
    x(kFreq) = df[k];
    if (!tie.empty()) x(kTiePower) = tie[k];
    trace.states.push_back(x);
    trace.mu.push_back({0.0});
    trace.theta.push_back({0.0});
    trace.lyapunov.push_back({0.0});
    trace.disturbances.push_back({DisturbanceInput{}});
  }
  return trace;
}

} // namespace

TEST_CASE("all-zero trace gives zero indices") {
  const IndexReport r = integral_indices(trace_from(0.01, std::vector<double>(101, 0.0)));
  CHECK(r.itae == 0.0);
  CHECK(r.itse == 0.0);
  CHECK(r.ise == 0.0);
  CHECK(r.iae == 0.0);
  CHECK_THROWS_AS(integral_indices(SimTrace{}), std::invalid_argument);
}

TEST_CASE("constant error matches the closed forms") {
  const double c = 0.02, T = 10.0, dt = 0.005;
  const int n = static_cast<int>(T / dt) + 1;
  const IndexReport r = integral_indices(trace_from(dt, std::vector<double>(n, c)));
  CHECK(r.iae == doctest::Approx(c * T).epsilon(1e-6));
  CHECK(r.itae == doctest::Approx(c * T * T / 2.0).epsilon(1e-6));
  CHECK(r.ise == doctest::Approx(c * c * T).epsilon(1e-6));
  CHECK(r.itse == doctest::Approx(c * c * T * T / 2.0).epsilon(1e-6));
}

TEST_CASE("sine profile against the analytic integral") {
  const double dt = 0.005, T = 2.0 * std::numbers::pi;
  const int n = static_cast<int>(T / dt) + 1;
  std::vector<double> df(n);
  for (int k = 0; k < n; ++k) df[k] = std::sin(dt * k);
  const IndexReport r = integral_indices(trace_from(dt, df));
  // int_0^{2pi} |sin| = 4, int_0^{2pi} sin^2 = pi
  CHECK(r.iae == doctest::Approx(4.0).epsilon(1e-4));
  CHECK(r.ise == doctest::Approx(std::numbers::pi).epsilon(1e-4));
}

TEST_CASE("homogeneity in the error amplitude") {
  const double dt = 0.01;
  const int n = 501;
  std::vector<double> df(n), tie(n);
  for (int k = 0; k < n; ++k) {
    df[k] = 0.01 * std::sin(0.37 * k * dt);
    tie[k] = 0.02 * std::cos(0.61 * k * dt);
  }
  const IndexReport base = integral_indices(trace_from(dt, df));
  const double scale = 3.0;
  std::vector<double> df3 = df;
  for (auto& v : df3) v *= scale;
  const IndexReport scaled = integral_indices(trace_from(dt, df3));
  CHECK(scaled.iae == doctest::Approx(scale * base.iae).epsilon(1e-12));
  CHECK(scaled.itae == doctest::Approx(scale * base.itae).epsilon(1e-12));
  CHECK(scaled.ise == doctest::Approx(scale * scale * base.ise).epsilon(1e-12));
  CHECK(scaled.itse == doctest::Approx(scale * scale * base.itse).epsilon(1e-12));

  // both frequency and tie channels enter the error
  const IndexReport with_tie = integral_indices(trace_from(dt, df, tie));
  CHECK(with_tie.iae > base.iae);
}

TEST_CASE("time weighting lower bound for late-supported error") {
  const double dt = 0.01, t1 = 3.0;
  const int n = 1001;
  std::vector<double> df(n, 0.0);
  for (int k = 0; k < n; ++k) {
    if (k * dt >= t1) df[k] = 0.01;
  }
  const IndexReport r = integral_indices(trace_from(dt, df));
  CHECK(r.itae >= t1 * r.iae * (1.0 - 1e-9));
}

TEST_CASE("grid refinement changes smooth indices below 0.1%") {
  const auto build = [](double dt) {
    const int n = static_cast<int>(20.0 / dt) + 1;
    std::vector<double> df(n);
    for (int k = 0; k < n; ++k) df[k] = 0.05 * std::exp(-0.3 * k * dt);
    return trace_from(dt, df);
  };
  const IndexReport coarse = integral_indices(build(0.01));
  const IndexReport fine = integral_indices(build(0.005));
  CHECK(std::abs(coarse.itae - fine.itae) / fine.itae < 1e-3);
  CHECK(std::abs(coarse.itse - fine.itse) / fine.itse < 1e-3);
}

TEST_CASE("transient metrics on synthetic windows") {
  SUBCASE("flat zero window") {
    const SimTrace trace = trace_from(0.01, std::vector<double>(501, 0.0));
    const double events[] = {0.0};
    const TransientReport r = transient_metrics(trace, events, 2e-4);
    REQUIRE(r.events.size() == 1);
    CHECK(r.events[0].overshoot_pu == 0.0);
    CHECK(r.events[0].undershoot_pu == 0.0);
    CHECK(r.events[0].settling_time_s == 0.0);
    CHECK(r.events[0].settled);
  }

  SUBCASE("damped exponential settles at ln(c/b)") {
    const double dt = 0.001, c = 0.05, band = 2e-4;
    const int n = 10001;
    std::vector<double> df(n);
    for (int k = 0; k < n; ++k) df[k] = c * std::exp(-k * dt);
    const SimTrace trace = trace_from(dt, df);
    const double events[] = {0.0};
    const TransientReport r = transient_metrics(trace, events, band);
    REQUIRE(r.events.size() == 1);
    CHECK(r.events[0].overshoot_pu == doctest::Approx(c));
    CHECK(r.events[0].settling_time_s ==
          doctest::Approx(std::log(c / band)).epsilon(1e-3));
    CHECK(r.events[0].settled);
  }

  SUBCASE("two events split the horizon") {
    const double dt = 0.01;
    const int n = 1001;
    std::vector<double> df(n, 0.0);
    for (int k = 500; k < n; ++k) df[k] = 0.01; // never settles after t = 5
    const SimTrace trace = trace_from(dt, df);
    const double events[] = {0.0, 5.0};
    const TransientReport r = transient_metrics(trace, events, 2e-4);
    REQUIRE(r.events.size() == 2);
    CHECK(r.events[0].overshoot_pu == 0.0);
    CHECK(r.events[1].overshoot_pu == doctest::Approx(0.01));
    CHECK(!r.events[1].settled);
  }

  SUBCASE("event outside horizon is rejected") {
    const SimTrace trace = trace_from(0.01, std::vector<double>(101, 0.0));
    const double events[] = {50.0};
    CHECK_THROWS_AS(transient_metrics(trace, events, 2e-4), std::invalid_argument);
  }
}

TEST_CASE("controller comparison percentages") {
  IndexReport test, baseline;
  test.itse = 4.430051e-7;
  baseline.itse = 8.712740e-6;
  test.ise = 1.914747e-9;
  baseline.ise = 3.441012e-8;
  test.itae = baseline.itae = 1.0;
  test.iae = baseline.iae = 1.0;
  const ComparisonReport r = compare_controllers(test, baseline);
  REQUIRE(r.indices.size() == 4);
  CHECK(r.indices[1].name == "ITSE");
  CHECK(r.indices[1].improvement_percent == doctest::Approx(94.9).epsilon(1e-3));
  CHECK(r.indices[2].name == "ISE");
  CHECK(r.indices[2].improvement_percent == doctest::Approx(94.4).epsilon(1e-3));
  CHECK(r.indices[0].improvement_percent == 0.0);

  const ComparisonReport same = compare_controllers(test, test);
  for (const auto& c : same.indices) CHECK(c.improvement_percent == 0.0);

  IndexReport zero;
  const ComparisonReport undef = compare_controllers(test, zero);
  CHECK(undef.indices[1].undefined);
  const ComparisonReport both_zero = compare_controllers(zero, zero);
  CHECK(!both_zero.indices[1].undefined);
}
