#ifndef LFC_SCENARIO_CONFIG_HPP_
#define LFC_SCENARIO_CONFIG_HPP_

#include "lfc/bench39.hpp"
#include "lfc/sim.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>

namespace lfc {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Line-oriented scenario files: [section] headers with key = value pairs,
// '#' comments, strict rejection of unknown sections and keys. Sections:
//   [scenario]  horizon_s, dt_s, noise_std, noise_seed, controller,
//               controller_hold_s, divergence_limit, plant (formula|published)
//   [gitsmc]    lambda1, lambda2, alpha, eta1, eta2, boundary_eps, mu_max
//   [pi]        kp, ki, integral_limit
//   [area N]    T_t, T_g, R, H, D, K_E, T_PV, K_PV, T_WT, K_WT, an optional
//               surface = w0, .., w6 (sliding row, normalized to theta*B0 = 1),
//               and the piecewise profiles load/pv/wind = start:end:level[, ...]
//   [ties]      T_i_j = coefficient
// controller_override replaces the file's controller key when non-empty
// ("gitsmc" or "pi"), so one scenario file can drive both sides of a
// comparison.
ScenarioConfig parse_scenario(const std::string& text,
                              const std::string& controller_override = "");
ScenarioConfig load_scenario_file(const std::filesystem::path& path,
                                  const std::string& controller_override = "");

// The built-in benchmark rendered in the config format above, so variants
// can be derived by editing the file.
std::string benchmark_config_text(BenchController controller);

} // namespace lfc

#endif // LFC_SCENARIO_CONFIG_HPP_
