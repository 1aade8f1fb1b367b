#include "lfc/scenario_config.hpp"

#include "lfc/trace_io.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace lfc {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid number for key '" + key + "': " + value);
  }
}

std::vector<double> parse_number_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(parse_number(key, item));
  }
  return out;
}

std::vector<Segment> parse_segments(const std::string& key, const std::string& value) {
  std::vector<Segment> segments;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    Segment seg;
    char c1 = 0, c2 = 0;
    std::istringstream is(item);
    if (!(is >> seg.start_s >> c1 >> seg.end_s >> c2 >> seg.level_pu) || c1 != ':' ||
        c2 != ':') {
      throw ConfigError("invalid segment for key '" + key + "': " + item +
                        " (expected start:end:level)");
    }
    segments.push_back(seg);
  }
  return segments;
}

using Section = std::map<std::string, std::string>;

struct ParsedFile {
  std::map<std::string, Section> sections; // in insertion-agnostic key form
};

ParsedFile tokenize(const std::string& text) {
  ParsedFile file;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("line " + std::to_string(lineno) + ": malformed section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) {
        throw ConfigError("line " + std::to_string(lineno) + ": empty section name");
      }
      file.sections[section]; // create
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos || section.empty()) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
    }
    if (!file.sections[section].emplace(key, value).second) {
      throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
  }
  return file;
}

// Consumes a key, erroring later if any key is left unconsumed.
class SectionReader {
public:
  SectionReader(std::string name, Section section)
      : name_(std::move(name)), section_(std::move(section)) {}

  bool has(const std::string& key) const { return section_.count(key) > 0; }

  double number(const std::string& key, double fallback) {
    const auto it = section_.find(key);
    if (it == section_.end()) return fallback;
    const double v = parse_number(key, it->second);
    section_.erase(it);
    return v;
  }

  std::string text(const std::string& key, const std::string& fallback) {
    const auto it = section_.find(key);
    if (it == section_.end()) return fallback;
    const std::string v = it->second;
    section_.erase(it);
    return v;
  }

  std::vector<Segment> segments(const std::string& key) {
    const auto it = section_.find(key);
    if (it == section_.end()) return {};
    auto v = parse_segments(key, it->second);
    section_.erase(it);
    return v;
  }

  std::vector<double> numbers(const std::string& key) {
    const auto it = section_.find(key);
    if (it == section_.end()) return {};
    auto v = parse_number_list(key, it->second);
    section_.erase(it);
    return v;
  }

  void finish() const {
    if (!section_.empty()) {
      throw ConfigError("unknown key '" + section_.begin()->first + "' in section [" +
                        name_ + "]");
    }
  }

private:
  std::string name_;
  Section section_;
};

} // namespace

ScenarioConfig parse_scenario(const std::string& text,
                              const std::string& controller_override) {
  ParsedFile file = tokenize(text);

  const auto take_section = [&](const std::string& name) -> Section {
    const auto it = file.sections.find(name);
    if (it == file.sections.end()) return {};
    Section s = it->second;
    file.sections.erase(it);
    return s;
  };

  if (file.sections.find("scenario") == file.sections.end()) {
    throw ConfigError("missing [scenario] section");
  }
  SectionReader scenario("scenario", take_section("scenario"));

  ScenarioConfig cfg;
  cfg.horizon_s = scenario.number("horizon_s", 0.0);
  cfg.dt_s = scenario.number("dt_s", 0.005);
  cfg.schedule.noise_std = scenario.number("noise_std", 0.0);
  cfg.schedule.noise_seed =
      static_cast<std::uint64_t>(scenario.number("noise_seed", 0.0));
  cfg.controller_hold_s = scenario.number("controller_hold_s", 0.0);
  cfg.divergence_limit = scenario.number("divergence_limit", 1e3);
  std::string controller = scenario.text("controller", "gitsmc");
  if (!controller_override.empty()) controller = controller_override;
  const std::string plant = scenario.text("plant", "formula");
  scenario.text("name", "");
  scenario.finish();
  if (controller != "gitsmc" && controller != "pi") {
    throw ConfigError("controller must be 'gitsmc' or 'pi'");
  }
  if (plant != "formula" && plant != "published") {
    throw ConfigError("plant must be 'formula' or 'published'");
  }

  GitsmcGains gitsmc;
  {
    SectionReader s("gitsmc", take_section("gitsmc"));
    gitsmc.lambda1 = s.number("lambda1", gitsmc.lambda1);
    gitsmc.lambda2 = s.number("lambda2", gitsmc.lambda2);
    gitsmc.alpha = s.number("alpha", gitsmc.alpha);
    gitsmc.eta1 = s.number("eta1", gitsmc.eta1);
    gitsmc.eta2 = s.number("eta2", gitsmc.eta2);
    gitsmc.boundary_eps = s.number("boundary_eps", gitsmc.boundary_eps);
    gitsmc.mu_max = s.number("mu_max", gitsmc.mu_max);
    s.finish();
  }
  PiGains pi;
  {
    SectionReader s("pi", take_section("pi"));
    pi.kp = s.number("kp", benchmark_data().pi_gains.kp);
    pi.ki = s.number("ki", benchmark_data().pi_gains.ki);
    pi.integral_limit = s.number("integral_limit", 0.0);
    s.finish();
  }

  // Collect contiguous [area N] sections.
  std::vector<AreaParameters> areas;
  std::vector<AreaSchedule> schedules;
  std::vector<Vec7> surfaces; // zero = default governor-only row
  for (int n = 1;; ++n) {
    const std::string name = "area " + std::to_string(n);
    if (file.sections.find(name) == file.sections.end()) break;
    SectionReader s(name, take_section(name));
    AreaParameters p;
    p.turbine_T_t = s.number("T_t", 0.0);
    p.governor_T_g = s.number("T_g", 0.0);
    p.droop_R = s.number("R", 0.0);
    p.inertia_H = s.number("H", 0.0);
    p.damping_D = s.number("D", 1.0);
    p.integral_gain_K_E = s.number("K_E", 5.0);
    p.pv_time_T_PV = s.number("T_PV", 1.8);
    p.pv_gain_K_PV = s.number("K_PV", 1.0);
    p.wt_time_T_WT = s.number("T_WT", 1.5);
    p.wt_gain_K_WT = s.number("K_WT", 1.0);
    p.frequency_bias_beta = p.damping_D + (p.droop_R > 0.0 ? 1.0 / p.droop_R : 0.0);
    AreaSchedule sched;
    sched.load.segments = s.segments("load");
    sched.pv.segments = s.segments("pv");
    sched.wind.segments = s.segments("wind");
    Vec7 surface = Vec7::Zero();
    if (s.has("surface")) {
      const auto weights = s.numbers("surface");
      if (weights.size() != kStatesPerArea) {
        throw ConfigError("surface in [" + name + "] needs exactly 7 weights");
      }
      for (int k = 0; k < kStatesPerArea; ++k) surface(k) = weights[k];
    }
    s.finish();
    areas.push_back(p);
    schedules.push_back(sched);
    surfaces.push_back(surface);
  }
  if (areas.empty()) {
    throw ConfigError("at least one [area 1] section is required");
  }
  const int n = static_cast<int>(areas.size());

  TieLineTopology ties = TieLineTopology::decoupled(n);
  {
    const auto it = file.sections.find("ties");
    if (it != file.sections.end()) {
      for (const auto& [key, value] : it->second) {
        int i = 0, j = 0;
        if (std::sscanf(key.c_str(), "T_%d_%d", &i, &j) != 2 || i < 1 || j < 1 || i > n ||
            j > n || i == j) {
          throw ConfigError("unknown key '" + key + "' in section [ties]");
        }
        const double v = parse_number(key, value);
        ties.coeff(i - 1, j - 1) = v;
        ties.coeff(j - 1, i - 1) = v;
      }
      file.sections.erase(it);
    }
  }

  if (!file.sections.empty()) {
    throw ConfigError("unknown section [" + file.sections.begin()->first + "]");
  }

  if (plant == "published") {
    if (n != 4) {
      throw ConfigError("plant = published requires exactly four areas");
    }
    cfg.model.areas = benchmark_data().published;
  } else {
    for (int i = 0; i < n; ++i) {
      try {
        cfg.model.areas.push_back(build_plant_matrices(areas[i], ties.row_sum(i)));
      } catch (const std::invalid_argument& e) {
        throw ConfigError("[area " + std::to_string(i + 1) + "]: " + e.what());
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    if (surfaces[i].isZero()) continue;
    auto& m = cfg.model.areas[i];
    const double gain = (surfaces[i].transpose() * m.B0)(0);
    if (gain == 0.0) {
      throw ConfigError("[area " + std::to_string(i + 1) +
                        "]: surface weights give singular product with B0");
    }
    m.surface_row = surfaces[i].transpose() / gain; // normalized to theta*B0 = 1
  }
  cfg.model.ties = ties;
  cfg.schedule.areas = schedules;
  for (int i = 0; i < n; ++i) {
    if (controller == "gitsmc") {
      cfg.controllers.push_back(GitsmcChoice{gitsmc});
    } else {
      cfg.controllers.push_back(PiChoice{pi, areas[i].frequency_bias_beta});
    }
  }
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

ScenarioConfig load_scenario_file(const std::filesystem::path& path,
                                  const std::string& controller_override) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot open scenario file " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), controller_override);
}

std::string benchmark_config_text(BenchController controller) {
  const BenchmarkData& d = benchmark_data();
  std::ostringstream out;
  out << "# Four-area New England 39-bus load-frequency benchmark.\n";
  out << "# The plant is rebuilt from the [area N] constants below; plant = published\n";
  out << "# would swap in the printed per-area matrices instead (open-loop unstable,\n";
  out << "# kept for auditing).\n\n";
  out << "[scenario]\n";
  out << "name = bench39\n";
  out << "plant = formula\n";
  out << "horizon_s = " << format_double(d.horizon_s) << "\n";
  out << "dt_s = " << format_double(d.dt_s) << "\n";
  out << "noise_std = " << format_double(d.schedule.noise_std) << "\n";
  out << "noise_seed = " << d.schedule.noise_seed << "\n";
  out << "controller = " << (controller == BenchController::kGitsmc ? "gitsmc" : "pi")
      << "\n\n";

  out << "[gitsmc]\n";
  out << "lambda1 = " << format_double(d.gitsmc_gains.lambda1) << "\n";
  out << "lambda2 = " << format_double(d.gitsmc_gains.lambda2) << "\n";
  out << "alpha = " << format_double(d.gitsmc_gains.alpha) << "\n";
  out << "eta1 = " << format_double(d.gitsmc_gains.eta1) << "\n";
  out << "eta2 = " << format_double(d.gitsmc_gains.eta2) << "\n";
  out << "boundary_eps = " << format_double(d.gitsmc_gains.boundary_eps) << "\n\n";

  out << "[pi]\n";
  out << "kp = " << format_double(d.pi_gains.kp) << "\n";
  out << "ki = " << format_double(d.pi_gains.ki) << "\n\n";

  const auto segs = [&](const ChannelProfile& p) {
    std::string s;
    for (const auto& seg : p.segments) {
      if (!s.empty()) s += ", ";
      s += format_double(seg.start_s) + ":" + format_double(seg.end_s) + ":" +
           format_double(seg.level_pu);
    }
    return s;
  };
  for (int i = 0; i < 4; ++i) {
    const auto& p = d.sim_params[i];
    out << "[area " << i + 1 << "]\n";
    out << "T_t = " << format_double(p.turbine_T_t) << "\n";
    out << "T_g = " << format_double(p.governor_T_g) << "\n";
    out << "R = " << format_double(p.droop_R) << "\n";
    out << "H = " << format_double(p.inertia_H) << "\n";
    out << "D = " << format_double(p.damping_D) << "\n";
    out << "K_E = " << format_double(p.integral_gain_K_E) << "\n";
    out << "T_PV = " << format_double(p.pv_time_T_PV) << "\n";
    out << "K_PV = " << format_double(p.pv_gain_K_PV) << "\n";
    out << "T_WT = " << format_double(p.wt_time_T_WT) << "\n";
    out << "K_WT = " << format_double(p.wt_gain_K_WT) << "\n";
    out << "surface = 0.25, 40, 0, 1, 0.1, 0, 0\n";
    const auto& sched = d.schedule.areas[i];
    if (!sched.load.segments.empty()) out << "load = " << segs(sched.load) << "\n";
    if (!sched.pv.segments.empty()) out << "pv = " << segs(sched.pv) << "\n";
    if (!sched.wind.segments.empty()) out << "wind = " << segs(sched.wind) << "\n";
    out << "\n";
  }

  out << "[ties]\n";
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (d.ties.coeff(i, j) != 0.0) {
        out << "T_" << i + 1 << "_" << j + 1 << " = " << format_double(d.ties.coeff(i, j))
            << "\n";
      }
    }
  }
  return out.str();
}

} // namespace lfc
