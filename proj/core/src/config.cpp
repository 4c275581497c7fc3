#include "korteweg/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "korteweg/errors.hpp"

namespace korteweg {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& s) {
  const auto p = s.find_first_of("#;");
  return p == std::string::npos ? s : s.substr(0, p);
}

class Reader {
public:
  explicit Reader(const ConfigFile& f) : f_(f) {}

  bool has(const std::string& key) const { return f_.has(key); }

  std::string str(const std::string& key) const {
    if (!has(key)) throw ConfigError("missing required key: " + key);
    return f_.values().at(key);
  }
  std::string str(const std::string& key, const std::string& fallback) const {
    return has(key) ? f_.values().at(key) : fallback;
  }

  double num(const std::string& key) const { return parse_double(key, str(key)); }
  double num(const std::string& key, double fallback) const {
    return has(key) ? parse_double(key, str(key)) : fallback;
  }

  long integer(const std::string& key) const { return parse_long(key, str(key)); }
  long integer(const std::string& key, long fallback) const {
    return has(key) ? parse_long(key, str(key)) : fallback;
  }

private:
  static double parse_double(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    double d = 0.0;
    try {
      d = std::stod(v, &used);
    } catch (const std::exception&) {
      throw ConfigError("key " + key + ": expected a number, got `" + v + "`");
    }
    if (used != v.size() || !std::isfinite(d)) {
      throw ConfigError("key " + key + ": expected a finite number, got `" + v + "`");
    }
    return d;
  }
  static long parse_long(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    long l = 0;
    try {
      l = std::stol(v, &used);
    } catch (const std::exception&) {
      throw ConfigError("key " + key + ": expected an integer, got `" + v + "`");
    }
    if (used != v.size()) throw ConfigError("key " + key + ": expected an integer, got `" + v + "`");
    return l;
  }

  const ConfigFile& f_;
};

void require(bool ok, const std::string& key, const std::string& what) {
  if (!ok) throw ConfigError("key " + key + ": " + what);
}

}  // namespace

ConfigFile ConfigFile::parse(const std::string& text) {
  ConfigFile cfg;
  std::istringstream is(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string s = trim(strip_comment(line));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ConfigError("line " + std::to_string(lineno) + ": bad section header");
      section = trim(s.substr(1, s.size() - 2));
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected `key = value`");
    }
    std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    if (!section.empty()) key = section + "." + key;
    cfg.values_[key] = value;
  }
  return cfg;
}

ConfigFile ConfigFile::load(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot read config file: " + path.string());
  std::stringstream ss;
  ss << is.rdbuf();
  return parse(ss.str());
}

void ConfigFile::set_override(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("override must be key=value: " + assignment);
  const std::string key = trim(assignment.substr(0, eq));
  if (key.empty()) throw ConfigError("override has an empty key: " + assignment);
  values_[key] = trim(assignment.substr(eq + 1));
}

const std::vector<std::string>& known_config_keys() {
  static const std::vector<std::string> keys = {
      "model", "scenario", "seed", "t_end", "cfl", "dt_max", "max_steps", "rho_floor",
      "grid.nx", "grid.ny", "grid.Lx", "grid.Ly",
      "capillarity.kind", "capillarity.K0", "capillarity.c", "capillarity.beta",
      "capillarity.rho_ref",
      "pressure.kind", "pressure.g", "pressure.theta_deg", "pressure.kappa", "pressure.gamma",
      "init.rho_mean", "init.rho_amp", "init.u_amp", "init.modes",
      "film.g", "film.theta_deg", "film.nu", "film.sigma", "film.rho", "film.h0", "film.h_drop",
      "film.h_precursor", "film.perturbation_eps", "film.drop_radius", "film.drop_x",
      "film.drop_y",
      "solver.kind", "solver.rtol", "solver.max_iters",
      "output.every_steps", "output.dir",
      "restart.file",
  };
  return keys;
}

SimConfig make_sim_config(const ConfigFile& file) {
  const auto& known = known_config_keys();
  for (const auto& [key, value] : file.values()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError("unknown key: " + key);
    }
  }

  const Reader r(file);
  SimConfig c;

  const std::string model = r.str("model");
  if (model == "euler_korteweg") {
    c.model = ModelKind::EulerKorteweg;
  } else if (model == "shallow_film") {
    c.model = ModelKind::ShallowFilm;
  } else {
    throw ConfigError("key model: expected euler_korteweg or shallow_film, got `" + model + "`");
  }
  // Sections that belong to the other model would be silently ignored.
  const std::vector<std::string> foreign =
      c.model == ModelKind::ShallowFilm ? std::vector<std::string>{"capillarity.", "pressure.", "init."}
                                        : std::vector<std::string>{"film."};
  for (const auto& [key, value] : file.values()) {
    for (const auto& prefix : foreign) {
      if (key.rfind(prefix, 0) == 0) {
        throw ConfigError("key " + key + " does not apply to model " + model);
      }
    }
  }
  c.scenario = r.str("scenario");

  c.nx = static_cast<int>(r.integer("grid.nx"));
  c.ny = static_cast<int>(r.integer("grid.ny"));
  require(c.nx >= 4, "grid.nx", "must be at least 4");
  require(c.ny >= 4, "grid.ny", "must be at least 4");
  c.Lx = r.num("grid.Lx");
  c.Ly = r.num("grid.Ly");
  require(c.Lx > 0.0, "grid.Lx", "must be positive");
  require(c.Ly > 0.0, "grid.Ly", "must be positive");

  c.t_end = r.num("t_end");
  require(c.t_end >= 0.0, "t_end", "must be non-negative");
  c.cfl = r.num("cfl", 0.45);
  require(c.cfl > 0.0 && c.cfl <= 1.0, "cfl", "must lie in (0, 1]");
  c.dt_max = r.num("dt_max", 1.0);
  require(c.dt_max > 0.0, "dt_max", "must be positive");
  c.max_steps = r.integer("max_steps", 0);
  require(c.max_steps >= 0, "max_steps", "must be non-negative");
  c.rho_floor = r.num("rho_floor", 1e-12);
  require(c.rho_floor > 0.0, "rho_floor", "must be positive");
  const long seed = r.integer("seed", 0);
  require(seed >= 0, "seed", "must be non-negative");
  c.seed = static_cast<std::uint64_t>(seed);

  if (c.model == ModelKind::EulerKorteweg) {
    const std::string ck = r.str("capillarity.kind");
    if (ck == "constant") {
      const double K0 = r.num("capillarity.K0");
      require(K0 >= 0.0, "capillarity.K0", "must be non-negative");
      c.capillarity = CapillarityLaw::constant(K0);
    } else if (ck == "quantum") {
      const double cq = r.num("capillarity.c");
      require(cq > 0.0, "capillarity.c", "must be positive");
      c.capillarity = CapillarityLaw::quantum(cq);
    } else if (ck == "generic") {
      // K(rho) = K0 rho^beta, integrated numerically.
      const double K0 = r.num("capillarity.K0");
      const double beta = r.num("capillarity.beta");
      require(K0 > 0.0, "capillarity.K0", "must be positive");
      std::optional<double> ref;
      if (r.has("capillarity.rho_ref")) {
        ref = r.num("capillarity.rho_ref");
        require(*ref >= 0.0, "capillarity.rho_ref", "must be non-negative");
      }
      c.capillarity = CapillarityLaw::generic(
          [K0, beta](double rho) { return K0 * std::pow(rho, beta); }, ref);
    } else {
      throw ConfigError("key capillarity.kind: expected constant, quantum or generic, got `" + ck + "`");
    }

    const std::string pk = r.str("pressure.kind");
    if (pk == "shallow_water") {
      const double g = r.num("pressure.g", 9.8);
      const double theta = r.num("pressure.theta_deg", 0.0) * std::numbers::pi / 180.0;
      require(g > 0.0, "pressure.g", "must be positive");
      require(theta >= 0.0 && theta < std::numbers::pi / 2, "pressure.theta_deg", "must lie in [0, 90)");
      c.pressure = ShallowWaterPressure{g, theta};
    } else if (pk == "power_law") {
      const double kappa = r.num("pressure.kappa");
      const double gamma = r.num("pressure.gamma");
      require(kappa > 0.0, "pressure.kappa", "must be positive");
      require(gamma > 1.0, "pressure.gamma", "must exceed 1");
      c.pressure = PowerLawPressure{kappa, gamma};
    } else {
      throw ConfigError("key pressure.kind: expected shallow_water or power_law, got `" + pk + "`");
    }

    if (c.scenario == "uniform") {
      c.core_scenario = CoreScenario::Uniform;
    } else if (c.scenario == "random_smooth") {
      c.core_scenario = CoreScenario::RandomSmooth;
    } else {
      throw ConfigError("key scenario: euler_korteweg supports uniform or random_smooth, got `" +
                        c.scenario + "`");
    }
    c.init.rho_mean = r.num("init.rho_mean", 1.0);
    c.init.rho_amp = r.num("init.rho_amp", 0.1);
    c.init.u_amp = r.num("init.u_amp", 0.1);
    c.init.modes = static_cast<int>(r.integer("init.modes", 3));
    require(c.init.rho_mean > 0.0, "init.rho_mean", "must be positive");
    require(c.init.rho_amp >= 0.0 && c.init.rho_amp < 1.0, "init.rho_amp", "must lie in [0, 1)");
    require(c.init.u_amp >= 0.0, "init.u_amp", "must be non-negative");
    require(c.init.modes >= 1, "init.modes", "must be at least 1");
  } else {
    c.film.g = r.num("film.g", 9.8);
    c.film.theta = r.num("film.theta_deg") * std::numbers::pi / 180.0;
    c.film.nu = r.num("film.nu");
    c.film.sigma = r.num("film.sigma");
    c.film.rho_fluid = r.num("film.rho");
    c.film.h_precursor = r.num("film.h_precursor", 0.0);
    try {
      c.film.validate();
    } catch (const LawError& e) {
      throw ConfigError(std::string("film parameters: ") + e.what());
    }

    if (c.scenario == "roll_wave_1d" || c.scenario == "roll_wave_2d") {
      c.film_scenario = c.scenario == "roll_wave_1d" ? ScenarioKind::RollWave1D : ScenarioKind::RollWave2D;
      c.film_init.h0 = r.num("film.h0");
      c.film_init.perturbation_eps = r.num("film.perturbation_eps");
      require(c.film_init.h0 > 0.0, "film.h0", "must be positive");
      require(std::abs(c.film_init.perturbation_eps) < 1.0, "film.perturbation_eps", "must lie in (-1, 1)");
    } else if (c.scenario == "drop") {
      c.film_scenario = ScenarioKind::Drop;
      c.film_init.h_drop = r.num("film.h_drop");
      c.film_init.drop_radius = r.num("film.drop_radius");
      c.film_init.drop_x = r.num("film.drop_x", 0.25);
      c.film_init.drop_y = r.num("film.drop_y", 0.5);
      require(r.has("film.h_precursor"), "film.h_precursor", "required for the drop scenario");
      require(c.film.h_precursor > 0.0, "film.h_precursor", "must be positive for the drop scenario");
      require(c.film_init.h_drop > 0.0, "film.h_drop", "must be positive");
      require(c.film_init.drop_radius > 0.0, "film.drop_radius", "must be positive");
    } else {
      throw ConfigError("key scenario: shallow_film supports roll_wave_1d, roll_wave_2d or drop, got `" +
                        c.scenario + "`");
    }
  }

  const std::string sk = r.str("solver.kind", "krylov");
  if (sk == "krylov") {
    c.solver.kind = SolverKind::Krylov;
  } else if (sk == "direct") {
    c.solver.kind = SolverKind::Direct;
    require(static_cast<std::size_t>(c.nx) * c.ny <= kDirectSolverMaxCells, "solver.kind",
            "direct solver is limited to grids of at most 64x64 cells");
  } else {
    throw ConfigError("key solver.kind: expected krylov or direct, got `" + sk + "`");
  }
  c.solver.rtol = r.num("solver.rtol", 1e-10);
  require(c.solver.rtol > 0.0, "solver.rtol", "must be positive");
  c.solver.max_iters = static_cast<int>(r.integer("solver.max_iters", 0));
  require(c.solver.max_iters >= 0, "solver.max_iters", "must be non-negative");

  c.output_every_steps = r.integer("output.every_steps", 0);
  require(c.output_every_steps >= 0, "output.every_steps", "must be non-negative");
  c.output_dir = r.str("output.dir", ".");
  if (r.has("restart.file")) c.restart_file = r.str("restart.file");
  return c;
}

}  // namespace korteweg
