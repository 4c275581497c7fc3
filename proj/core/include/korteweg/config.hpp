#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "korteweg/capillary.hpp"
#include "korteweg/constitutive.hpp"
#include "korteweg/swfilm.hpp"

namespace korteweg {

/// Flat `key = value` store. Keys are dotted (`grid.nx`); an INI section
/// header `[grid]` prefixes the keys that follow it. `#` and `;` start
/// comments.
class ConfigFile {
public:
  static ConfigFile parse(const std::string& text);
  static ConfigFile load(const std::filesystem::path& path);

  /// Applies `key=value`; throws ConfigError when malformed.
  void set_override(const std::string& assignment);
  void set(const std::string& key, const std::string& value) { values_[key] = value; }

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  const std::map<std::string, std::string>& values() const noexcept { return values_; }

private:
  std::map<std::string, std::string> values_;
};

enum class ModelKind { EulerKorteweg, ShallowFilm };

/// Euler-Korteweg initial data: smooth random Fourier modes around a mean
/// density, or a uniform state.
enum class CoreScenario { Uniform, RandomSmooth };

struct RandomSmoothParams {
  double rho_mean = 1.0;
  double rho_amp = 0.1;  ///< max relative density perturbation
  double u_amp = 0.1;    ///< max velocity perturbation
  int modes = 3;         ///< wavenumbers 1..modes in each direction
};

struct SimConfig {
  ModelKind model = ModelKind::EulerKorteweg;
  std::string scenario;

  int nx = 0;
  int ny = 0;
  double Lx = 0.0;
  double Ly = 0.0;

  double t_end = 0.0;
  double cfl = 0.45;
  double dt_max = 1.0;
  long max_steps = 0;  ///< 0: unlimited
  double rho_floor = 1e-12;
  std::uint64_t seed = 0;

  // Euler-Korteweg model
  CapillarityLaw capillarity;
  PressureLaw pressure = PowerLawPressure{};
  CoreScenario core_scenario = CoreScenario::Uniform;
  RandomSmoothParams init;

  // Thin-film model
  FilmParams film;
  ScenarioKind film_scenario = ScenarioKind::RollWave1D;
  ScenarioParams film_init;

  SolverControls solver;

  long output_every_steps = 0;
  std::filesystem::path output_dir = ".";
  std::optional<std::filesystem::path> restart_file;
};

/// Validates every key before anything runs. Unknown keys, missing required
/// keys and malformed values throw ConfigError naming the key.
SimConfig make_sim_config(const ConfigFile& file);

/// All keys make_sim_config understands.
const std::vector<std::string>& known_config_keys();

}  // namespace korteweg
