#pragma once

#include <filesystem>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "korteweg/capillary.hpp"
#include "korteweg/config.hpp"
#include "korteweg/hyperbolic.hpp"
#include "korteweg/swfilm.hpp"

namespace korteweg {

/// Everything one time step needs besides the state.
struct Model {
  FluxSpec flux;
  CapillarityLaw capillarity;
  std::optional<FilmParams> film;  ///< set for the thin-film model (enables the source)
  SolverControls solver;
  double cfl = 0.45;
  double dt_max = 1.0;

  const PressureLaw& pressure() const noexcept { return flux.pressure; }
};

Model make_model(const SimConfig& cfg);

/// Smooth periodic data: rho = mean (1 + sum of Fourier modes), u from
/// independent modes, w = grad_h phi(rho). Deterministic in `seed`.
State random_smooth_state(const Grid2D& grid, const CapillarityLaw& law,
                          const RandomSmoothParams& p, std::uint64_t seed);

/// Initial state of a configuration (scenario or restart snapshot).
State make_initial_state(const SimConfig& cfg, const Model& model);

struct StepOutcome {
  State state;
  double dt = 0.0;
  int iterations = 0;
  double residual = 0.0;
};

/// One step: CFL time step -> explicit Rusanov update -> implicit film
/// source (film model only) -> implicit capillary solve at rho^{n+1}.
/// dt is additionally limited by `dt_limit`.
StepOutcome step(const State& s, const Model& model,
                 double dt_limit = std::numeric_limits<double>::infinity());

struct EnergyRecord {
  double t = 0.0;
  double dt = 0.0;
  double mass = 0.0;
  double ekin_u = 0.0;
  double ekin_w = 0.0;
  double epot = 0.0;
  double etot = 0.0;
  int iters = 0;
  double residual = 0.0;
};

EnergyRecord make_record(double t, double dt, const State& s, const Model& model, int iters,
                         double residual);

/// Header `t,dt,mass,ekin_u,ekin_w,epot,etot,iters,residual`, 17 significant
/// digits.
void write_energy_csv(std::ostream& os, const std::vector<EnergyRecord>& log);
void write_energy_csv(const std::filesystem::path& path, const std::vector<EnergyRecord>& log);

/// Owns the evolving state and its energy log. The log starts with a record
/// of the initial state (dt = 0) followed by one record per accepted step.
class Simulation {
public:
  explicit Simulation(const SimConfig& cfg);
  Simulation(State initial, Model model);

  const State& state() const noexcept { return state_; }
  const Model& model() const noexcept { return model_; }
  double time() const noexcept { return t_; }
  long step_count() const noexcept { return steps_; }
  const std::vector<EnergyRecord>& log() const noexcept { return log_; }

  /// Advances one step. Errors are rethrown prefixed with the step index.
  const EnergyRecord& advance(double dt_limit = std::numeric_limits<double>::infinity());

private:
  State state_;
  Model model_;
  double t_ = 0.0;
  long steps_ = 0;
  std::vector<EnergyRecord> log_;
};

struct RunReport {
  long steps = 0;
  double final_t = 0.0;
  double min_rho = 0.0;
  double energy_drop = 0.0;  ///< initial minus final total energy
  std::vector<std::filesystem::path> output_paths;
};

/// Runs to t_end (or max_steps), writing snap_<step>.csv for step 0 and
/// every output.every_steps steps, then energy.csv.
RunReport run(const SimConfig& cfg);

}  // namespace korteweg
