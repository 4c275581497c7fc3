#include "korteweg/simulation.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "korteweg/errors.hpp"
#include "korteweg/snapshot.hpp"

namespace korteweg {

Model make_model(const SimConfig& cfg) {
  Model m;
  m.solver = cfg.solver;
  m.cfl = cfg.cfl;
  m.dt_max = cfg.dt_max;
  if (cfg.model == ModelKind::ShallowFilm) {
    m.film = cfg.film;
    m.flux = film_flux_spec(cfg.film, cfg.rho_floor);
    m.capillarity = film_capillarity(cfg.film);
  } else {
    m.flux.pressure = cfg.pressure;
    m.flux.extra_flux_coeff = 0.0;
    m.flux.rho_floor = cfg.rho_floor;
    m.capillarity = cfg.capillarity;
  }
  return m;
}

namespace {

struct Mode {
  int kx;
  int ky;
  double amp;
  double phase;
};

std::vector<Mode> random_modes(std::mt19937_64& rng, int m, double total_amp) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Mode> modes;
  double sum = 0.0;
  for (int kx = 0; kx <= m; ++kx) {
    for (int ky = -m; ky <= m; ++ky) {
      if (kx == 0 && ky <= 0) continue;
      const double a = unit(rng) / (kx * kx + ky * ky);
      modes.push_back({kx, ky, a, 2.0 * std::numbers::pi * unit(rng)});
      sum += a;
    }
  }
  for (auto& md : modes) md.amp *= total_amp / sum;
  return modes;
}

double evaluate(const std::vector<Mode>& modes, double x, double y, double Lx, double Ly) {
  double v = 0.0;
  for (const auto& md : modes) {
    v += md.amp * std::sin(2.0 * std::numbers::pi * (md.kx * x / Lx + md.ky * y / Ly) + md.phase);
  }
  return v;
}

}  // namespace

State random_smooth_state(const Grid2D& grid, const CapillarityLaw& law,
                          const RandomSmoothParams& p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto rho_modes = random_modes(rng, p.modes, p.rho_amp);
  const auto u1_modes = random_modes(rng, p.modes, p.u_amp);
  const auto u2_modes = random_modes(rng, p.modes, p.u_amp);
  const double Lx = grid.Lx(), Ly = grid.Ly();
  return init_from_profiles(
      grid, [&](double x, double y) { return p.rho_mean * (1.0 + evaluate(rho_modes, x, y, Lx, Ly)); },
      {[&](double x, double y) { return evaluate(u1_modes, x, y, Lx, Ly); },
       [&](double x, double y) { return evaluate(u2_modes, x, y, Lx, Ly); }},
      law);
}

State make_initial_state(const SimConfig& cfg, const Model& model) {
  const Grid2D grid(cfg.nx, cfg.ny, cfg.Lx, cfg.Ly);
  State s = [&] {
    if (cfg.restart_file) return read_snapshot(*cfg.restart_file, grid);
    if (cfg.model == ModelKind::ShallowFilm) {
      return make_scenario(cfg.film_scenario, cfg.film, cfg.film_init, grid, cfg.rho_floor).initial;
    }
    if (cfg.core_scenario == CoreScenario::RandomSmooth) {
      return random_smooth_state(grid, model.capillarity, cfg.init, cfg.seed);
    }
    const double r0 = cfg.init.rho_mean;
    return init_from_profiles(grid, [r0](double, double) { return r0; }, {}, model.capillarity);
  }();
  check_density_floor(s.rho, cfg.rho_floor, "initial state");
  return s;
}

StepOutcome step(const State& s, const Model& model, double dt_limit) {
  const double dt = std::min(compute_dt(s, model.flux, model.cfl, model.dt_max), dt_limit);
  State predictor = explicit_step(s, model.flux, dt);
  if (model.film) {
    predictor.mu = source_implicit(predictor.rho, predictor.mu, *model.film, dt, model.flux.rho_floor);
  }
  ImplicitSystem sys{predictor.rho, CapillaryOperator(predictor.rho, model.capillarity), dt,
                     predictor.mu, predictor.mw, model.solver};
  ImplicitResult res = implicit_solve(sys);
  StepOutcome out{std::move(predictor), dt, res.iterations, res.residual};
  out.state.mu = std::move(res.mu);
  out.state.mw = std::move(res.mw);
  return out;
}

EnergyRecord make_record(double t, double dt, const State& s, const Model& model, int iters,
                         double residual) {
  const EnergyBreakdown e = total_energy(s, model.capillarity, model.pressure());
  return {t, dt, total_mass(s), e.kinetic_u, e.kinetic_w, e.potential, e.total, iters, residual};
}

void write_energy_csv(std::ostream& os, const std::vector<EnergyRecord>& log) {
  os << "t,dt,mass,ekin_u,ekin_w,epot,etot,iters,residual\n";
  char buf[512];
  for (const auto& r : log) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d,%.17g\n", r.t, r.dt,
                  r.mass, r.ekin_u, r.ekin_w, r.epot, r.etot, r.iters, r.residual);
    os << buf;
  }
}

void write_energy_csv(const std::filesystem::path& path, const std::vector<EnergyRecord>& log) {
  std::ofstream os(path);
  if (!os) throw UsageError("cannot open energy log for writing: " + path.string());
  write_energy_csv(os, log);
}

Simulation::Simulation(const SimConfig& cfg)
    : Simulation(make_initial_state(cfg, make_model(cfg)), make_model(cfg)) {}

Simulation::Simulation(State initial, Model model) : state_(std::move(initial)), model_(std::move(model)) {
  log_.push_back(make_record(0.0, 0.0, state_, model_, 0, 0.0));
}

const EnergyRecord& Simulation::advance(double dt_limit) {
  const auto where = [&] { return "step " + std::to_string(steps_ + 1) + ": "; };
  try {
    StepOutcome o = step(state_, model_, dt_limit);
    state_ = std::move(o.state);
    t_ += o.dt;
    ++steps_;
    log_.push_back(make_record(t_, o.dt, state_, model_, o.iterations, o.residual));
  } catch (const StateError& e) {
    throw StateError(where() + e.what(), e.cell_i(), e.cell_j());
  } catch (const ConvergenceError& e) {
    throw ConvergenceError(where() + e.what(), e.iterations(), e.residual());
  }
  return log_.back();
}

RunReport run(const SimConfig& cfg) {
  std::filesystem::create_directories(cfg.output_dir);
  Simulation sim(cfg);
  RunReport report;

  const auto snapshot = [&] {
    const auto path = cfg.output_dir / ("snap_" + std::to_string(sim.step_count()) + ".csv");
    write_snapshot(path, sim.state());
    report.output_paths.push_back(path);
  };
  snapshot();

  // Stop once the remaining time is below round-off of t_end.
  const double t_tol = 1e-12 * cfg.t_end;
  while (cfg.t_end - sim.time() > t_tol) {
    if (cfg.max_steps > 0 && sim.step_count() >= cfg.max_steps) break;
    sim.advance(cfg.t_end - sim.time());
    if (cfg.output_every_steps > 0 && sim.step_count() % cfg.output_every_steps == 0) snapshot();
  }

  const auto energy_path = cfg.output_dir / "energy.csv";
  write_energy_csv(energy_path, sim.log());
  report.output_paths.push_back(energy_path);

  report.steps = sim.step_count();
  report.final_t = sim.time();
  report.min_rho = min_value(sim.state().rho);
  report.energy_drop = sim.log().front().etot - sim.log().back().etot;
  return report;
}

}  // namespace korteweg
