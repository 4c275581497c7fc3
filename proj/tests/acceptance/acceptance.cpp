// Acceptance suite: one PASS/FAIL line per criterion with the measured value
// and its threshold. `--only <name>` runs a single criterion.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "korteweg/errors.hpp"
#include "korteweg/simulation.hpp"
#include "korteweg/verify.hpp"

using namespace korteweg;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool passed = true;
  std::vector<std::string> notes;
};

// Records one measured quantity against an upper bound (or a lower bound
// when `at_least` is set).
void measure(Outcome& o, const std::string& what, double value, double bound, bool at_least = false) {
  const bool ok = std::isfinite(value) && (at_least ? value >= bound : value <= bound);
  o.passed = o.passed && ok;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s=%.3e (%s %.1e)", what.c_str(), value, at_least ? ">=" : "<=",
                bound);
  o.notes.emplace_back(buf);
}

// ---------------------------------------------------------------------------

Outcome bohm() {
  Outcome o;
  const auto t0 = Clock::now();
  const VerifyReport r = verify_bohm(32, {"constant", "quantum"});
  const double elapsed = seconds_since(t0);
  for (const auto& [name, csv] : r.tables) {
    std::istringstream is(csv);
    std::string line;
    std::getline(is, line);
    double worst = 1e300;
    int rows = 0;
    while (std::getline(is, line)) {
      double n = 0, res = 0, order = 0;
      if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &n, &res, &order) != 3) continue;
      if (rows++ > 0) worst = std::min(worst, order);
    }
    measure(o, name.substr(0, name.size() - 4) + " min order", rows == 3 ? worst : 0.0, 1.8, true);
  }
  measure(o, "runtime_s", elapsed, 10.0);
  return o;
}

Outcome duality() {
  Outcome o;
  const auto t0 = Clock::now();
  const VerifyReport d = verify_duality(32, 1);
  const VerifyReport s = verify_symmetry(32, 20, 2);
  const double elapsed = seconds_since(t0);
  o.passed = d.passed && s.passed;
  for (const auto* rep : {&d, &s}) {
    for (const auto& line : rep->lines) {
      auto l = line;
      l.erase(0, l.find_first_not_of(' '));
      o.notes.push_back(l);
    }
  }
  measure(o, "runtime_s", elapsed, 5.0);
  return o;
}

Outcome entropy() {
  Outcome o;
  double worst = -1e300, slowest = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto t0 = Clock::now();
    const EntropyCase c = entropy_case(64, seed);
    Simulation sim(c.initial, c.model);
    for (int n = 0; n < 500; ++n) {
      const double before = sim.log().back().etot;
      const double after = sim.advance().etot;
      worst = std::max(worst, (after - before) / before);
    }
    slowest = std::max(slowest, seconds_since(t0));
  }
  measure(o, "max relative energy increase per step", worst, 1e-12);
  measure(o, "slowest seed runtime_s", slowest, 120.0);
  return o;
}

Outcome implicit_identity() {
  Outcome o;
  const Grid2D g(16, 16, 1.0, 1.0);
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> rho_dist(0.5, 2.0), v_dist(-1.0, 1.0);
  double worst = 0.0, worst_deficit = 0.0;
  for (SolverKind kind : {SolverKind::Krylov, SolverKind::Direct})
  for (double dt : {1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 1e-1, 1.0}) {
    ScalarField rho(g);
    VecField2 ru(g), rw(g);
    for (std::size_t k = 0; k < g.size(); ++k) {
      rho[k] = rho_dist(rng);
      ru.c1[k] = v_dist(rng);
      ru.c2[k] = v_dist(rng);
      rw.c1[k] = v_dist(rng);
      rw.c2[k] = v_dist(rng);
    }
    const CapillaryOperator A(rho, CapillarityLaw::constant(1e-2));
    const ImplicitSystem sys{rho, A, dt, ru, rw, SolverControls{kind}};
    const ImplicitResult res = implicit_solve(sys);

    // Weighted variables from the returned velocities: x = D^{1/2}(u, w),
    // x~ = D^{-1/2}(r_u, r_w), S~ x = D^{-1/2}(-A w, A u).
    const auto Au = A.apply(res.u);
    const auto Aw = A.apply(res.w);
    double before = 0.0, drop = 0.0, skew = 0.0;
    const auto acc = [&](double r, double m, double v) {
      const double xt = m / std::sqrt(r);
      const double x = std::sqrt(r) * v;
      before += xt * xt;
      drop += (xt - x) * (xt + x);
    };
    for (std::size_t k = 0; k < g.size(); ++k) {
      const double r = rho[k];
      acc(r, ru.c1[k], res.u.c1[k]);
      acc(r, ru.c2[k], res.u.c2[k]);
      acc(r, rw.c1[k], res.w.c1[k]);
      acc(r, rw.c2[k], res.w.c2[k]);
      skew += (Aw.c1[k] * Aw.c1[k] + Aw.c2[k] * Aw.c2[k] + Au.c1[k] * Au.c1[k] +
               Au.c2[k] * Au.c2[k]) / r;
    }
    const double rhs = dt * dt * skew;
    worst = std::max(worst, std::abs(drop - rhs) / before);
    worst_deficit = std::max(worst_deficit, std::abs(drop - rhs) / rhs);
  }
  measure(o, "identity error / |x^n|^2", worst, 1e-9);
  char buf[96];
  std::snprintf(buf, sizeof buf, "info: identity error / deficit=%.3e", worst_deficit);
  o.notes.emplace_back(buf);
  return o;
}

Outcome nusselt() {
  Outcome o;
  NusseltCase c = nusselt_case(64, 32);
  const State ref = c.initial;
  Simulation sim(std::move(c.initial), c.model);
  double dev = 0.0;
  for (int n = 0; n < 100; ++n) {
    sim.advance();
    dev = std::max(dev, relative_deviation(sim.state(), ref));
  }
  measure(o, "max relative deviation over 100 steps", dev, 1e-10);
  return o;
}


// Film scenarios on the parameter sets named in the criteria.
SimConfig film_config(const std::string& scenario, int nx, int ny, double Lx, double Ly) {
  std::ostringstream cfg;
  cfg << "model = shallow_film\nscenario = " << scenario << "\nt_end = 1\n"
      << "[grid]\nnx = " << nx << "\nny = " << ny << "\nLx = " << Lx << "\nLy = " << Ly << "\n";
  if (scenario == "drop") {
    cfg << "[film]\ntheta_deg = 60\nnu = 1.0e-6\nsigma = 67e-3\nrho = 1.0e3\n"
        << "h_precursor = 1e-8\nh_drop = 5e-4\ndrop_radius = 1e-2\n";
  } else {
    cfg << "[film]\ntheta_deg = 6.4\nnu = 2.3e-6\nsigma = 67e-3\nrho = 1.07e3\n"
        << "h0 = 1e-3\nperturbation_eps = 0.1\n";
  }
  return make_sim_config(ConfigFile::parse(cfg.str()));
}

SimConfig core_config(const std::string& scenario, std::uint64_t seed) {
  std::ostringstream cfg;
  cfg << "model = euler_korteweg\nscenario = " << scenario << "\nseed = " << seed
      << "\nt_end = 1\n[grid]\nnx = 32\nny = 32\nLx = 1\nLy = 1\n"
      << "[capillarity]\nkind = constant\nK0 = 1e-3\n"
      << "[pressure]\nkind = power_law\nkappa = 1\ngamma = 2\n"
      << "[init]\nrho_amp = 0.2\nu_amp = 0.3\n";
  return make_sim_config(ConfigFile::parse(cfg.str()));
}

// |sum(after) - sum(before)| / sum(|before|), exact-order sums.
double drift(const ScalarField& before, const ScalarField& after) {
  double a = 0.0, b = 0.0, scale = 0.0;
  for (std::size_t k = 0; k < before.size(); ++k) {
    a += before[k];
    b += after[k];
    scale += std::abs(before[k]);
  }
  return scale == 0.0 ? std::abs(b) : std::abs(b - a) / scale;
}

Outcome conservation() {
  Outcome o;
  const std::vector<std::pair<std::string, SimConfig>> cases{
      {"uniform", core_config("uniform", 0)},
      {"random_smooth", core_config("random_smooth", 3)},
      {"roll_wave_1d", film_config("roll_wave_1d", 64, 8, 0.2, 0.025)},
      {"roll_wave_2d", film_config("roll_wave_2d", 32, 32, 0.2, 0.1)},
      {"drop", film_config("drop", 32, 32, 0.1, 0.1)}};
  for (const auto& [name, cfg] : cases) {
    const Model m = make_model(cfg);
    const State s0 = make_initial_state(cfg, m);
    Simulation sim(s0, m);
    for (int n = 0; n < 1000; ++n) sim.advance();
    const State& s = sim.state();
    measure(o, name + " mass drift", drift(s0.rho, s.rho), 1e-11);
    if (!m.film) {
      const double mom = std::max({drift(s0.mu.c1, s.mu.c1), drift(s0.mu.c2, s.mu.c2)});
      const double co = std::max({drift(s0.mw.c1, s.mw.c1), drift(s0.mw.c2, s.mw.c2)});
      measure(o, name + " momentum drift", mom, 1e-11);
      measure(o, name + " rho w drift", co, 1e-11);
    }
  }
  return o;
}

Outcome drop() {
  Outcome o;
  const SimConfig cfg = film_config("drop", 128, 128, 0.1, 0.1);
  const Model m = make_model(cfg);
  Simulation sim(make_initial_state(cfg, m), m);
  double hmin = min_value(sim.state().rho);
  try {
    while (1.0 - sim.time() > 1e-12) {
      sim.advance(1.0 - sim.time());
      hmin = std::min(hmin, min_value(sim.state().rho));
    }
  } catch (const StateError& e) {
    o.passed = false;
    o.notes.push_back(std::string("positivity failure: ") + e.what());
  }
  o.notes.push_back("steps=" + std::to_string(sim.step_count()));
  measure(o, "simulated time", sim.time(), 1.0 - 1e-12, true);
  measure(o, "min h / h_precursor", hmin / cfg.film.h_precursor, 0.9, true);
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  Outcome o;
  const fs::path root = fs::temp_directory_path() / "korteweg_acceptance_determinism";
  const std::vector<std::pair<std::string, SimConfig>> cases{
      {"random_smooth", core_config("random_smooth", 11)},
      {"roll_wave_2d", film_config("roll_wave_2d", 32, 32, 0.2, 0.1)}};
  for (auto [name, cfg] : cases) {
    cfg.max_steps = 200;
    std::string logs[2];
    for (int k = 0; k < 2; ++k) {
      cfg.output_dir = root / (name + "_" + std::to_string(k));
      fs::remove_all(cfg.output_dir);
      run(cfg);
      logs[k] = slurp(cfg.output_dir / "energy.csv");
    }
    const bool same = !logs[0].empty() && logs[0] == logs[1];
    o.passed = o.passed && same;
    o.notes.push_back(name + (same ? " energy.csv identical (" : " energy.csv DIFFERS (") +
                      std::to_string(logs[0].size()) + " bytes)");
  }
  fs::remove_all(root);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::string only;
  for (int k = 1; k < argc; ++k) {
    const std::string a = argv[k];
    if (a == "--only" && k + 1 < argc) {
      only = argv[++k];
    } else {
      std::fprintf(stderr, "usage: %s [--only <criterion>]\n", argv[0]);
      return 2;
    }
  }
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"bohm", bohm}, {"duality", duality}, {"entropy", entropy},
      {"implicit", implicit_identity}, {"conservation", conservation}, {"nusselt", nusselt},
      {"drop", drop}, {"determinism", determinism}};
  bool all = true, any = false;
  for (const auto& [name, fn] : criteria) {
    if (!only.empty() && only != name) continue;
    any = true;
    Outcome o;
    const auto t0 = Clock::now();
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.passed = false;
      o.notes.push_back(std::string("error: ") + e.what());
    }
    std::printf("%s %-13s (%.1f s)", o.passed ? "PASS" : "FAIL", name.c_str(), seconds_since(t0));
    for (const auto& n : o.notes) std::printf("  %s;", n.c_str());
    std::printf("\n");
    std::fflush(stdout);
    all = all && o.passed;
  }
  if (!any) {
    std::fprintf(stderr, "unknown criterion: %s\n", only.c_str());
    return 2;
  }
  return all ? 0 : 1;
}
