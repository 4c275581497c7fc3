#include "korteweg/swfilm.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "korteweg/errors.hpp"

namespace korteweg {

void FilmParams::validate() const {
  if (!(g > 0.0)) throw LawError("film: g must be positive");
  if (!(theta >= 0.0) || !(theta < std::numbers::pi / 2)) {
    throw LawError("film: inclination must lie in [0, pi/2)");
  }
  if (!(nu > 0.0) && !(nu == 0.0 && theta == 0.0)) {
    throw LawError("film: viscosity must be positive on an inclined plane");
  }
  if (!(sigma >= 0.0)) throw LawError("film: surface tension must be non-negative");
  if (!(rho_fluid > 0.0)) throw LawError("film: fluid density must be positive");
  if (!(h_precursor >= 0.0)) throw LawError("film: precursor thickness must be non-negative");
}

CapillarityLaw film_capillarity(const FilmParams& p) {
  return CapillarityLaw::constant(p.sigma / p.rho_fluid);
}

PressureLaw film_pressure(const FilmParams& p) { return ShallowWaterPressure{p.g, p.theta}; }

FluxSpec film_flux_spec(const FilmParams& p, double rho_floor) {
  FluxSpec spec;
  spec.pressure = film_pressure(p);
  const double s = std::sin(p.theta);
  spec.extra_flux_coeff = s == 0.0 ? 0.0 : std::pow(p.g * s / p.nu, 2);
  spec.rho_floor = rho_floor;
  return spec;
}

double nusselt_velocity(const FilmParams& p, double h) {
  const double s = std::sin(p.theta);
  return s == 0.0 ? 0.0 : p.g * s * h * h / (3.0 * p.nu);
}

VecField2 source_implicit(const ScalarField& h, const VecField2& mu, const FilmParams& p, double dt,
                          double rho_floor) {
  const Grid2D& g = h.grid();
  check_density_floor(h, rho_floor, "source_implicit");
  const double gs = p.g * std::sin(p.theta);
  VecField2 out(g);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double hk = h[k];
    const double denom = 1.0 + 3.0 * p.nu * dt / (hk * hk);
    out.c1[k] = (mu.c1[k] + dt * gs * hk) / denom;
    out.c2[k] = mu.c2[k] / denom;
  }
  return out;
}

Scenario make_scenario(ScenarioKind kind, const FilmParams& film, const ScenarioParams& sp,
                       const Grid2D& grid, double rho_floor) {
  film.validate();
  const double two_pi = 2.0 * std::numbers::pi;
  const double Lx = grid.Lx();
  const double Ly = grid.Ly();
  const CapillarityLaw law = film_capillarity(film);

  Profile h;
  VelocityProfile u;
  switch (kind) {
    case ScenarioKind::RollWave1D:
      h = [=](double x, double) { return sp.h0 * (1.0 + sp.perturbation_eps * std::sin(two_pi * x / Lx)); };
      break;
    case ScenarioKind::RollWave2D:
      h = [=](double x, double y) {
        return sp.h0 * (1.0 + sp.perturbation_eps * std::sin(two_pi * x / Lx) *
                                  (1.0 + 0.5 * std::cos(two_pi * y / Ly)));
      };
      break;
    case ScenarioKind::Drop: {
      const double xc = sp.drop_x * Lx;
      const double yc = sp.drop_y * Ly;
      const double R2 = sp.drop_radius * sp.drop_radius;
      const double cutoff = std::numeric_limits<double>::epsilon();
      // Distance to the nearest periodic image of the centre.
      const auto gap = [](double d, double L) { return d - L * std::round(d / L); };
      h = [=](double x, double y) {
        const double dx = gap(x - xc, Lx);
        const double dy = gap(y - yc, Ly);
        const double r2 = dx * dx + dy * dy;
        const double bump = std::exp(-r2 / R2);
        return film.h_precursor + (bump < cutoff ? 0.0 : sp.h_drop * bump);
      };
      break;
    }
  }
  if (kind != ScenarioKind::Drop) {
    u.u1 = [=, &film](double x, double y) { return nusselt_velocity(film, h(x, y)); };
    u.u2 = [](double, double) { return 0.0; };
  }

  Scenario sc{init_from_profiles(grid, h, u, law), film_flux_spec(film, rho_floor), law};
  check_density_floor(sc.initial.rho, rho_floor, "scenario");
  return sc;
}

}  // namespace korteweg
