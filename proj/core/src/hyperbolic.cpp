#include "korteweg/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "korteweg/errors.hpp"

namespace korteweg {

double FluxSpec::extra_flux(double h) const noexcept {
  const double h2 = h * h;
  return extra_flux_coeff * 2.0 * h2 * h2 * h / 225.0;
}

double FluxSpec::extra_flux_derivative(double h) const noexcept {
  const double h2 = h * h;
  return extra_flux_coeff * 10.0 * h2 * h2 / 225.0;
}

namespace {

void require_floor(double rho, const FluxSpec& spec) {
  if (!(rho >= spec.rho_floor)) {
    std::ostringstream os;
    os << "density " << rho << " below floor " << spec.rho_floor;
    throw StateError(os.str());
  }
}

// Per-cell flux and speed in one direction.
struct Directional {
  Conserved f;
  double speed;
};

Directional directional(const Conserved& U, Axis dir, const FluxSpec& spec) {
  const double rho = U[0];
  const PressureValues pv = eval_pressure(spec.pressure, rho);
  const bool x = dir == Axis::X;
  const double un = (x ? U[1] : U[2]) / rho;
  Directional d;
  d.f = {rho * un, U[1] * un, U[2] * un, U[3] * un, U[4] * un};
  double stiffness = pv.dp;
  if (x) {
    d.f[1] += pv.p + spec.extra_flux(rho);
    stiffness += spec.extra_flux_derivative(rho);
  } else {
    d.f[2] += pv.p;
  }
  d.speed = std::abs(un) + std::sqrt(std::max(stiffness, 0.0));
  return d;
}

Conserved combine(const Directional& L, const Directional& R, const Conserved& UL,
                  const Conserved& UR) {
  const double lambda = std::max(L.speed, R.speed);
  Conserved out;
  for (int c = 0; c < 5; ++c) out[c] = 0.5 * (L.f[c] + R.f[c]) - 0.5 * lambda * (UR[c] - UL[c]);
  return out;
}

}  // namespace

Conserved physical_flux(const Conserved& U, Axis dir, const FluxSpec& spec) {
  require_floor(U[0], spec);
  return directional(U, dir, spec).f;
}

double wave_speed(const Conserved& U, Axis dir, const FluxSpec& spec) {
  require_floor(U[0], spec);
  return directional(U, dir, spec).speed;
}

Conserved rusanov_flux(const Conserved& UL, const Conserved& UR, Axis dir, const FluxSpec& spec) {
  require_floor(UL[0], spec);
  require_floor(UR[0], spec);
  return combine(directional(UL, dir, spec), directional(UR, dir, spec), UL, UR);
}

Conserved cell_state(const State& s, int i, int j) {
  return {s.rho(i, j), s.mu.c1(i, j), s.mu.c2(i, j), s.mw.c1(i, j), s.mw.c2(i, j)};
}

double compute_dt(const State& s, const FluxSpec& spec, double cfl, double dt_max) {
  const Grid2D& g = s.grid();
  check_density_floor(s.rho, spec.rho_floor, "compute_dt");
  double rate = 0.0;
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      const Conserved U = cell_state(s, i, j);
      const double r = directional(U, Axis::X, spec).speed / g.dx() +
                       directional(U, Axis::Y, spec).speed / g.dy();
      rate = std::max(rate, r);
    }
  }
  if (rate == 0.0) return dt_max;
  return std::min(cfl / rate, dt_max);
}

State explicit_step(const State& s, const FluxSpec& spec, double dt) {
  const Grid2D& g = s.grid();
  const int nx = g.nx();
  const int ny = g.ny();
  check_density_floor(s.rho, spec.rho_floor, "explicit_step");

  std::vector<Conserved> U(g.size());
  std::vector<Directional> fx(g.size()), fy(g.size());
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const std::size_t k = g.index(i, j);
      U[k] = cell_state(s, i, j);
      fx[k] = directional(U[k], Axis::X, spec);
      fy[k] = directional(U[k], Axis::Y, spec);
    }
  }

  // Face fluxes: slot k of xflux is the face (i+1/2, j), of yflux (i, j+1/2).
  std::vector<Conserved> xflux(g.size()), yflux(g.size());
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const std::size_t k = g.index(i, j);
      const std::size_t kE = g.index(i + 1 == nx ? 0 : i + 1, j);
      const std::size_t kN = g.index(i, j + 1 == ny ? 0 : j + 1);
      xflux[k] = combine(fx[k], fx[kE], U[k], U[kE]);
      yflux[k] = combine(fy[k], fy[kN], U[k], U[kN]);
    }
  }

  State out(g);
  const double cx = dt / g.dx();
  const double cy = dt / g.dy();
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const std::size_t k = g.index(i, j);
      const std::size_t kW = g.index(i == 0 ? nx - 1 : i - 1, j);
      const std::size_t kS = g.index(i, j == 0 ? ny - 1 : j - 1);
      Conserved n;
      for (int c = 0; c < 5; ++c) {
        n[c] = U[k][c] - cx * (xflux[k][c] - xflux[kW][c]) - cy * (yflux[k][c] - yflux[kS][c]);
      }
      out.rho[k] = n[0];
      out.mu.c1[k] = n[1];
      out.mu.c2[k] = n[2];
      out.mw.c1[k] = n[3];
      out.mw.c2[k] = n[4];
    }
  }
  check_density_floor(out.rho, spec.rho_floor, "explicit_step positivity");
  return out;
}

}  // namespace korteweg
