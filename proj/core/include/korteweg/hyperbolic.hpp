#pragma once

#include <array>

#include "korteweg/constitutive.hpp"
#include "korteweg/grid.hpp"

namespace korteweg {

/// Conserved tuple (rho, rho u1, rho u2, rho w1, rho w2) of one cell.
using Conserved = std::array<double, 5>;

enum class Axis { X = 1, Y = 2 };

/// Closure of the first-order part: the pressure law plus the optional
/// thin-film x-momentum flux Phi(h) = coeff * 2 h^5 / 225, where
/// coeff = (g sin(theta) / nu)^2.
struct FluxSpec {
  PressureLaw pressure = PowerLawPressure{};
  double extra_flux_coeff = 0.0;
  double rho_floor = 1e-12;

  double extra_flux(double h) const noexcept;
  double extra_flux_derivative(double h) const noexcept;
};

/// Euler flux of the extended system in one direction.
/// Throws StateError when rho < spec.rho_floor.
Conserved physical_flux(const Conserved& U, Axis dir, const FluxSpec& spec);

/// |u_dir| + sqrt(p'(rho) + [dir = X] Phi'(rho)).
double wave_speed(const Conserved& U, Axis dir, const FluxSpec& spec);

/// Rusanov flux 1/2 (f(UL) + f(UR)) - 1/2 lambda (UR - UL) with
/// lambda = max(speed(UL), speed(UR)).
Conserved rusanov_flux(const Conserved& UL, const Conserved& UR, Axis dir, const FluxSpec& spec);

Conserved cell_state(const State& s, int i, int j);

/// dt = cfl / max_ij(speed_x / dx + speed_y / dy), capped at dt_max (which is
/// also the value returned when all speeds vanish).
double compute_dt(const State& s, const FluxSpec& spec, double cfl, double dt_max);

/// Unsplit forward-Euler Rusanov update of all five conserved fields.
/// The returned density is final. Throws StateError naming the first cell
/// whose updated density falls below the floor.
State explicit_step(const State& s, const FluxSpec& spec, double dt);

}  // namespace korteweg
