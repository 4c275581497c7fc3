#pragma once

#include "korteweg/constitutive.hpp"
#include "korteweg/grid.hpp"
#include "korteweg/hyperbolic.hpp"

namespace korteweg {

/// Falling-film parameters (SI). The x axis points downstream.
struct FilmParams {
  double g = 9.8;
  double theta = 0.0;        ///< inclination [rad]
  double nu = 1e-6;          ///< kinematic viscosity [m^2/s]
  double sigma = 0.0;        ///< surface tension [kg/s^2]
  double rho_fluid = 1e3;    ///< fluid density [kg/m^3]
  double h_precursor = 0.0;  ///< precursor film thickness [m], 0 disables

  /// Throws LawError unless nu > 0 (nu = 0 is allowed on a flat plane),
  /// sigma >= 0, rho_fluid > 0 and 0 <= theta < pi/2.
  void validate() const;
};

/// Constant capillarity K0 = sigma / rho_fluid, so that h grad(K0 lap h)
/// is the surface-tension term (sigma h / rho) grad(lap h).
CapillarityLaw film_capillarity(const FilmParams& p);

/// p(h) = g cos(theta) h^2 / 2.
PressureLaw film_pressure(const FilmParams& p);

/// Pressure plus Phi(h) = (g sin(theta)/nu)^2 2 h^5 / 225 on x-momentum.
FluxSpec film_flux_spec(const FilmParams& p, double rho_floor);

/// Depth-averaged Nusselt velocity g sin(theta) h^2 / (3 nu).
double nusselt_velocity(const FilmParams& p, double h);

/// Backward-Euler update of S(h, u) = g h sin(theta) e1 - 3 nu u / h at
/// fixed h:
///   (hu1)^{n+1} = [(hu1)* + dt g h sin(theta)] / (1 + 3 nu dt / h^2)
///   (hu2)^{n+1} = (hu2)* / (1 + 3 nu dt / h^2)
/// Throws StateError if h falls below rho_floor.
VecField2 source_implicit(const ScalarField& h, const VecField2& mu, const FilmParams& p, double dt,
                          double rho_floor = 1e-12);

enum class ScenarioKind { RollWave1D, RollWave2D, Drop };

struct ScenarioParams {
  double h0 = 1e-3;               ///< mean depth of the roll-wave film
  double perturbation_eps = 0.0;  ///< relative amplitude of the roll-wave perturbation
  double h_drop = 5e-4;           ///< drop height above the precursor film
  double drop_radius = 1e-2;      ///< e-folding radius of the Gaussian drop
  double drop_x = 0.25;           ///< drop centre as a fraction of Lx
  double drop_y = 0.5;            ///< drop centre as a fraction of Ly
};

struct Scenario {
  State initial;
  FluxSpec flux;
  CapillarityLaw capillarity;
};

/// Roll waves: Nusselt film of depth h0 (1 + eps * perturbation) with the
/// local Nusselt velocity. Drop: h_precursor + h_drop exp(-r^2/R^2), zero
/// velocity. In both cases w = grad_h phi(h).
Scenario make_scenario(ScenarioKind kind, const FilmParams& film, const ScenarioParams& sp,
                       const Grid2D& grid, double rho_floor = 1e-12);

}  // namespace korteweg
