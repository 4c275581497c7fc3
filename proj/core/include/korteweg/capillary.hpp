#pragma once

#include "korteweg/grid.hpp"
#include "korteweg/operators.hpp"

namespace korteweg {

enum class SolverKind { Krylov, Direct };

struct SolverControls {
  SolverKind kind = SolverKind::Krylov;
  double rtol = 1e-10;
  int max_iters = 0;  ///< 0 selects 10 * (number of cells)
};

/// Largest grid (cell count) accepted by the direct solver.
inline constexpr std::size_t kDirectSolverMaxCells = 64 * 64;

/// Linear system of the capillary substep at fixed density rho^{n+1}:
///
///   D u - dt A w = r_u
///   D w + dt A u = r_w
///
/// with D = diag(rho) and A = T_h(rho) symmetric.
struct ImplicitSystem {
  ScalarField rho;
  CapillaryOperator A;
  double dt = 0.0;
  VecField2 r_u;
  VecField2 r_w;
  SolverControls controls;
};

struct ImplicitResult {
  VecField2 mu;  ///< r_u + dt A w
  VecField2 mw;  ///< r_w - dt A u
  VecField2 u;
  VecField2 w;
  int iterations = 0;
  double residual = 0.0;  ///< relative residual of the block system in weighted variables
};

/// Solves the block system in weighted variables x = (D^{1/2} u, D^{1/2} w),
/// where it reads (I + dt S) x = x~ with S = [[0, -B], [B, 0]] and
/// B = D^{-1/2} A D^{-1/2}. Eliminating x_w leaves the SPD system
/// (I + dt^2 B^2) x_u = x~_u + dt B x~_w, solved by conjugate gradients
/// (Krylov) or a sparse LDL^T factorisation (Direct).
///
/// The returned momenta are formed in conservative form so that their grid
/// sums are exactly those of the right-hand sides.
///
/// Throws StateError for non-positive rho and ConvergenceError when the
/// iteration limit is hit.
ImplicitResult implicit_solve(const ImplicitSystem& sys);

/// sum (|mu|^2 + |mw|^2) / (2 rho) dx dy.
double kinetic_energy_weighted(const ScalarField& rho, const VecField2& mu, const VecField2& mw);

}  // namespace korteweg
