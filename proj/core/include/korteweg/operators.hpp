#pragma once

#include <span>
#include <vector>

#include <Eigen/SparseCore>

#include "korteweg/constitutive.hpp"
#include "korteweg/grid.hpp"

namespace korteweg {

// ---------------------------------------------------------------------------
// Periodic finite-difference operators.
//
//   d1p   : cell  -> xface   (d1p u)_{i+1/2,j} = (u_{i+1,j} - u_{i,j}) / dx
//   d1    : xface -> cell    (d1 a)_{i,j}      = (a_{i+1/2,j} - a_{i-1/2,j}) / dx
//   d1bar : cell  -> cell    (d1bar u)_{i,j}   = (u_{i+1,j} - u_{i-1,j}) / (2 dx)
//
// and the same in direction 2 with yface fields. Passing a field with the
// wrong Location throws UsageError.
// ---------------------------------------------------------------------------

enum class DiffOp { d1, d1p, d1bar, d2, d2p, d2bar };

ScalarField d1(const ScalarField& a);
ScalarField d1p(const ScalarField& u);
ScalarField d1bar(const ScalarField& u);
ScalarField d2(const ScalarField& a);
ScalarField d2p(const ScalarField& u);
ScalarField d2bar(const ScalarField& u);

ScalarField apply_diff(const ScalarField& field, DiffOp which);

/// Sum of the pointwise product of two fields (no area weight).
double inner(const ScalarField& a, const ScalarField& b);
double inner(const VecField2& a, const VecField2& b);

/// Discrete capillary operator
///
///   T_h(rho) v = ( d1(f1 d1p v1) + d2bar(f2 d1bar v2) + d1bar(f3 d2bar v2),
///                  d1bar(f2 d2bar v1) + d2bar(f3 d1bar v1) + d2(f1 d2p v2) )
///
/// with f1 = rho F', f2 = F, f3 = rho F' - F. Face values of f1 are the
/// arithmetic mean of the two adjacent cells. The operator is symmetric with
/// respect to the plain (unweighted) grid inner product.
class CapillaryOperator {
public:
  CapillaryOperator(const ScalarField& rho, const CapillarityLaw& law);

  /// Build directly from cell coefficient fields.
  CapillaryOperator(ScalarField f1, ScalarField f2, ScalarField f3);

  const Grid2D& grid() const noexcept { return f1_.grid(); }
  std::size_t dimension() const noexcept { return 2 * grid().size(); }

  const ScalarField& f1() const noexcept { return f1_; }
  const ScalarField& f2() const noexcept { return f2_; }
  const ScalarField& f3() const noexcept { return f3_; }

  bool is_zero() const noexcept { return zero_; }

  VecField2 apply(const VecField2& v) const;

  /// Matrix-free apply on interleaved vectors (v1 of cell k at 2k, v2 at 2k+1).
  void apply(std::span<const double> v, std::span<double> out) const;

  /// Assembled (2N x 2N) sparse matrix on the interleaved layout.
  Eigen::SparseMatrix<double> assemble() const;

private:
  void build_faces();

  ScalarField f1_;
  ScalarField f2_;
  ScalarField f3_;
  ScalarField f1x_;  // xface means of f1
  ScalarField f1y_;  // yface means of f1
  bool zero_ = false;
};

/// Interleaved flat copy of a two-component field and back.
std::vector<double> interleave(const VecField2& v);
VecField2 deinterleave(const Grid2D& grid, std::span<const double> flat);

/// max |A - A^T| / max |A| (0 for the zero matrix).
double relative_asymmetry(const Eigen::SparseMatrix<double>& A);

// ---------------------------------------------------------------------------
// Generalised Bohm identity
//
//   rho grad( sqrt(K) lap psi(rho) ) = div(F grad grad phi) + grad(G lap phi)
//
// with psi = int sqrt(K), G = rho F' - F, discretised with second-order
// centred stencils on a periodic grid.
// ---------------------------------------------------------------------------

struct BohmTerms {
  VecField2 lhs;
  VecField2 rhs;
};

BohmTerms bohm_identity_terms(const ScalarField& rho, const CapillarityLaw& law);

/// div(rho grad grad log rho), discretised from rho directly through
/// grad grad log rho = grad grad rho / rho - grad rho (x) grad rho / rho^2.
VecField2 classical_bohm_divergence(const ScalarField& rho);

/// Discrete L2 norm sqrt(sum |v|^2 dx dy).
double l2_norm(const VecField2& v);

struct BohmResidual {
  double lhs_norm = 0.0;
  double rhs_norm = 0.0;
  double residual_rel = 0.0;  ///< ||lhs - rhs|| / max(||lhs||, ||rhs||)
};

/// Samples rho at cell centres and compares both sides of the identity.
/// Throws DomainError when a sample falls below rho_floor.
BohmResidual bohm_identity_residual(const Profile& rho, const CapillarityLaw& law,
                                    const Grid2D& grid, double rho_floor = 1e-12);

/// Quantum law K = c / rho: compares the generalised right-hand side with
/// sqrt(c) * classical_bohm_divergence.
BohmResidual quantum_bohm_form_residual(const Profile& rho, double c, const Grid2D& grid,
                                        double rho_floor = 1e-12);

struct ConvergenceRow {
  int n = 0;
  double residual_rel = 0.0;
  double observed_order = 0.0;  ///< 0 on the first row
};

/// Refinement study on n x n grids of the given extents. `residual` maps a
/// grid to a relative residual.
template <class ResidualFn>
std::vector<ConvergenceRow> convergence_study(std::span<const int> sizes, double Lx, double Ly,
                                              ResidualFn residual);

}  // namespace korteweg

#include "korteweg/detail/convergence.ipp"
