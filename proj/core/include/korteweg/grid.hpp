#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "korteweg/constitutive.hpp"

namespace korteweg {

/// Uniform, doubly periodic rectangular grid. Spacings are derived from the
/// extents, never stored.
class Grid2D {
public:
  Grid2D(int nx, int ny, double Lx, double Ly);

  int nx() const noexcept { return nx_; }
  int ny() const noexcept { return ny_; }
  double Lx() const noexcept { return Lx_; }
  double Ly() const noexcept { return Ly_; }
  double dx() const noexcept { return Lx_ / nx_; }
  double dy() const noexcept { return Ly_ / ny_; }
  double cell_area() const noexcept { return dx() * dy(); }
  std::size_t size() const noexcept { return static_cast<std::size_t>(nx_) * ny_; }

  /// Cell-centre coordinates.
  double x(int i) const noexcept { return (i + 0.5) * dx(); }
  double y(int j) const noexcept { return (j + 0.5) * dy(); }

  /// Periodic wrap of an arbitrary integer index.
  int wrap_i(int i) const noexcept { return ((i % nx_) + nx_) % nx_; }
  int wrap_j(int j) const noexcept { return ((j % ny_) + ny_) % ny_; }

  /// Linear index, i fastest (row order j-major then i).
  std::size_t index(int i, int j) const noexcept {
    return static_cast<std::size_t>(j) * nx_ + i;
  }
  std::size_t wrapped_index(int i, int j) const noexcept { return index(wrap_i(i), wrap_j(j)); }

  friend bool operator==(const Grid2D&, const Grid2D&) = default;

private:
  int nx_;
  int ny_;
  double Lx_;
  double Ly_;
};

/// Where the samples of a field live. Slot (i, j) of an XFace field holds the
/// value at (i+1/2, j); of a YFace field, (i, j+1/2).
enum class Location { Cell, XFace, YFace };

class ScalarField {
public:
  explicit ScalarField(const Grid2D& grid, double value = 0.0, Location loc = Location::Cell);

  const Grid2D& grid() const noexcept { return grid_; }
  Location location() const noexcept { return loc_; }
  std::size_t size() const noexcept { return data_.size(); }

  double& operator()(int i, int j) noexcept { return data_[grid_.index(i, j)]; }
  double operator()(int i, int j) const noexcept { return data_[grid_.index(i, j)]; }
  /// Periodic access with arbitrary integer offsets.
  double at(int i, int j) const noexcept { return data_[grid_.wrapped_index(i, j)]; }

  double& operator[](std::size_t k) noexcept { return data_[k]; }
  double operator[](std::size_t k) const noexcept { return data_[k]; }

  std::span<double> values() noexcept { return data_; }
  std::span<const double> values() const noexcept { return data_; }

  /// Copy shifted by (si, sj) cells: out(i, j) = in(i - si, j - sj).
  ScalarField shifted(int si, int sj) const;

private:
  Grid2D grid_;
  Location loc_;
  std::vector<double> data_;
};

/// Two cell-centred components (1 = x, 2 = y).
struct VecField2 {
  explicit VecField2(const Grid2D& grid, double v1 = 0.0, double v2 = 0.0)
      : c1(grid, v1), c2(grid, v2) {}

  const Grid2D& grid() const noexcept { return c1.grid(); }

  ScalarField c1;
  ScalarField c2;
};

/// Conservative unknowns (rho, rho u, rho w) on one grid. The auxiliary
/// velocity w is always recovered as mw / rho.
struct State {
  explicit State(const Grid2D& grid) : rho(grid, 1.0), mu(grid), mw(grid) {}

  const Grid2D& grid() const noexcept { return rho.grid(); }

  ScalarField rho;
  VecField2 mu;
  VecField2 mw;
};

using Profile = std::function<double(double x, double y)>;

struct VelocityProfile {
  Profile u1;
  Profile u2;
};

/// Samples rho and u at cell centres and sets mw = rho * grad_h phi(rho)
/// with the centred differences used by the capillary operator.
/// Throws StateError when a sampled density is not positive.
State init_from_profiles(const Grid2D& grid, const Profile& rho0, const VelocityProfile& u0,
                         const CapillarityLaw& law);

/// mw = rho * grad_h phi(rho) for an existing density field.
VecField2 compatible_co_momentum(const ScalarField& rho, const CapillarityLaw& law);

/// Throws StateError naming the first cell with rho < floor (or non-finite).
void check_density_floor(const ScalarField& rho, double floor, const char* context);

double min_value(const ScalarField& f);

double total_mass(const State& s);

struct EnergyBreakdown {
  double kinetic_u = 0.0;
  double kinetic_w = 0.0;
  double potential = 0.0;
  double total = 0.0;
};

/// Discrete total energy sum[(|mu|^2 + |mw|^2)/(2 rho) + F0(rho)] dx dy.
EnergyBreakdown total_energy(const State& s, const CapillarityLaw& claw, const PressureLaw& plaw);

/// sum over cells of a field times the cell area; fixed summation order.
double integrate(const ScalarField& f);

}  // namespace korteweg
