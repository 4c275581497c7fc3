#include "korteweg/grid.hpp"

#include <cmath>
#include <sstream>

#include "korteweg/errors.hpp"
#include "korteweg/operators.hpp"

namespace korteweg {

Grid2D::Grid2D(int nx, int ny, double Lx, double Ly) : nx_(nx), ny_(ny), Lx_(Lx), Ly_(Ly) {
  if (nx < 4 || ny < 4) {
    std::ostringstream os;
    os << "grid needs at least 4 cells per direction, got " << nx << "x" << ny;
    throw UsageError(os.str());
  }
  if (!(Lx > 0.0) || !(Ly > 0.0)) throw UsageError("grid extents must be positive");
}

ScalarField::ScalarField(const Grid2D& grid, double value, Location loc)
    : grid_(grid), loc_(loc), data_(grid.size(), value) {}

ScalarField ScalarField::shifted(int si, int sj) const {
  ScalarField out(grid_, 0.0, loc_);
  for (int j = 0; j < grid_.ny(); ++j)
    for (int i = 0; i < grid_.nx(); ++i) out(i, j) = at(i - si, j - sj);
  return out;
}

VecField2 compatible_co_momentum(const ScalarField& rho, const CapillarityLaw& law) {
  const Grid2D& g = rho.grid();
  ScalarField phi(g);
  for (std::size_t k = 0; k < g.size(); ++k) phi[k] = capillary_potential(law, rho[k]);
  const ScalarField w1 = d1bar(phi);
  const ScalarField w2 = d2bar(phi);
  VecField2 mw(g);
  for (std::size_t k = 0; k < g.size(); ++k) {
    mw.c1[k] = rho[k] * w1[k];
    mw.c2[k] = rho[k] * w2[k];
  }
  return mw;
}

State init_from_profiles(const Grid2D& grid, const Profile& rho0, const VelocityProfile& u0,
                         const CapillarityLaw& law) {
  State s(grid);
  for (int j = 0; j < grid.ny(); ++j) {
    for (int i = 0; i < grid.nx(); ++i) {
      const double x = grid.x(i);
      const double y = grid.y(j);
      const double r = rho0(x, y);
      if (!(r > 0.0) || !std::isfinite(r)) {
        std::ostringstream os;
        os << "initial density " << r << " is not positive at cell (" << i << ", " << j << ")";
        throw StateError(os.str(), i, j);
      }
      s.rho(i, j) = r;
      s.mu.c1(i, j) = r * (u0.u1 ? u0.u1(x, y) : 0.0);
      s.mu.c2(i, j) = r * (u0.u2 ? u0.u2(x, y) : 0.0);
    }
  }
  s.mw = compatible_co_momentum(s.rho, law);
  return s;
}

void check_density_floor(const ScalarField& rho, double floor, const char* context) {
  const Grid2D& g = rho.grid();
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      const double r = rho(i, j);
      if (!(r >= floor) || !std::isfinite(r)) {
        std::ostringstream os;
        os << context << ": density " << r << " below floor " << floor << " at cell (" << i
           << ", " << j << ")";
        throw StateError(os.str(), i, j);
      }
    }
  }
}

double min_value(const ScalarField& f) {
  double m = f[0];
  for (double v : f.values()) m = std::min(m, v);
  return m;
}

double integrate(const ScalarField& f) {
  double sum = 0.0;
  for (double v : f.values()) sum += v;
  return sum * f.grid().cell_area();
}

double total_mass(const State& s) { return integrate(s.rho); }

EnergyBreakdown total_energy(const State& s, const CapillarityLaw& /*claw*/,
                             const PressureLaw& plaw) {
  EnergyBreakdown e;
  const Grid2D& g = s.grid();
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double r = s.rho[k];
    const double mu1 = s.mu.c1[k], mu2 = s.mu.c2[k];
    const double mw1 = s.mw.c1[k], mw2 = s.mw.c2[k];
    e.kinetic_u += (mu1 * mu1 + mu2 * mu2) / (2.0 * r);
    e.kinetic_w += (mw1 * mw1 + mw2 * mw2) / (2.0 * r);
    e.potential += potential_energy_density(plaw, r);
  }
  const double a = g.cell_area();
  e.kinetic_u *= a;
  e.kinetic_w *= a;
  e.potential *= a;
  e.total = e.kinetic_u + e.kinetic_w + e.potential;
  return e;
}

}  // namespace korteweg
