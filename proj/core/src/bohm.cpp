#include <cmath>
#include <sstream>

#include "korteweg/errors.hpp"
#include "korteweg/operators.hpp"

namespace korteweg {

namespace {

ScalarField laplacian(const ScalarField& u) {
  ScalarField a = d1(d1p(u));
  const ScalarField b = d2(d2p(u));
  for (std::size_t k = 0; k < a.size(); ++k) a[k] += b[k];
  return a;
}

ScalarField map(const ScalarField& rho, auto fn) {
  ScalarField out(rho.grid());
  for (std::size_t k = 0; k < rho.size(); ++k) out[k] = fn(rho[k], k);
  return out;
}

ScalarField sample(const Profile& rho, const Grid2D& grid, double rho_floor) {
  ScalarField r(grid);
  for (int j = 0; j < grid.ny(); ++j) {
    for (int i = 0; i < grid.nx(); ++i) {
      const double v = rho(grid.x(i), grid.y(j));
      if (!(v >= rho_floor)) {
        std::ostringstream os;
        os << "bohm identity: density " << v << " below floor " << rho_floor << " at cell (" << i
           << ", " << j << ")";
        throw DomainError(os.str());
      }
      r(i, j) = v;
    }
  }
  return r;
}

VecField2 difference(const VecField2& a, const VecField2& b) {
  VecField2 d(a.grid());
  for (std::size_t k = 0; k < a.grid().size(); ++k) {
    d.c1[k] = a.c1[k] - b.c1[k];
    d.c2[k] = a.c2[k] - b.c2[k];
  }
  return d;
}

BohmResidual compare(const VecField2& lhs, const VecField2& rhs) {
  BohmResidual r;
  r.lhs_norm = l2_norm(lhs);
  r.rhs_norm = l2_norm(rhs);
  const double scale = std::max(r.lhs_norm, r.rhs_norm);
  r.residual_rel = scale == 0.0 ? 0.0 : l2_norm(difference(lhs, rhs)) / scale;
  return r;
}

}  // namespace

double l2_norm(const VecField2& v) {
  return std::sqrt(inner(v, v) * v.grid().cell_area());
}

BohmTerms bohm_identity_terms(const ScalarField& rho, const CapillarityLaw& law) {
  const Grid2D& g = rho.grid();
  std::vector<CapillarityValues> cv(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) cv[k] = eval_capillary(law, rho[k]);

  // rho grad( sqrt(K) lap psi )
  const ScalarField psi = map(rho, [&](double, std::size_t k) { return cv[k].psi; });
  const ScalarField lap_psi = laplacian(psi);
  const ScalarField q = map(rho, [&](double, std::size_t k) { return std::sqrt(cv[k].K) * lap_psi[k]; });
  const ScalarField q1 = d1bar(q);
  const ScalarField q2 = d2bar(q);

  // div(F grad grad phi) + grad(G lap phi)
  const ScalarField phi = map(rho, [&](double, std::size_t k) { return cv[k].phi; });
  const ScalarField hxx = d1(d1p(phi));
  const ScalarField hyy = d2(d2p(phi));
  const ScalarField hxy = d1bar(d2bar(phi));
  const ScalarField Fhxx = map(rho, [&](double, std::size_t k) { return cv[k].F * hxx[k]; });
  const ScalarField Fhyy = map(rho, [&](double, std::size_t k) { return cv[k].F * hyy[k]; });
  const ScalarField Fhxy = map(rho, [&](double, std::size_t k) { return cv[k].F * hxy[k]; });
  const ScalarField Glap = map(rho, [&](double, std::size_t k) { return cv[k].G * (hxx[k] + hyy[k]); });
  const ScalarField a1 = d1bar(Fhxx), b1 = d2bar(Fhxy), c1 = d1bar(Glap);
  const ScalarField a2 = d1bar(Fhxy), b2 = d2bar(Fhyy), c2 = d2bar(Glap);

  BohmTerms t{VecField2(g), VecField2(g)};
  for (std::size_t k = 0; k < g.size(); ++k) {
    t.lhs.c1[k] = rho[k] * q1[k];
    t.lhs.c2[k] = rho[k] * q2[k];
    t.rhs.c1[k] = a1[k] + b1[k] + c1[k];
    t.rhs.c2[k] = a2[k] + b2[k] + c2[k];
  }
  return t;
}

VecField2 classical_bohm_divergence(const ScalarField& rho) {
  const Grid2D& g = rho.grid();
  const ScalarField rx = d1bar(rho);
  const ScalarField ry = d2bar(rho);
  const ScalarField rxx = d1(d1p(rho));
  const ScalarField ryy = d2(d2p(rho));
  const ScalarField rxy = d1bar(d2bar(rho));
  // M = rho grad grad log rho = grad grad rho - grad rho (x) grad rho / rho
  ScalarField mxx(g), mxy(g), myy(g);
  for (std::size_t k = 0; k < g.size(); ++k) {
    mxx[k] = rxx[k] - rx[k] * rx[k] / rho[k];
    mxy[k] = rxy[k] - rx[k] * ry[k] / rho[k];
    myy[k] = ryy[k] - ry[k] * ry[k] / rho[k];
  }
  const ScalarField a1 = d1bar(mxx), b1 = d2bar(mxy);
  const ScalarField a2 = d1bar(mxy), b2 = d2bar(myy);
  VecField2 out(g);
  for (std::size_t k = 0; k < g.size(); ++k) {
    out.c1[k] = a1[k] + b1[k];
    out.c2[k] = a2[k] + b2[k];
  }
  return out;
}

BohmResidual bohm_identity_residual(const Profile& rho, const CapillarityLaw& law,
                                    const Grid2D& grid, double rho_floor) {
  const ScalarField r = sample(rho, grid, rho_floor);
  const BohmTerms t = bohm_identity_terms(r, law);
  return compare(t.lhs, t.rhs);
}

BohmResidual quantum_bohm_form_residual(const Profile& rho, double c, const Grid2D& grid,
                                        double rho_floor) {
  const ScalarField r = sample(rho, grid, rho_floor);
  const BohmTerms t = bohm_identity_terms(r, CapillarityLaw::quantum(c));
  VecField2 classical = classical_bohm_divergence(r);
  const double sc = std::sqrt(c);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    classical.c1[k] *= sc;
    classical.c2[k] *= sc;
  }
  return compare(t.rhs, classical);
}

}  // namespace korteweg
