#include "korteweg/capillary.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include <Eigen/SparseCholesky>

#include "korteweg/errors.hpp"

namespace korteweg {

namespace {

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

// y = B x with B = D^{-1/2} A D^{-1/2}; `scale` holds D^{-1/2} per entry.
class WeightedCoupling {
public:
  WeightedCoupling(const CapillaryOperator& A, const Vec& scale)
      : A_(A), scale_(scale), tmp_(scale.size()) {}

  void apply(const Vec& x, Vec& y) {
    for (std::size_t k = 0; k < x.size(); ++k) tmp_[k] = scale_[k] * x[k];
    A_.apply(tmp_, y);
    for (std::size_t k = 0; k < y.size(); ++k) y[k] *= scale_[k];
  }

private:
  const CapillaryOperator& A_;
  const Vec& scale_;
  Vec tmp_;
};

struct SchurSolution {
  Vec x_u;
  int iterations = 0;
};

// (I + dt^2 B^2) y = b by conjugate gradients, starting from y = b.
SchurSolution solve_cg(WeightedCoupling& B, double dt, const Vec& b, double abs_tol,
                       int max_iters) {
  const std::size_t n = b.size();
  Vec y = b;
  Vec r(n), p(n), q(n), t(n);
  const double dt2 = dt * dt;
  const auto apply_M = [&](const Vec& v, Vec& out) {
    B.apply(v, t);
    B.apply(t, out);
    for (std::size_t k = 0; k < n; ++k) out[k] = v[k] + dt2 * out[k];
  };
  const auto true_residual = [&]() {
    apply_M(y, q);
    for (std::size_t k = 0; k < n; ++k) r[k] = b[k] - q[k];
    return std::sqrt(dot(r, r));
  };

  int it = 0;
  double rnorm = true_residual();
  // Restart from the true residual whenever the recursive one claims
  // convergence; guards against drift at large dt.
  for (int restart = 0; restart < 5 && rnorm > abs_tol; ++restart) {
    p = r;
    double rr = rnorm * rnorm;
    while (std::sqrt(rr) > abs_tol) {
      if (it >= max_iters) {
        std::ostringstream os;
        os << "capillary solve: no convergence after " << it << " iterations";
        throw ConvergenceError(os.str(), it, true_residual());
      }
      apply_M(p, q);
      const double alpha = rr / dot(p, q);
      for (std::size_t k = 0; k < n; ++k) {
        y[k] += alpha * p[k];
        r[k] -= alpha * q[k];
      }
      const double rr_new = dot(r, r);
      const double beta = rr_new / rr;
      for (std::size_t k = 0; k < n; ++k) p[k] = r[k] + beta * p[k];
      rr = rr_new;
      ++it;
    }
    rnorm = true_residual();
  }
  if (rnorm > abs_tol) {
    throw ConvergenceError("capillary solve: true residual stagnated above tolerance", it, rnorm);
  }
  return {std::move(y), it};
}

Vec solve_direct(const CapillaryOperator& A, const Vec& scale, double dt, const Vec& b) {
  const auto n = static_cast<Eigen::Index>(b.size());
  Eigen::SparseMatrix<double> S(n, n);
  S.reserve(Eigen::VectorXi::Constant(n, 1));
  for (Eigen::Index k = 0; k < n; ++k) S.insert(k, k) = scale[static_cast<std::size_t>(k)];
  const Eigen::SparseMatrix<double> B = S * A.assemble() * S;
  Eigen::SparseMatrix<double> I(n, n);
  I.setIdentity();
  const Eigen::SparseMatrix<double> M = I + (dt * dt) * (B * B);
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(M);
  if (ldlt.info() != Eigen::Success) {
    throw ConvergenceError("capillary solve: LDL^T factorisation failed", 0, 0.0);
  }
  const Eigen::Map<const Eigen::VectorXd> rhs(b.data(), n);
  const Eigen::VectorXd y = ldlt.solve(rhs);
  return Vec(y.data(), y.data() + n);
}

}  // namespace

ImplicitResult implicit_solve(const ImplicitSystem& sys) {
  const Grid2D& g = sys.rho.grid();
  if (!(sys.A.grid() == g) || !(sys.r_u.grid() == g) || !(sys.r_w.grid() == g)) {
    throw UsageError("implicit_solve: grid mismatch");
  }
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      if (!(sys.rho(i, j) > 0.0)) {
        std::ostringstream os;
        os << "implicit_solve: non-positive density " << sys.rho(i, j) << " at cell (" << i
           << ", " << j << ")";
        throw StateError(os.str(), i, j);
      }
    }
  }

  ImplicitResult res{sys.r_u, sys.r_w, VecField2(g), VecField2(g), 0, 0.0};
  const std::size_t n = 2 * g.size();
  Vec scale(n);
  for (std::size_t k = 0; k < g.size(); ++k) scale[2 * k] = scale[2 * k + 1] = 1.0 / std::sqrt(sys.rho[k]);

  const Vec ru = interleave(sys.r_u);
  const Vec rw = interleave(sys.r_w);
  Vec xt_u(n), xt_w(n);
  for (std::size_t k = 0; k < n; ++k) {
    xt_u[k] = scale[k] * ru[k];
    xt_w[k] = scale[k] * rw[k];
  }

  if (sys.dt == 0.0 || sys.A.is_zero()) {
    for (std::size_t k = 0; k < g.size(); ++k) {
      res.u.c1[k] = sys.r_u.c1[k] / sys.rho[k];
      res.u.c2[k] = sys.r_u.c2[k] / sys.rho[k];
      res.w.c1[k] = sys.r_w.c1[k] / sys.rho[k];
      res.w.c2[k] = sys.r_w.c2[k] / sys.rho[k];
    }
    return res;
  }

  WeightedCoupling B(sys.A, scale);
  Vec b(n), tmp(n);
  B.apply(xt_w, tmp);
  for (std::size_t k = 0; k < n; ++k) b[k] = xt_u[k] + sys.dt * tmp[k];

  const double xt_norm = std::sqrt(dot(xt_u, xt_u) + dot(xt_w, xt_w));
  Vec x_u;
  if (xt_norm == 0.0) {
    x_u.assign(n, 0.0);
  } else if (sys.controls.kind == SolverKind::Direct) {
    if (g.size() > kDirectSolverMaxCells) {
      throw UsageError("direct capillary solver is limited to grids of at most 64x64 cells");
    }
    x_u = solve_direct(sys.A, scale, sys.dt, b);
  } else {
    const int max_iters =
        sys.controls.max_iters > 0 ? sys.controls.max_iters : static_cast<int>(10 * g.size());
    auto sol = solve_cg(B, sys.dt, b, sys.controls.rtol * xt_norm, max_iters);
    x_u = std::move(sol.x_u);
    res.iterations = sol.iterations;
  }

  // x_w from the second block row, residual of the first.
  Vec x_w(n), Bxu(n), Bxw(n);
  B.apply(x_u, Bxu);
  for (std::size_t k = 0; k < n; ++k) x_w[k] = xt_w[k] - sys.dt * Bxu[k];
  B.apply(x_w, Bxw);
  double r2 = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double r = xt_u[k] - (x_u[k] - sys.dt * Bxw[k]);
    r2 += r * r;
  }
  res.residual = xt_norm == 0.0 ? 0.0 : std::sqrt(r2) / xt_norm;

  Vec u(n), w(n);
  for (std::size_t k = 0; k < n; ++k) {
    u[k] = scale[k] * x_u[k];
    w[k] = scale[k] * x_w[k];
  }
  res.u = deinterleave(g, u);
  res.w = deinterleave(g, w);

  Vec Aw(n), Au(n);
  sys.A.apply(w, Aw);
  sys.A.apply(u, Au);
  for (std::size_t k = 0; k < n; ++k) {
    Aw[k] = ru[k] + sys.dt * Aw[k];
    Au[k] = rw[k] - sys.dt * Au[k];
  }
  res.mu = deinterleave(g, Aw);
  res.mw = deinterleave(g, Au);
  return res;
}

double kinetic_energy_weighted(const ScalarField& rho, const VecField2& mu, const VecField2& mw) {
  const Grid2D& g = rho.grid();
  double e = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    e += (mu.c1[k] * mu.c1[k] + mu.c2[k] * mu.c2[k] + mw.c1[k] * mw.c1[k] + mw.c2[k] * mw.c2[k]) /
         (2.0 * rho[k]);
  }
  return e * g.cell_area();
}

}  // namespace korteweg
