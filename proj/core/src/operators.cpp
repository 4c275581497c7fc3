#include "korteweg/operators.hpp"

#include <algorithm>
#include <cmath>

#include "korteweg/errors.hpp"

namespace korteweg {

namespace {

void expect(const ScalarField& f, Location loc, const char* op) {
  if (f.location() != loc) {
    static constexpr const char* names[] = {"cell", "xface", "yface"};
    throw UsageError(std::string(op) + " expects a " + names[static_cast<int>(loc)] +
                     " field, got " + names[static_cast<int>(f.location())]);
  }
}

}  // namespace

ScalarField d1p(const ScalarField& u) {
  expect(u, Location::Cell, "d1p");
  const Grid2D& g = u.grid();
  ScalarField out(g, 0.0, Location::XFace);
  const double inv = 1.0 / g.dx();
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) out(i, j) = (u.at(i + 1, j) - u(i, j)) * inv;
  return out;
}

ScalarField d1(const ScalarField& a) {
  expect(a, Location::XFace, "d1");
  const Grid2D& g = a.grid();
  ScalarField out(g);
  const double inv = 1.0 / g.dx();
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) out(i, j) = (a(i, j) - a.at(i - 1, j)) * inv;
  return out;
}

ScalarField d1bar(const ScalarField& u) {
  expect(u, Location::Cell, "d1bar");
  const Grid2D& g = u.grid();
  ScalarField out(g);
  const double inv = 0.5 / g.dx();
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) out(i, j) = (u.at(i + 1, j) - u.at(i - 1, j)) * inv;
  return out;
}

ScalarField d2p(const ScalarField& u) {
  expect(u, Location::Cell, "d2p");
  const Grid2D& g = u.grid();
  ScalarField out(g, 0.0, Location::YFace);
  const double inv = 1.0 / g.dy();
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) out(i, j) = (u.at(i, j + 1) - u(i, j)) * inv;
  return out;
}

ScalarField d2(const ScalarField& a) {
  expect(a, Location::YFace, "d2");
  const Grid2D& g = a.grid();
  ScalarField out(g);
  const double inv = 1.0 / g.dy();
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) out(i, j) = (a(i, j) - a.at(i, j - 1)) * inv;
  return out;
}

ScalarField d2bar(const ScalarField& u) {
  expect(u, Location::Cell, "d2bar");
  const Grid2D& g = u.grid();
  ScalarField out(g);
  const double inv = 0.5 / g.dy();
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) out(i, j) = (u.at(i, j + 1) - u.at(i, j - 1)) * inv;
  return out;
}

ScalarField apply_diff(const ScalarField& field, DiffOp which) {
  switch (which) {
    case DiffOp::d1: return d1(field);
    case DiffOp::d1p: return d1p(field);
    case DiffOp::d1bar: return d1bar(field);
    case DiffOp::d2: return d2(field);
    case DiffOp::d2p: return d2p(field);
    case DiffOp::d2bar: return d2bar(field);
  }
  throw UsageError("unknown difference operator");
}

double inner(const ScalarField& a, const ScalarField& b) {
  if (!(a.grid() == b.grid())) throw UsageError("inner: grid mismatch");
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

double inner(const VecField2& a, const VecField2& b) {
  return inner(a.c1, b.c1) + inner(a.c2, b.c2);
}

// ---------------------------------------------------------------------------

CapillaryOperator::CapillaryOperator(const ScalarField& rho, const CapillarityLaw& law)
    : f1_(rho.grid()), f2_(rho.grid()), f3_(rho.grid()), f1x_(rho.grid()), f1y_(rho.grid()) {
  expect(rho, Location::Cell, "CapillaryOperator");
  zero_ = law.is_trivial();
  if (!zero_) {
    for (std::size_t k = 0; k < rho.size(); ++k) {
      const auto c = capillary_coefficients(law, rho[k]);
      f1_[k] = c.f1;
      f2_[k] = c.f2;
      f3_[k] = c.f3;
    }
  }
  build_faces();
}

CapillaryOperator::CapillaryOperator(ScalarField f1, ScalarField f2, ScalarField f3)
    : f1_(std::move(f1)), f2_(std::move(f2)), f3_(std::move(f3)), f1x_(f1_.grid()), f1y_(f1_.grid()) {
  if (!(f1_.grid() == f2_.grid()) || !(f1_.grid() == f3_.grid())) {
    throw UsageError("CapillaryOperator: coefficient grids differ");
  }
  const auto all_zero = [](const ScalarField& f) {
    return std::all_of(f.values().begin(), f.values().end(), [](double v) { return v == 0.0; });
  };
  zero_ = all_zero(f1_) && all_zero(f2_) && all_zero(f3_);
  build_faces();
}

void CapillaryOperator::build_faces() {
  const Grid2D& g = grid();
  f1x_ = ScalarField(g, 0.0, Location::XFace);
  f1y_ = ScalarField(g, 0.0, Location::YFace);
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      f1x_(i, j) = 0.5 * (f1_(i, j) + f1_.at(i + 1, j));
      f1y_(i, j) = 0.5 * (f1_(i, j) + f1_.at(i, j + 1));
    }
  }
}

namespace {

ScalarField times(const ScalarField& f, const ScalarField& u) {
  ScalarField out(u.grid(), 0.0, u.location());
  for (std::size_t k = 0; k < u.size(); ++k) out[k] = f[k] * u[k];
  return out;
}

}  // namespace

VecField2 CapillaryOperator::apply(const VecField2& v) const {
  if (!(v.grid() == grid())) throw UsageError("CapillaryOperator::apply: grid mismatch");
  VecField2 out(grid());
  if (zero_) return out;
  const ScalarField d1b_v1 = d1bar(v.c1);
  const ScalarField d2b_v1 = d2bar(v.c1);
  const ScalarField d1b_v2 = d1bar(v.c2);
  const ScalarField d2b_v2 = d2bar(v.c2);

  const ScalarField a1 = d1(times(f1x_, d1p(v.c1)));
  const ScalarField b1 = d2bar(times(f2_, d1b_v2));
  const ScalarField c1 = d1bar(times(f3_, d2b_v2));
  const ScalarField a2 = d1bar(times(f2_, d2b_v1));
  const ScalarField b2 = d2bar(times(f3_, d1b_v1));
  const ScalarField c2 = d2(times(f1y_, d2p(v.c2)));
  for (std::size_t k = 0; k < grid().size(); ++k) {
    out.c1[k] = a1[k] + b1[k] + c1[k];
    out.c2[k] = a2[k] + b2[k] + c2[k];
  }
  return out;
}

void CapillaryOperator::apply(std::span<const double> v, std::span<double> out) const {
  const Grid2D& g = grid();
  const std::size_t n = g.size();
  if (v.size() != 2 * n || out.size() != 2 * n) {
    throw UsageError("CapillaryOperator::apply: vector size mismatch");
  }
  if (zero_) {
    std::fill(out.begin(), out.end(), 0.0);
    return;
  }
  const int nx = g.nx();
  const int ny = g.ny();
  const double idx2 = 1.0 / (g.dx() * g.dx());
  const double idy2 = 1.0 / (g.dy() * g.dy());
  const double hx = 0.5 / g.dx();
  const double hy = 0.5 / g.dy();

  // Centred derivatives of both components, pre-multiplied by the coefficient
  // they meet in the outer centred difference.
  std::vector<double> f2_d1v2(n), f3_d2v2(n), f2_d2v1(n), f3_d1v1(n);
  for (int j = 0; j < ny; ++j) {
    const int jp = j + 1 == ny ? 0 : j + 1;
    const int jm = j == 0 ? ny - 1 : j - 1;
    for (int i = 0; i < nx; ++i) {
      const int ip = i + 1 == nx ? 0 : i + 1;
      const int im = i == 0 ? nx - 1 : i - 1;
      const std::size_t k = g.index(i, j);
      const double d1v1 = (v[2 * g.index(ip, j)] - v[2 * g.index(im, j)]) * hx;
      const double d2v1 = (v[2 * g.index(i, jp)] - v[2 * g.index(i, jm)]) * hy;
      const double d1v2 = (v[2 * g.index(ip, j) + 1] - v[2 * g.index(im, j) + 1]) * hx;
      const double d2v2 = (v[2 * g.index(i, jp) + 1] - v[2 * g.index(i, jm) + 1]) * hy;
      f2_d1v2[k] = f2_[k] * d1v2;
      f3_d2v2[k] = f3_[k] * d2v2;
      f2_d2v1[k] = f2_[k] * d2v1;
      f3_d1v1[k] = f3_[k] * d1v1;
    }
  }
  for (int j = 0; j < ny; ++j) {
    const int jp = j + 1 == ny ? 0 : j + 1;
    const int jm = j == 0 ? ny - 1 : j - 1;
    for (int i = 0; i < nx; ++i) {
      const int ip = i + 1 == nx ? 0 : i + 1;
      const int im = i == 0 ? nx - 1 : i - 1;
      const std::size_t k = g.index(i, j);
      const std::size_t kE = g.index(ip, j), kW = g.index(im, j);
      const std::size_t kN = g.index(i, jp), kS = g.index(i, jm);

      const double v1 = v[2 * k], v2 = v[2 * k + 1];
      const double flux1 = f1x_[k] * (v[2 * kE] - v1) - f1x_[kW] * (v1 - v[2 * kW]);
      const double flux2 = f1y_[k] * (v[2 * kN + 1] - v2) - f1y_[kS] * (v2 - v[2 * kS + 1]);

      out[2 * k] = flux1 * idx2 + (f2_d1v2[kN] - f2_d1v2[kS]) * hy + (f3_d2v2[kE] - f3_d2v2[kW]) * hx;
      out[2 * k + 1] =
          (f2_d2v1[kE] - f2_d2v1[kW]) * hx + (f3_d1v1[kN] - f3_d1v1[kS]) * hy + flux2 * idy2;
    }
  }
}

Eigen::SparseMatrix<double> CapillaryOperator::assemble() const {
  const Grid2D& g = grid();
  const auto dim = static_cast<Eigen::Index>(dimension());
  Eigen::SparseMatrix<double> A(dim, dim);
  if (zero_) return A;

  using Triplet = Eigen::Triplet<double>;
  std::vector<Triplet> t;
  t.reserve(dimension() * 11);
  const double idx2 = 1.0 / (g.dx() * g.dx());
  const double idy2 = 1.0 / (g.dy() * g.dy());
  const double q = 0.25 / (g.dx() * g.dy());

  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      const auto row1 = static_cast<Eigen::Index>(2 * g.index(i, j));
      const auto row2 = row1 + 1;
      const auto col = [&](int ii, int jj, int comp) {
        return static_cast<Eigen::Index>(2 * g.wrapped_index(ii, jj) + comp);
      };
      const double fE = f1x_(i, j), fW = f1x_.at(i - 1, j);
      const double fN = f1y_(i, j), fS = f1y_.at(i, j - 1);

      // d1(f1 d1p v1)
      t.emplace_back(row1, col(i + 1, j, 0), fE * idx2);
      t.emplace_back(row1, col(i - 1, j, 0), fW * idx2);
      t.emplace_back(row1, col(i, j, 0), -(fE + fW) * idx2);
      // d2bar(f2 d1bar v2) + d1bar(f3 d2bar v2)
      const double f2N = f2_.at(i, j + 1), f2S = f2_.at(i, j - 1);
      const double f2E = f2_.at(i + 1, j), f2W = f2_.at(i - 1, j);
      const double f3N = f3_.at(i, j + 1), f3S = f3_.at(i, j - 1);
      const double f3E = f3_.at(i + 1, j), f3W = f3_.at(i - 1, j);
      t.emplace_back(row1, col(i + 1, j + 1, 1), (f2N + f3E) * q);
      t.emplace_back(row1, col(i - 1, j + 1, 1), -(f2N + f3W) * q);
      t.emplace_back(row1, col(i + 1, j - 1, 1), -(f2S + f3E) * q);
      t.emplace_back(row1, col(i - 1, j - 1, 1), (f2S + f3W) * q);

      // d1bar(f2 d2bar v1) + d2bar(f3 d1bar v1)
      t.emplace_back(row2, col(i + 1, j + 1, 0), (f2E + f3N) * q);
      t.emplace_back(row2, col(i + 1, j - 1, 0), -(f2E + f3S) * q);
      t.emplace_back(row2, col(i - 1, j + 1, 0), -(f2W + f3N) * q);
      t.emplace_back(row2, col(i - 1, j - 1, 0), (f2W + f3S) * q);
      // d2(f1 d2p v2)
      t.emplace_back(row2, col(i, j + 1, 1), fN * idy2);
      t.emplace_back(row2, col(i, j - 1, 1), fS * idy2);
      t.emplace_back(row2, col(i, j, 1), -(fN + fS) * idy2);
    }
  }
  A.setFromTriplets(t.begin(), t.end());
  return A;
}

std::vector<double> interleave(const VecField2& v) {
  const std::size_t n = v.grid().size();
  std::vector<double> flat(2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    flat[2 * k] = v.c1[k];
    flat[2 * k + 1] = v.c2[k];
  }
  return flat;
}

VecField2 deinterleave(const Grid2D& grid, std::span<const double> flat) {
  if (flat.size() != 2 * grid.size()) throw UsageError("deinterleave: size mismatch");
  VecField2 v(grid);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    v.c1[k] = flat[2 * k];
    v.c2[k] = flat[2 * k + 1];
  }
  return v;
}

double relative_asymmetry(const Eigen::SparseMatrix<double>& A) {
  const Eigen::SparseMatrix<double> At = A.transpose();
  const Eigen::SparseMatrix<double> D = A - At;
  double max_a = 0.0;
  double max_d = 0.0;
  for (int k = 0; k < A.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(A, k); it; ++it)
      max_a = std::max(max_a, std::abs(it.value()));
  for (int k = 0; k < D.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(D, k); it; ++it)
      max_d = std::max(max_d, std::abs(it.value()));
  return max_a == 0.0 ? 0.0 : max_d / max_a;
}

}  // namespace korteweg
