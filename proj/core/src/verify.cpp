#include "korteweg/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "korteweg/errors.hpp"
#include "korteweg/operators.hpp"

namespace korteweg {

namespace {

std::string fmt(const char* format, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

void check(VerifyReport& r, const std::string& name, double value, double threshold,
           bool less_is_better = true) {
  const bool ok = less_is_better ? value <= threshold : value >= threshold;
  r.passed = r.passed && ok;
  r.lines.push_back(fmt("%s %-40s value=%.3e threshold=%.1e", ok ? "PASS" : "FAIL", name.c_str(),
                        value, threshold));
}

ScalarField random_field(const Grid2D& g, std::mt19937_64& rng, double lo, double hi,
                         Location loc = Location::Cell) {
  std::uniform_real_distribution<double> d(lo, hi);
  ScalarField f(g, 0.0, loc);
  for (auto& v : f.values()) v = d(rng);
  return f;
}

// |a - b| relative to the magnitude of the summed products.
double sum_identity_residual(double lhs, double rhs, double scale) {
  return scale == 0.0 ? std::abs(lhs - rhs) : std::abs(lhs - rhs) / scale;
}

double abs_inner(const ScalarField& a, const ScalarField& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += std::abs(a[k] * b[k]);
  return s;
}

CapillarityLaw named_law(const std::string& name) {
  if (name == "constant") return CapillarityLaw::constant(1.0);
  if (name == "quantum") return CapillarityLaw::quantum(1.0);
  if (name == "generic") return CapillarityLaw::generic([](double r) { return 1.0 / std::sqrt(r); });
  throw UsageError("unknown capillarity law: " + name);
}

}  // namespace

VerifyReport verify_duality(int n, std::uint64_t seed) {
  VerifyReport r{"duality", true, {}, {}};
  std::mt19937_64 rng(seed);
  const Grid2D g(n, n, 1.0, 1.0);

  double sbp = 0.0;
  for (const auto& [face, loc] : {std::pair{1, Location::XFace}, std::pair{2, Location::YFace}}) {
    const ScalarField a = random_field(g, rng, -1.0, 1.0, loc);
    const ScalarField b = random_field(g, rng, -1.0, 1.0);
    const ScalarField da = face == 1 ? d1(a) : d2(a);
    const ScalarField db = face == 1 ? d1p(b) : d2p(b);
    const double lhs = inner(da, b);
    double rhs = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) rhs -= a[k] * db[k];
    sbp = std::max(sbp, sum_identity_residual(lhs, rhs, abs_inner(da, b)));
  }
  check(r, "summation by parts d/d+", sbp, 1e-13);

  double skew = 0.0;
  for (int dir = 1; dir <= 2; ++dir) {
    const ScalarField a = random_field(g, rng, -1.0, 1.0);
    const ScalarField b = random_field(g, rng, -1.0, 1.0);
    const ScalarField da = dir == 1 ? d1bar(a) : d2bar(a);
    const ScalarField db = dir == 1 ? d1bar(b) : d2bar(b);
    skew = std::max(skew, sum_identity_residual(inner(da, b), -inner(a, db), abs_inner(da, b)));
  }
  check(r, "centred skew-adjointness", skew, 1e-13);

  {
    const ScalarField a = random_field(g, rng, -1.0, 1.0);
    const ScalarField b = random_field(g, rng, -1.0, 1.0);
    const ScalarField La = d1(d1p(a));
    const ScalarField Lb = d1(d1p(b));
    check(r, "d1 d1p self-adjointness",
          sum_identity_residual(inner(Lb, a), inner(b, La), abs_inner(Lb, a)), 1e-13);
  }

  {
    const ScalarField rho = random_field(g, rng, 0.5, 1.5);
    const CapillaryOperator T(rho, CapillarityLaw::constant(1.0));
    VecField2 u(g), v(g);
    u.c1 = random_field(g, rng, -1.0, 1.0);
    u.c2 = random_field(g, rng, -1.0, 1.0);
    v.c1 = random_field(g, rng, -1.0, 1.0);
    v.c2 = random_field(g, rng, -1.0, 1.0);
    const VecField2 Tu = T.apply(u);
    const VecField2 Tv = T.apply(v);
    const double scale = abs_inner(v.c1, Tu.c1) + abs_inner(v.c2, Tu.c2);
    check(r, "T_h self-adjointness", sum_identity_residual(inner(v, Tu), inner(u, Tv), scale), 1e-12);
  }
  return r;
}

VerifyReport verify_symmetry(int n, int fields, std::uint64_t seed) {
  VerifyReport r{"symmetry", true, {}, {}};
  std::mt19937_64 rng(seed);
  const Grid2D g(n, n, 1.0, 1.0);
  const CapillarityLaw laws[] = {CapillarityLaw::constant(1.0), CapillarityLaw::quantum(1.0)};
  double asym = 0.0;
  double mismatch = 0.0;
  for (int f = 0; f < fields; ++f) {
    const ScalarField rho = random_field(g, rng, 0.5, 1.5);
    const CapillaryOperator T(rho, laws[f % 2]);
    const Eigen::SparseMatrix<double> A = T.assemble();
    asym = std::max(asym, relative_asymmetry(A));

    VecField2 v(g);
    v.c1 = random_field(g, rng, -1.0, 1.0);
    v.c2 = random_field(g, rng, -1.0, 1.0);
    const std::vector<double> flat = interleave(v);
    const Eigen::Map<const Eigen::VectorXd> x(flat.data(), static_cast<Eigen::Index>(flat.size()));
    const Eigen::VectorXd Ax = A * x;
    const std::vector<double> mf = interleave(T.apply(v));
    double diff = 0.0, norm = 0.0;
    for (std::size_t k = 0; k < mf.size(); ++k) {
      diff = std::max(diff, std::abs(mf[k] - Ax[static_cast<Eigen::Index>(k)]));
      norm = std::max(norm, std::abs(Ax[static_cast<Eigen::Index>(k)]));
    }
    mismatch = std::max(mismatch, norm == 0.0 ? diff : diff / norm);
  }
  check(r, fmt("assembled T_h asymmetry (%d fields)", fields), asym, 1e-12);
  check(r, "matrix-free vs assembled apply", mismatch, 1e-12);
  return r;
}

VerifyReport verify_bohm(int n, const std::vector<std::string>& laws) {
  VerifyReport r{"bohm", true, {}, {}};
  const Profile rho = [](double x, double y) {
    return 2.0 + 0.5 * std::sin(2.0 * std::numbers::pi * x) * std::cos(2.0 * std::numbers::pi * y);
  };
  const std::vector<int> sizes = {n, 2 * n, 4 * n};

  const auto table = [](const std::vector<ConvergenceRow>& rows) {
    std::ostringstream os;
    os << "n,residual_rel,observed_order\n";
    for (const auto& row : rows) os << fmt("%d,%.17g,%.17g\n", row.n, row.residual_rel, row.observed_order);
    return os.str();
  };
  const auto min_order = [](const std::vector<ConvergenceRow>& rows) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < rows.size(); ++k) m = std::min(m, rows[k].observed_order);
    return m;
  };

  for (const auto& name : laws) {
    const CapillarityLaw law = named_law(name);
    const auto rows = convergence_study(sizes, 1.0, 1.0, [&](const Grid2D& g) {
      return bohm_identity_residual(rho, law, g).residual_rel;
    });
    r.tables["bohm_" + name + ".csv"] = table(rows);
    for (const auto& row : rows) {
      r.lines.push_back(fmt("     %-9s n=%-4d residual_rel=%.3e order=%.3f", name.c_str(), row.n,
                            row.residual_rel, row.observed_order));
    }
    check(r, "bohm identity order (" + name + ")", min_order(rows), 1.8, false);

    if (name == "quantum") {
      const auto alt = convergence_study(sizes, 1.0, 1.0, [&](const Grid2D& g) {
        return quantum_bohm_form_residual(rho, 1.0, g).residual_rel;
      });
      r.tables["bohm_quantum_classical.csv"] = table(alt);
      check(r, "classical bohm form order (quantum)", min_order(alt), 1.8, false);
    }
  }
  return r;
}

EntropyCase entropy_case(int n, std::uint64_t seed) {
  const Grid2D g(n, n, 1.0, 1.0);
  Model m;
  m.flux.pressure = PowerLawPressure{1.0, 2.0};
  m.capillarity = seed % 2 == 0 ? CapillarityLaw::constant(1e-3) : CapillarityLaw::quantum(1e-3);
  m.cfl = 0.45;
  m.dt_max = 1.0;
  RandomSmoothParams p;
  p.rho_mean = 1.0;
  p.rho_amp = 0.2;
  p.u_amp = 0.3;
  p.modes = 3;
  return {random_smooth_state(g, m.capillarity, p, seed), m};
}

VerifyReport verify_entropy(int n, long steps, int seeds, std::uint64_t first_seed) {
  VerifyReport r{"entropy", true, {}, {}};
  double worst = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < seeds; ++s) {
    const std::uint64_t seed = first_seed + static_cast<std::uint64_t>(s);
    EntropyCase c = entropy_case(n, seed);
    Simulation sim(std::move(c.initial), c.model);
    double seed_worst = -std::numeric_limits<double>::infinity();
    for (long k = 0; k < steps; ++k) {
      const double before = sim.log().back().etot;
      const double after = sim.advance().etot;
      seed_worst = std::max(seed_worst, (after - before) / before);
    }
    const double drop = (sim.log().front().etot - sim.log().back().etot) / sim.log().front().etot;
    r.lines.push_back(fmt("     seed=%llu max_rel_increase=%.3e total_rel_drop=%.3e",
                          static_cast<unsigned long long>(seed), seed_worst, drop));
    worst = std::max(worst, seed_worst);
  }
  check(r, fmt("max per-step energy increase (%d seeds)", seeds), worst, 1e-12);
  return r;
}

NusseltCase nusselt_case(int nx, int ny) {
  FilmParams film;
  film.theta = 6.4 * std::numbers::pi / 180.0;
  film.nu = 2.3e-6;
  film.sigma = 67e-3;
  film.rho_fluid = 1.07e3;
  ScenarioParams sp;
  sp.h0 = 1e-3;
  sp.perturbation_eps = 0.0;
  const Grid2D g(nx, ny, 0.2, 0.1);
  Scenario sc = make_scenario(ScenarioKind::RollWave2D, film, sp, g);
  Model m;
  m.flux = sc.flux;
  m.capillarity = sc.capillarity;
  m.film = film;
  return {std::move(sc.initial), m};
}

double relative_deviation(const State& s, const State& ref) {
  double rho_max = 0.0, mom_max = 0.0;
  for (std::size_t k = 0; k < ref.grid().size(); ++k) {
    rho_max = std::max(rho_max, std::abs(ref.rho[k]));
    mom_max = std::max({mom_max, std::abs(ref.mu.c1[k]), std::abs(ref.mu.c2[k])});
  }
  double dev = 0.0;
  for (std::size_t k = 0; k < ref.grid().size(); ++k) {
    dev = std::max(dev, std::abs(s.rho[k] - ref.rho[k]) / rho_max);
    if (mom_max > 0.0) {
      dev = std::max({dev, std::abs(s.mu.c1[k] - ref.mu.c1[k]) / mom_max,
                      std::abs(s.mu.c2[k] - ref.mu.c2[k]) / mom_max,
                      std::abs(s.mw.c1[k] - ref.mw.c1[k]) / mom_max,
                      std::abs(s.mw.c2[k] - ref.mw.c2[k]) / mom_max});
    }
  }
  return dev;
}

VerifyReport verify_nusselt(int n, long steps) {
  VerifyReport r{"nusselt", true, {}, {}};
  NusseltCase c = nusselt_case(n, std::max(4, n / 2));
  const State ref = c.initial;
  Simulation sim(std::move(c.initial), c.model);
  double dev = 0.0;
  for (long k = 0; k < steps; ++k) {
    sim.advance();
    dev = std::max(dev, relative_deviation(sim.state(), ref));
  }
  check(r, fmt("nusselt film deviation (%ld steps)", steps), dev, 1e-10);
  return r;
}

VerifyReport verify(const std::string& suite, const VerifyOptions& o) {
  const auto n_or = [&](int d) { return o.n > 0 ? o.n : d; };
  const auto steps_or = [&](long d) { return o.steps > 0 ? o.steps : d; };
  if (suite == "duality") return verify_duality(n_or(32), o.seed);
  if (suite == "symmetry") return verify_symmetry(n_or(16), 20, o.seed);
  if (suite == "bohm") {
    const std::vector<std::string> laws =
        o.laws.empty() ? std::vector<std::string>{"constant", "quantum"} : o.laws;
    return verify_bohm(n_or(32), laws);
  }
  if (suite == "entropy") return verify_entropy(n_or(64), steps_or(500), std::max(1, o.seeds), o.seed);
  if (suite == "nusselt") return verify_nusselt(n_or(64), steps_or(100));
  throw UsageError("unknown verify suite: " + suite);
}

}  // namespace korteweg
