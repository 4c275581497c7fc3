#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "korteweg/errors.hpp"
#include "korteweg/simulation.hpp"
#include "korteweg/swfilm.hpp"
#include "korteweg/verify.hpp"
#include "test_util.hpp"

using namespace korteweg;
using korteweg::testing::random_field;
using korteweg::testing::rel_diff;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

FilmParams glycerin(double theta_deg) {
  FilmParams p;
  p.theta = theta_deg * kDeg;
  p.nu = 2.3e-6;
  p.sigma = 67e-3;
  p.rho_fluid = 1.07e3;
  return p;
}

FilmParams drop_params() {
  FilmParams p;
  p.theta = 60.0 * kDeg;
  p.nu = 1.0e-6;
  p.sigma = 67e-3;
  p.rho_fluid = 1.0e3;
  p.h_precursor = 1e-8;
  return p;
}

Model film_model(const FilmParams& p) {
  Model m;
  m.flux = film_flux_spec(p, 1e-12);
  m.capillarity = film_capillarity(p);
  m.film = p;
  return m;
}

}  // namespace

TEST(Film, ParameterValidation) {
  EXPECT_NO_THROW(glycerin(6.4).validate());
  FilmParams p = glycerin(6.4);
  p.nu = 0.0;
  EXPECT_THROW(p.validate(), LawError);
  p.theta = 0.0;
  EXPECT_NO_THROW(p.validate());
  p = glycerin(90.0);
  EXPECT_THROW(p.validate(), LawError);
  p = glycerin(10.0);
  p.sigma = -1.0;
  EXPECT_THROW(p.validate(), LawError);
}

TEST(Film, CapillarityFromSurfaceTension) {
  const auto law = film_capillarity(glycerin(0.0));
  EXPECT_NEAR(law.K(1e-3), 67e-3 / 1.07e3, 1e-20);
  EXPECT_NEAR(law.K(1.0), 6.2617e-5, 1e-9);

  FilmParams dry = glycerin(0.0);
  dry.sigma = 0.0;
  EXPECT_TRUE(film_capillarity(dry).is_trivial());

  // F(h) = (2/3) sqrt(K0) h^{3/2} against midpoint quadrature of sqrt(K0 s).
  const double K0 = 67e-3 / 1.07e3, h = 2e-3;
  const int n = 200000;
  double q = 0.0;
  for (int k = 0; k < n; ++k) q += std::sqrt(K0 * (k + 0.5) * h / n) * h / n;
  EXPECT_NEAR(eval_capillary(law, h).F, q, 1e-8 * q);
}

TEST(Film, ExtraFluxCoefficient) {
  const FilmParams p = glycerin(6.4);
  const FluxSpec s = film_flux_spec(p, 1e-12);
  const double c = std::pow(9.8 * std::sin(6.4 * kDeg) / 2.3e-6, 2);
  EXPECT_LE(rel_diff(s.extra_flux_coeff, c), 1e-14);
  EXPECT_EQ(film_flux_spec(glycerin(0.0), 1e-12).extra_flux_coeff, 0.0);
}

TEST(Source, InviscidLimitIsPureGravity) {
  FilmParams p = glycerin(30.0);
  p.nu = 1e-300;
  const Grid2D g(4, 4, 1.0, 1.0);
  const ScalarField h(g, 2e-3);
  const VecField2 mu(g, 1e-4, -2e-4);
  const auto out = source_implicit(h, mu, p, 0.01);
  for (std::size_t k = 0; k < g.size(); ++k) {
    EXPECT_NEAR(out.c1[k], 1e-4 + 0.01 * 9.8 * 2e-3 * 0.5, 1e-15);
    EXPECT_NEAR(out.c2[k], -2e-4, 1e-18);
  }
}

TEST(Source, NusseltIsFixedPoint) {
  const FilmParams p = glycerin(6.4);
  const Grid2D g(6, 4, 1.0, 1.0);
  std::mt19937_64 rng(1);
  const auto h = random_field(g, rng, 5e-4, 2e-3);
  VecField2 mu(g);
  for (std::size_t k = 0; k < g.size(); ++k)
    mu.c1[k] = h[k] * 9.8 * std::sin(6.4 * kDeg) * h[k] * h[k] / (3.0 * 2.3e-6);
  for (double dt : {1e-6, 1e-3, 1.0, 100.0}) {
    const auto out = source_implicit(h, mu, p, dt);
    for (std::size_t k = 0; k < g.size(); ++k) {
      EXPECT_NEAR(out.c1[k], mu.c1[k], 1e-13 * mu.c1[k]);
      EXPECT_EQ(out.c2[k], 0.0);
    }
  }
}

TEST(Source, FlatRestIsZeroAndTransverseContracts) {
  const FilmParams p = glycerin(0.0);
  const Grid2D g(4, 4, 1.0, 1.0);
  std::mt19937_64 rng(2);
  const auto h = random_field(g, rng, 1e-4, 1e-3);
  const auto zero = source_implicit(h, VecField2(g), p, 0.1);
  EXPECT_EQ(korteweg::testing::max_abs(zero.c1), 0.0);
  VecField2 mu(g);
  mu.c2 = random_field(g, rng, -1e-3, 1e-3);
  const auto out = source_implicit(h, mu, p, 0.1);
  for (std::size_t k = 0; k < g.size(); ++k) EXPECT_LE(std::abs(out.c2[k]), std::abs(mu.c2[k]));
  ScalarField low(g, 1.0);
  low(2, 2) = 1e-13;
  EXPECT_THROW(source_implicit(low, mu, p, 0.1), StateError);
}

TEST(Scenario, RollWaveProfiles) {
  const FilmParams p = glycerin(6.4);
  ScenarioParams sp;
  sp.h0 = 1e-3;
  sp.perturbation_eps = 0.1;
  const Grid2D g(16, 8, 0.2, 0.1);
  const auto one = make_scenario(ScenarioKind::RollWave1D, p, sp, g);
  const auto two = make_scenario(ScenarioKind::RollWave2D, p, sp, g);
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      const double s = std::sin(2 * std::numbers::pi * g.x(i) / 0.2);
      const double h1 = 1e-3 * (1 + 0.1 * s);
      EXPECT_NEAR(one.initial.rho(i, j), h1, 1e-18);
      EXPECT_NEAR(one.initial.mu.c1(i, j), h1 * nusselt_velocity(p, h1), 1e-15 * h1);
      const double h2 = 1e-3 * (1 + 0.1 * s * (1 + 0.5 * std::cos(2 * std::numbers::pi * g.y(j) / 0.1)));
      EXPECT_NEAR(two.initial.rho(i, j), h2, 1e-18);
      EXPECT_EQ(two.initial.mu.c2(i, j), 0.0);
    }
  }
  EXPECT_EQ(one.initial.mw.c2(3, 3), 0.0);
  EXPECT_NE(one.initial.mw.c1(3, 3), 0.0);
}

TEST(Scenario, DropProfile) {
  const FilmParams p = drop_params();
  ScenarioParams sp;
  const Grid2D g(64, 64, 0.1, 0.1);
  const auto sc = make_scenario(ScenarioKind::Drop, p, sp, g);
  double hmax = 0.0, hmin = 1.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    hmax = std::max(hmax, sc.initial.rho[k]);
    hmin = std::min(hmin, sc.initial.rho[k]);
    EXPECT_EQ(sc.initial.mu.c1[k], 0.0);
  }
  EXPECT_EQ(hmin, 1e-8);
  EXPECT_GT(hmax, 0.9 * 5e-4);
  EXPECT_LE(hmax, 5e-4 + 1e-8);
  // A drop centred on x = 0 wraps around the periodic boundary symmetrically.
  sp.drop_x = 0.0;
  const auto wrapped = make_scenario(ScenarioKind::Drop, p, sp, g);
  for (int i = 0; i < 8; ++i) EXPECT_NEAR(wrapped.initial.rho(i, 32), wrapped.initial.rho(63 - i, 32), 1e-18);
  EXPECT_GT(wrapped.initial.rho(0, 32), 4e-4);
}

TEST(Scenario, NusseltFilmStaysPut) {
  const auto c = nusselt_case(32, 16);
  Simulation sim(c.initial, c.model);
  for (int n = 0; n < 100; ++n) sim.advance();
  EXPECT_LE(relative_deviation(sim.state(), c.initial), 1e-10);
}

TEST(Film, ReducesToCoreWithoutSourceOrTension) {
  FilmParams p;
  p.theta = 0.0;
  p.nu = 0.0;
  p.sigma = 0.0;
  const Grid2D g(24, 24, 1.0, 1.0);
  RandomSmoothParams rp;
  rp.rho_amp = 0.2;
  rp.u_amp = 0.5;
  const State init = random_smooth_state(g, film_capillarity(p), rp, 4);

  Model core;
  core.flux.pressure = ShallowWaterPressure{9.8, 0.0};
  core.capillarity = CapillarityLaw::constant(0.0);
  Simulation a(init, core);
  Simulation b(init, film_model(p));
  for (int n = 0; n < 50; ++n) {
    a.advance();
    b.advance();
  }
  EXPECT_LE(relative_deviation(a.state(), b.state()), 1e-12);
  EXPECT_LE(rel_diff(a.time(), b.time()), 1e-12);
}

TEST(Scenario, DropPrecursorHoldsInitially) {
  const FilmParams p = drop_params();
  const Grid2D g(128, 128, 0.1, 0.1);
  const auto sc = make_scenario(ScenarioKind::Drop, p, ScenarioParams{}, g);
  Simulation sim(sc.initial, film_model(p));
  for (int n = 0; n < 100; ++n) {
    sim.advance();
    ASSERT_GE(min_value(sim.state().rho), 1e-8 * (1 - 1e-6)) << "step " << n + 1;
  }
}

TEST(Scenario, FilmAtRestAcceleratesTowardNusselt) {
  auto c = nusselt_case(16, 8);
  const double target = c.initial.mu.c1[0];
  ASSERT_GT(target, 0.0);
  State rest = c.initial;
  for (std::size_t k = 0; k < rest.grid().size(); ++k) rest.mu.c1[k] = 0.0;
  Simulation sim(rest, c.model);
  double prev = 0.0;
  for (int n = 0; n < 20; ++n) {
    sim.advance();
    const double now = sim.state().mu.c1[0];
    EXPECT_GT(now, prev);
    EXPECT_LE(now, target * (1 + 1e-12));
    prev = now;
  }
}
