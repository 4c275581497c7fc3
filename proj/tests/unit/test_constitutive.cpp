#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "korteweg/constitutive.hpp"
#include "korteweg/errors.hpp"

using namespace korteweg;

namespace {

// Composite Simpson on [a, b] with an even number of panels; the oracle for
// the closed forms below.
template <class Fn>
double simpson(Fn f, double a, double b, int n = 20000) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int k = 1; k < n; ++k) s += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
  return s * h / 3.0;
}

}  // namespace

TEST(Capillarity, QuantumAtE) {
  const auto v = eval_capillary(CapillarityLaw::quantum(1.0), std::numbers::e);
  EXPECT_NEAR(v.phi, 1.0, 1e-15);
  EXPECT_NEAR(v.F, std::numbers::e, 1e-15);
  EXPECT_EQ(v.G, 0.0);
}

TEST(Capillarity, ConstantAgainstQuadrature) {
  const auto v = eval_capillary(CapillarityLaw::constant(1.0), 4.0);
  const double F_oracle = simpson([](double s) { return std::sqrt(s); }, 0.0, 4.0);
  EXPECT_NEAR(v.dF, 2.0, 1e-15);
  EXPECT_NEAR(v.F, F_oracle, 1e-5);
  EXPECT_NEAR(v.F, 16.0 / 3.0, 1e-14);
  EXPECT_NEAR(v.G, 4.0 * 2.0 - F_oracle, 1e-5);
  EXPECT_NEAR(v.G, 8.0 / 3.0, 1e-14);
}

TEST(Capillarity, ConstantVanishesAtOrigin) {
  const auto v = eval_capillary(CapillarityLaw::constant(1.0), 1e-14);
  EXPECT_LT(v.F, 1e-20);
  EXPECT_LT(v.G, 1e-20);
}

TEST(Capillarity, NonPositiveDensityIsDomainError) {
  EXPECT_THROW(eval_capillary(CapillarityLaw::constant(1.0), 0.0), DomainError);
  EXPECT_THROW(eval_capillary(CapillarityLaw::quantum(1.0), -1.0), DomainError);
}

TEST(Capillarity, GenericMatchesQuantum) {
  const auto generic = CapillarityLaw::generic([](double r) { return 1.0 / r; });
  const auto quantum = CapillarityLaw::quantum(1.0);
  // 1/rho is not integrable at 0 for phi, so phi is anchored at 1, like ln.
  EXPECT_EQ(generic.phi_reference(), 1.0);
  for (double r : {0.5, 1.0, 2.0}) {
    const auto a = eval_capillary(generic, r);
    const auto b = eval_capillary(quantum, r);
    EXPECT_NEAR(a.F, b.F, 1e-10 * std::abs(b.F)) << r;
    EXPECT_NEAR(a.phi, b.phi, 1e-10) << r;
    EXPECT_NEAR(a.G, 0.0, 1e-10 * b.F) << r;
  }
}

TEST(Capillarity, GenericConstantMatchesClosedForm) {
  const auto generic = CapillarityLaw::generic([](double) { return 2.5; });
  const auto constant = CapillarityLaw::constant(2.5);
  for (double r : {0.01, 0.3, 1.0, 7.0}) {
    const auto a = eval_capillary(generic, r);
    const auto b = eval_capillary(constant, r);
    EXPECT_NEAR(a.F, b.F, 1e-10 * b.F) << r;
    EXPECT_NEAR(a.phi, b.phi, 1e-10 * b.phi) << r;
    EXPECT_NEAR(a.G, b.G, 1e-10 * b.G) << r;
    EXPECT_NEAR(a.psi, b.psi, 1e-10 * b.psi) << r;
  }
}

TEST(Capillarity, ExplicitReferenceShiftsConstantsOnly) {
  const auto a = CapillarityLaw::generic([](double r) { return std::pow(r, 0.5); });
  const auto b = CapillarityLaw::generic([](double r) { return std::pow(r, 0.5); }, 1.0);
  const double dFa = eval_capillary(a, 3.0).F - eval_capillary(a, 2.0).F;
  const double dFb = eval_capillary(b, 3.0).F - eval_capillary(b, 2.0).F;
  EXPECT_NEAR(dFa, dFb, 1e-12 * std::abs(dFa));
  EXPECT_NEAR(eval_capillary(b, 1.0).F, 0.0, 1e-15);
}

TEST(Capillarity, GIdentityAllLaws) {
  const std::vector<CapillarityLaw> laws{
      CapillarityLaw::constant(0.7), CapillarityLaw::quantum(2.0),
      CapillarityLaw::generic([](double r) { return 1.0 + r * r; })};
  for (const auto& law : laws) {
    for (double r : {0.2, 1.0, 3.5}) {
      const auto v = eval_capillary(law, r);
      EXPECT_NEAR(v.G, r * v.dF - v.F, 1e-12 * (std::abs(r * v.dF) + std::abs(v.F)));
      EXPECT_NEAR(v.dF, std::sqrt(v.K * r), 1e-13 * v.dF);
      EXPECT_NEAR(std::sqrt(r) * v.dphi, std::sqrt(v.K), 1e-13 * std::sqrt(v.K));
    }
  }
}

TEST(Capillarity, LawConsistencyReports) {
  const std::vector<double> samples{0.5, 1.0, 2.0};
  const auto q = check_law_consistency(CapillarityLaw::quantum(4.0), samples);
  EXPECT_LE(q.max_dF_residual, 1e-8);
  EXPECT_LE(q.max_dphi_residual, 1e-8);
  const std::vector<double> one{1.0};
  const auto c = check_law_consistency(CapillarityLaw::constant(2.0), one);
  EXPECT_LE(c.max_dF_residual, 1e-8);
  EXPECT_LE(c.max_dphi_residual, 1e-8);
  const auto g = check_law_consistency(
      CapillarityLaw::generic([](double r) { return 1.0 / (1.0 + r); }), samples);
  EXPECT_LE(g.max_dF_residual, 1e-8);
  EXPECT_LE(g.max_dphi_residual, 1e-8);
}

TEST(Capillarity, TrivialLaw) {
  EXPECT_TRUE(CapillarityLaw::constant(0.0).is_trivial());
  EXPECT_FALSE(CapillarityLaw::constant(1e-9).is_trivial());
  const auto c = capillary_coefficients(CapillarityLaw::constant(0.0), 2.0);
  EXPECT_EQ(c.f1, 0.0);
  EXPECT_EQ(c.f2, 0.0);
  EXPECT_EQ(c.f3, 0.0);
}

TEST(Pressure, ShallowWaterExample) {
  const auto v = eval_pressure(ShallowWaterPressure{9.8, 0.0}, 1.0);
  EXPECT_DOUBLE_EQ(v.p, 4.9);
  EXPECT_DOUBLE_EQ(v.dp, 9.8);
  EXPECT_DOUBLE_EQ(v.F0, 4.9);
}

TEST(Pressure, ShallowWaterInclined) {
  const double theta = std::numbers::pi / 3.0;
  const auto v = eval_pressure(ShallowWaterPressure{9.8, theta}, 2.0);
  EXPECT_NEAR(v.p, 9.8 * std::cos(theta) * 2.0, 1e-14);
}

TEST(Pressure, PowerLawExample) {
  const auto v = eval_pressure(PowerLawPressure{1.0, 2.0}, 3.0);
  EXPECT_DOUBLE_EQ(v.p, 9.0);
  EXPECT_DOUBLE_EQ(v.F0, 9.0);
  EXPECT_DOUBLE_EQ(v.dp, 6.0);
}

TEST(Pressure, NonPositiveDensityIsDomainError) {
  EXPECT_THROW(eval_pressure(PowerLawPressure{}, 0.0), DomainError);
  EXPECT_THROW(eval_pressure(ShallowWaterPressure{}, -2.0), DomainError);
}

TEST(Pressure, BarotropicIdentityFiniteDifference) {
  const std::vector<PressureLaw> laws{ShallowWaterPressure{9.8, 0.3}, PowerLawPressure{1.0, 2.0},
                                      PowerLawPressure{0.5, 1.4}, PowerLawPressure{3.0, 3.0}};
  for (const auto& law : laws) {
    const double r = 1.37;
    const double h = 1e-5 * r;
    const double dF0 =
        (potential_energy_density(law, r + h) - potential_energy_density(law, r - h)) / (2 * h);
    const double p = eval_pressure(law, r).p;
    EXPECT_NEAR(r * dF0 - potential_energy_density(law, r), p, 1e-10 * p);
  }
}

TEST(Pressure, BarotropicIdentityRandomSamples) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> rho(1e-3, 10.0);
  const std::vector<PressureLaw> laws{ShallowWaterPressure{9.8, 1.0}, PowerLawPressure{2.0, 1.7}};
  for (const auto& law : laws) {
    for (int k = 0; k < 100; ++k) {
      const double r = rho(rng);
      const auto v = eval_pressure(law, r);
      // Hand-differentiated F0 for each law.
      const double dF0 = std::holds_alternative<ShallowWaterPressure>(law)
                             ? 9.8 * std::cos(1.0) * r
                             : 2.0 * 1.7 / 0.7 * std::pow(r, 0.7);
      EXPECT_NEAR(r * dF0 - v.F0, v.p, 1e-10 * v.p);
      EXPECT_GT(v.dp, 0.0);
    }
  }
}
