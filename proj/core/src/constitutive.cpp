#include "korteweg/constitutive.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "korteweg/errors.hpp"

namespace korteweg {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_positive(double rho, const char* where) {
  if (!(rho > 0.0)) {
    std::ostringstream os;
    os << where << ": density must be positive, got " << rho;
    throw DomainError(os.str());
  }
}

constexpr double kQuadratureTolerance = 1e-12;

// int_a^b g(s) ds with a tanh-sinh rule (endpoint singularities are allowed).
template <class Integrand>
double integrate(Integrand g, double a, double b) {
  if (a == b) return 0.0;
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  static boost::math::quadrature::tanh_sinh<double> rule;
  double error = 0.0;
  double l1 = 0.0;
  double q = 0.0;
  try {
    q = rule.integrate(g, lo, hi, kQuadratureTolerance, &error, &l1);
  } catch (const std::exception& e) {
    throw LawError(std::string("capillarity quadrature failed: ") + e.what());
  }
  if (!std::isfinite(q) || error > 1e-8 * std::max(l1, 1e-300)) {
    std::ostringstream os;
    os << "capillarity quadrature did not converge on [" << lo << ", " << hi
       << "]: estimate " << q << ", error " << error;
    throw LawError(os.str());
  }
  return a < b ? q : -q;
}

// 0 when g ~ s^alpha with alpha > -1 near the origin, else 1.
template <class Integrand>
double default_reference(Integrand g) {
  constexpr double s_small = 1e-12;
  constexpr double s_large = 1e-10;
  const double g_small = g(s_small);
  const double g_large = g(s_large);
  if (!std::isfinite(g_small) || !std::isfinite(g_large)) return 1.0;
  if (g_small <= 0.0 || g_large <= 0.0) return 0.0;
  const double alpha = std::log(g_small / g_large) / std::log(s_small / s_large);
  return alpha > -0.95 ? 0.0 : 1.0;
}

double generic_K(const GenericCapillarity& l, double rho) {
  const double k = l.K(rho);
  if (!(k >= 0.0) || !std::isfinite(k)) {
    std::ostringstream os;
    os << "generic capillarity returned invalid K(" << rho << ") = " << k;
    throw LawError(os.str());
  }
  return k;
}

}  // namespace

CapillarityLaw::CapillarityLaw(ConstantCapillarity l) : law_(l) {
  if (!(l.K0 >= 0.0)) throw LawError("constant capillarity requires K0 >= 0");
}

CapillarityLaw::CapillarityLaw(QuantumCapillarity l) : law_(l) {
  if (!(l.c > 0.0)) throw LawError("quantum capillarity requires c > 0");
}

CapillarityLaw::CapillarityLaw(GenericCapillarity l) : law_(std::move(l)) {
  if (!std::get<GenericCapillarity>(law_).K) throw LawError("generic capillarity requires K");
  resolve_references();
}

void CapillarityLaw::resolve_references() {
  const auto& l = std::get<GenericCapillarity>(law_);
  if (l.rho_ref) {
    if (!(*l.rho_ref >= 0.0)) throw LawError("rho_ref must be non-negative");
    F_ref_ = phi_ref_ = psi_ref_ = *l.rho_ref;
    return;
  }
  const auto K = l.K;
  F_ref_ = default_reference([&](double s) { return std::sqrt(K(s) * s); });
  phi_ref_ = default_reference([&](double s) { return std::sqrt(K(s) / s); });
  psi_ref_ = default_reference([&](double s) { return std::sqrt(K(s)); });
}

bool CapillarityLaw::is_trivial() const noexcept {
  if (const auto* c = std::get_if<ConstantCapillarity>(&law_)) return c->K0 == 0.0;
  return false;
}

double CapillarityLaw::K(double rho) const {
  require_positive(rho, "K");
  return std::visit(overloaded{
                        [&](const ConstantCapillarity& l) { return l.K0; },
                        [&](const QuantumCapillarity& l) { return l.c / rho; },
                        [&](const GenericCapillarity& l) { return generic_K(l, rho); },
                    },
                    law_);
}

CapillarityValues eval_capillary(const CapillarityLaw& law, double rho) {
  require_positive(rho, "eval_capillary");
  CapillarityValues v;
  std::visit(overloaded{
                 [&](const ConstantCapillarity& l) {
                   const double sk = std::sqrt(l.K0);
                   const double sr = std::sqrt(rho);
                   v.K = l.K0;
                   v.phi = 2.0 * sk * sr;
                   v.dphi = sk / sr;
                   v.F = (2.0 / 3.0) * sk * rho * sr;
                   v.dF = sk * sr;
                   v.G = (1.0 / 3.0) * sk * rho * sr;
                   v.psi = sk * rho;
                 },
                 [&](const QuantumCapillarity& l) {
                   const double sc = std::sqrt(l.c);
                   v.K = l.c / rho;
                   v.phi = sc * std::log(rho);
                   v.dphi = sc / rho;
                   v.F = sc * rho;
                   v.dF = sc;
                   v.G = 0.0;
                   v.psi = 2.0 * sc * std::sqrt(rho);
                 },
                 [&](const GenericCapillarity& l) {
                   const auto sqrtKs = [&](double s) { return std::sqrt(generic_K(l, s) * s); };
                   const auto sqrtK_over_s = [&](double s) { return std::sqrt(generic_K(l, s) / s); };
                   const auto sqrtK = [&](double s) { return std::sqrt(generic_K(l, s)); };
                   v.K = generic_K(l, rho);
                   v.dF = std::sqrt(v.K * rho);
                   v.dphi = std::sqrt(v.K / rho);
                   v.F = integrate(sqrtKs, law.F_reference(), rho);
                   v.phi = integrate(sqrtK_over_s, law.phi_reference(), rho);
                   v.psi = integrate(sqrtK, law.psi_reference(), rho);
                   v.G = rho * v.dF - v.F;
                 },
             },
             law.variant());
  return v;
}

CapillaryCoefficients capillary_coefficients(const CapillarityLaw& law, double rho) {
  require_positive(rho, "capillary_coefficients");
  return std::visit(
      overloaded{
          [&](const ConstantCapillarity& l) {
            const double a = std::sqrt(l.K0) * rho * std::sqrt(rho);
            return CapillaryCoefficients{a, (2.0 / 3.0) * a, (1.0 / 3.0) * a};
          },
          [&](const QuantumCapillarity& l) {
            const double a = std::sqrt(l.c) * rho;
            return CapillaryCoefficients{a, a, 0.0};
          },
          [&](const GenericCapillarity& l) {
            const double f1 = rho * std::sqrt(generic_K(l, rho) * rho);
            const double F = integrate([&](double s) { return std::sqrt(generic_K(l, s) * s); },
                                       law.F_reference(), rho);
            return CapillaryCoefficients{f1, F, f1 - F};
          },
      },
      law.variant());
}

double capillary_potential(const CapillarityLaw& law, double rho) {
  require_positive(rho, "capillary_potential");
  return std::visit(
      overloaded{
          [&](const ConstantCapillarity& l) { return 2.0 * std::sqrt(l.K0 * rho); },
          [&](const QuantumCapillarity& l) { return std::sqrt(l.c) * std::log(rho); },
          [&](const GenericCapillarity& l) {
            return integrate([&](double s) { return std::sqrt(generic_K(l, s) / s); },
                             law.phi_reference(), rho);
          },
      },
      law.variant());
}

LawConsistencyReport check_law_consistency(const CapillarityLaw& law,
                                           std::span<const double> rho_samples) {
  LawConsistencyReport r;
  for (double rho : rho_samples) {
    require_positive(rho, "check_law_consistency");
    const double h = 1e-6 * rho;
    const auto plus = eval_capillary(law, rho + h);
    const auto minus = eval_capillary(law, rho - h);
    const double K = law.K(rho);
    const double dF_fd = (plus.F - minus.F) / (2.0 * h);
    const double dphi_fd = (plus.phi - minus.phi) / (2.0 * h);
    const double dF = std::sqrt(K * rho);
    if (dF > 0.0) {
      r.max_dF_residual = std::max(r.max_dF_residual, std::abs(dF_fd - dF) / std::abs(dF_fd));
    }
    if (K > 0.0) {
      r.max_dphi_residual = std::max(r.max_dphi_residual,
                                     std::abs(std::sqrt(rho) * dphi_fd - std::sqrt(K)) / std::sqrt(K));
    }
  }
  return r;
}

PressureValues eval_pressure(const PressureLaw& law, double rho) {
  require_positive(rho, "eval_pressure");
  return std::visit(overloaded{
                        [&](const ShallowWaterPressure& l) {
                          const double gc = l.g * std::cos(l.theta);
                          return PressureValues{0.5 * gc * rho * rho, gc * rho, 0.5 * gc * rho * rho};
                        },
                        [&](const PowerLawPressure& l) {
                          const double p = l.kappa * std::pow(rho, l.gamma);
                          return PressureValues{p, l.gamma * p / rho, p / (l.gamma - 1.0)};
                        },
                    },
                    law);
}

double potential_energy_density(const PressureLaw& law, double rho) {
  return eval_pressure(law, rho).F0;
}

}  // namespace korteweg
