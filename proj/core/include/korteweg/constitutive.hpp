#pragma once

#include <functional>
#include <optional>
#include <span>
#include <variant>

namespace korteweg {

// ---------------------------------------------------------------------------
// Capillarity laws K(rho) and the functions derived from them:
//
//   sqrt(rho) * phi'(rho) = sqrt(K(rho))        (w = grad phi(rho))
//   F'(rho)              = sqrt(K(rho) * rho)
//   G(rho)               = rho F'(rho) - F(rho)
//   psi(rho)             = int_0^rho sqrt(K(s)) ds
//
// F and phi are only defined up to additive constants; the scheme uses
// derivatives of phi and the combinations F, rho F', G of F.
// ---------------------------------------------------------------------------

/// K(rho) = K0 (classical surface tension). K0 = 0 disables capillarity.
struct ConstantCapillarity {
  double K0 = 0.0;
};

/// K(rho) = c / rho (quantum hydrodynamics).
struct QuantumCapillarity {
  double c = 1.0;
};

/// Arbitrary positive K(rho). F, phi and psi are obtained by quadrature.
///
/// The lower integration bound of each integral is `rho_ref` when set.
/// Otherwise it is chosen per integral: 0 if the integrand is integrable at
/// the origin (probed from its power-law exponent near 0), else 1.
struct GenericCapillarity {
  std::function<double(double)> K;
  std::optional<double> rho_ref;
};

class CapillarityLaw {
public:
  using Variant = std::variant<ConstantCapillarity, QuantumCapillarity, GenericCapillarity>;

  CapillarityLaw() : law_(ConstantCapillarity{}) {}
  CapillarityLaw(ConstantCapillarity l);
  CapillarityLaw(QuantumCapillarity l);
  CapillarityLaw(GenericCapillarity l);

  static CapillarityLaw constant(double K0) { return CapillarityLaw(ConstantCapillarity{K0}); }
  static CapillarityLaw quantum(double c) { return CapillarityLaw(QuantumCapillarity{c}); }
  static CapillarityLaw generic(std::function<double(double)> K,
                                std::optional<double> rho_ref = std::nullopt) {
    return CapillarityLaw(GenericCapillarity{std::move(K), rho_ref});
  }

  const Variant& variant() const noexcept { return law_; }

  /// True when K vanishes identically (the capillary substep is the identity).
  bool is_trivial() const noexcept;

  double K(double rho) const;

  // Resolved lower integration bounds (Generic only; closed forms otherwise).
  double F_reference() const noexcept { return F_ref_; }
  double phi_reference() const noexcept { return phi_ref_; }
  double psi_reference() const noexcept { return psi_ref_; }

private:
  void resolve_references();

  Variant law_;
  double F_ref_ = 0.0;
  double phi_ref_ = 0.0;
  double psi_ref_ = 0.0;
};

struct CapillarityValues {
  double K = 0.0;
  double phi = 0.0;
  double dphi = 0.0;
  double F = 0.0;
  double dF = 0.0;
  double G = 0.0;    ///< rho F' - F
  double psi = 0.0;  ///< int sqrt(K)
};

/// Full evaluation of the capillarity chain at rho > 0.
/// Throws DomainError for rho <= 0 and LawError on quadrature failure.
CapillarityValues eval_capillary(const CapillarityLaw& law, double rho);

/// Coefficients of the discrete capillary operator at one cell:
/// f1 = rho F'(rho), f2 = F(rho), f3 = rho F'(rho) - F(rho).
struct CapillaryCoefficients {
  double f1 = 0.0;
  double f2 = 0.0;
  double f3 = 0.0;
};

CapillaryCoefficients capillary_coefficients(const CapillarityLaw& law, double rho);

/// phi(rho) only; cheaper than eval_capillary for Generic laws.
double capillary_potential(const CapillarityLaw& law, double rho);

struct LawConsistencyReport {
  double max_dF_residual = 0.0;    ///< max |F'_fd - sqrt(K rho)| / |F'|
  double max_dphi_residual = 0.0;  ///< max |sqrt(rho) phi'_fd - sqrt(K)| / sqrt(K)
};

/// Central finite differences (step 1e-6 rho) of F and phi against the
/// defining relations.
LawConsistencyReport check_law_consistency(const CapillarityLaw& law,
                                           std::span<const double> rho_samples);

// ---------------------------------------------------------------------------
// Barotropic pressure laws. F0 is the potential energy density with
// p = rho F0' - F0.
// ---------------------------------------------------------------------------

/// p(h) = g cos(theta) h^2 / 2.
struct ShallowWaterPressure {
  double g = 9.8;
  double theta = 0.0;  // rad
};

/// p(rho) = kappa rho^gamma.
struct PowerLawPressure {
  double kappa = 1.0;
  double gamma = 2.0;
};

using PressureLaw = std::variant<ShallowWaterPressure, PowerLawPressure>;

struct PressureValues {
  double p = 0.0;
  double dp = 0.0;
  double F0 = 0.0;
};

PressureValues eval_pressure(const PressureLaw& law, double rho);

/// Potential energy density F0(rho) alone.
double potential_energy_density(const PressureLaw& law, double rho);

}  // namespace korteweg
