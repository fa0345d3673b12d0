#pragma once

// Dirac-Hestenes spinor machinery: polar decomposition, spinor-to-field
// maps, the duality-phased magnetic-current ansatz, auto-force, kinematic
// invariants, and the residual evaluators for the spinor equations.
//
// Natural units throughout (hbar = c = 1); masses are inverse lengths.

#include <optional>
#include <stdexcept>

#include "stanum/algebra.hpp"
#include "stanum/diffops.hpp"
#include "stanum/fields.hpp"

namespace stanum::spinor {

using fields::Branch;

struct SingularSpinor : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct OffShell : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// polar (Lorentz) decomposition psi = sqrt(rho) exp(beta g5 / 2) R

struct PolarParts {
  double rho = 0;   // >= 0
  double beta = 0;  // principal value in (-pi, pi]
  Multivector R;    // rotor, R reverse(R) = 1
};

/// Throws SingularSpinor when psi reverse(psi) ~ 0 (the decomposition does
/// not exist there).
PolarParts polar_decompose(const Multivector& psi, double tol = 1e-12);
Multivector recompose(const PolarParts& pp);

// ---------------------------------------------------------------------------

struct SpinorField {
  diffops::FieldMap psi;
  double mass = 0;  // inverse length
  Branch branch = Branch::Bradyonic;
};

/// F0(p) = prefactor * psi(p) * plane * reverse(psi(p)).
/// plane must be g2g1 (bradyonic pairing) or g0g3 (tachyonic pairing).
diffops::FieldMap field_from_spinor(const SpinorField& sf, const Multivector& plane,
                                    double prefactor = 1.0);

/// Bivector plane selectors for field_from_spinor.
Multivector plane_g2g1();
Multivector plane_g0g3();

struct AnsatzParams {
  double lambda = 0;   // duality phase of the current
  double g = 1;        // magnetic charge quantum
  double c_const = 1;  // speed-of-light factor, 1 in natural units
};

enum class CurrentDirection { Time, Z };  // g0 (bradyonic) or g3 (tachyonic)

/// J(p) = exp(lambda g5) c g psi(p) dir reverse(psi(p)), grades {1, 3}.
diffops::FieldMap current_ansatz(const SpinorField& sf, const AnsatzParams& a,
                                 CurrentDirection dir = CurrentDirection::Time);

/// Auto-force of the spinor configuration at a point: the grade-wise
/// contraction of the ansatz current against the spinor field bivector
/// (g0 current against the g2g1 plane).  Vanishes iff lambda = beta mod pi.
Multivector auto_force(const Multivector& psi, double lambda, const AnsatzParams& a = {},
                       double field_prefactor = 1.0);

// ---------------------------------------------------------------------------
// kinematic invariants of the rotor field

struct KinematicInvariants {
  double Lambda = 0;   // Omega . S
  double K = 0;        // Omega . (g5 S)
  Multivector Omega;   // v^mu Omega_mu, Omega_mu = 2 (d_mu R) reverse(R)
  Multivector S;       // (1/2) R g2 g1 reverse(R)
  Multivector v;       // R g0 reverse(R)
};

KinematicInvariants kinematic_invariants(const SpinorField& sf, const SpacetimePoint& p,
                                         double h,
                                         diffops::FdScheme scheme = diffops::FdScheme::Central2);

// ---------------------------------------------------------------------------
// spinor equation residuals

enum class DhEquation {
  DhGeneral,    // dirac(psi) g2g1 = Lambda psi g0 e^{beta g5}
                //   + K g5 psi g0 e^{beta g5} + (e^{beta g5}/rho) m_over_e J psi
  DhTwoMass,    // dirac(psi) g2g1 = m1 psi g0 + m2 g5 psi g0
  DhBradyonic,  // dirac(psi) g2g1 = mass g5 psi g0
  DhTachyonic,  // dirac(psi)      = mass g5 psi g0
};

std::string dh_equation_name(DhEquation eq);

struct DhExtras {
  double mass = 0;                     // DhBradyonic / DhTachyonic
  double m1 = 0, m2 = 0;               // DhTwoMass
  double Lambda = 0, K = 0;            // DhGeneral
  double m_over_e = 0;                 // DhGeneral current coefficient m g / e
  const diffops::FieldMap* current = nullptr;  // DhGeneral
  std::optional<double> rho = {};      // DhGeneral override; default from psi(p)
  std::optional<double> beta = {};
};

Multivector dh_lhs_minus_rhs(DhEquation eq, const SpinorField& sf, const DhExtras& ex,
                             const SpacetimePoint& p, double h, diffops::FdScheme scheme);

diffops::ResidualReport dh_residual(DhEquation eq, const SpinorField& sf, const DhExtras& ex,
                                    const diffops::GridSpec& grid,
                                    diffops::FdScheme scheme = diffops::FdScheme::Central2);

// ---------------------------------------------------------------------------

/// Plane-wave solution psi(p) = psi0 exp(g2g1 (omega t - k z)) of the
/// bradyonic (DhBradyonic) or tachyonic (DhTachyonic) equation with the given
/// mass.  psi0 is a unit-norm element of the nullspace of the 8x8 linear map
/// encoding the equation, found by singular-value analysis; the map has full
/// rank off shell (bradyonic: omega^2 - k^2 = m^2, tachyonic: = -m^2), in
/// which case OffShell is thrown.
SpinorField plane_wave_spinor(double omega, double k, double mass, Branch branch);

/// Smallest/largest singular value of the plane-wave map; exposed so tests
/// can check the rank analysis directly.
std::pair<double, double> plane_wave_singular_values(double omega, double k, double mass,
                                                     Branch branch);

}  // namespace stanum::spinor
