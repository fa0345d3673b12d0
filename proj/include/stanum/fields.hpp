#pragma once

// Constructors for the electromagnetic configurations under test: force-free
// Beltrami fields and their transcendent currents, duality-rotated free
// fields, and Hertz-potential bradyonic/tachyonic waves.  All constructors
// return pure FieldMap closures.

#include <array>
#include <functional>
#include <stdexcept>

#include "stanum/algebra.hpp"
#include "stanum/diffops.hpp"

namespace stanum::fields {

struct OffShell : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NonElectricField : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// force-free (Beltrami) configuration

struct BeltramiParams {
  double lambda_eig = 1.0;  // curl eigenvalue; the force-free relation reads
                            // lambda_eig = 2g for magnetic charge g
  double A = 1, B = 1, C = 1;
};

/// ABC flow as a relative-vector field: div E = 0 and curl E = lambda E hold
/// analytically.
diffops::FieldMap beltrami_field(const BeltramiParams& p);

/// Embeds a relative vector field as the pure-electric bivector
/// F = sum_i E_i g0 g^i.  The magnetic part of the split is zero and
/// g0 ^ F = 0 by construction.
diffops::FieldMap embed_electric(const diffops::FieldMap& E);

/// Transcendent magnetic current J(p) = F(p) g0 for a pure-electric F:
/// grade 1, zero time component, spacelike wherever E != 0.  Evaluation
/// throws NonElectricField if F has magnetic or non-bivector content.
diffops::FieldMap transcendent_current(const diffops::FieldMap& F);

/// Rigidly rotated copy of a relative-vector field (rotation about z by
/// angle_z composed with rotation about x by angle_x).  Curl eigenfields
/// keep their eigenvalue; useful to break the axis alignment of the ABC
/// flow, which centered stencils otherwise differentiate exactly up to a
/// common sinc factor.
diffops::FieldMap rotate_relative(const diffops::FieldMap& v, double angle_z, double angle_x);

// ---------------------------------------------------------------------------
// duality rotation

struct DualityWave {
  double m = 1.0;  // duality-rotation rate (inverse length, c = 1)
  double V = 0.0;  // boost speed, |V| < 1

  DualityWave(double m_, double V_ = 0.0) : m(m_), V(V_) {
    if (!(std::abs(V) < 1.0)) throw std::invalid_argument("DualityWave: |V| must be < 1");
  }
  double gamma_factor() const { return 1.0 / std::sqrt(1.0 - V * V); }
  double omega() const { return m * gamma_factor(); }
  double k() const { return m * V * gamma_factor(); }
};

/// F(p) = F_static(p) exp(g5 (omega t - k z)).  F_static is probed for
/// t-independence; a time-dependent input throws.
diffops::FieldMap duality_rotate(const diffops::FieldMap& F_static, const DualityWave& w);

// ---------------------------------------------------------------------------
// Hertz potentials

enum class Branch { Bradyonic, Tachyonic };
enum class ProfileKind { Exponential, Plane, Bessel };

struct ScalarProfile {
  ProfileKind kind;
  std::function<double(double, double)> value;
  std::function<std::array<double, 2>(double, double)> gradient;   // (ux, uy)
  std::function<std::array<double, 3>(double, double)> hessian;    // (uxx, uxy, uyy)
};

struct HertzParams {
  Branch branch = Branch::Bradyonic;
  double m = 1.0;
  double omega = 0.0;
  double k = 1.0;
  ProfileKind profile_kind = ProfileKind::Exponential;
  double theta = 0.0;                           // transverse profile direction
  Multivector B2 = Multivector::blade(8);       // constant bivector, default g1g2

  // bradyonic: omega^2 - k^2 = -m^2, tachyonic: omega^2 - k^2 = +m^2.
  // Throws OffShell when violated, std::invalid_argument for a zero or
  // non-bivector B2 or a profile kind inconsistent with the branch.
  void validate() const;

  Multivector kappa() const {
    return omega * Multivector::gamma(0) - k * Multivector::gamma(3);
  }
};

/// Transverse profile with lap2 Phi = +m^2 Phi (bradyonic: exponential) or
/// lap2 Phi = -m^2 Phi (tachyonic: plane cosine or radial Bessel J0).
/// Normalized so Phi(0,0) = 1.
ScalarProfile hertz_profile(const HertzParams& hp);

/// Scalar FieldMap view of a profile (value only), for residual sweeps.
diffops::FieldMap profile_field(const ScalarProfile& prof);

struct HertzChain {
  diffops::FieldMap pi;         // Pi = Phi exp(g5 chi) B2, grade 2
  diffops::FieldMap potential;  // A = -codiff Pi, grade 1
  diffops::FieldMap field;      // F = d A, grade 2; satisfies dirac F = 0
  diffops::FieldMap derotated;  // F0 = F exp(g5 +chi); static on shell
  Multivector kappa;            // omega g0 - k g3
};

/// Builds the full chain analytically from the profile derivatives (the
/// finite-difference operators are used to *check* the chain, not to build
/// it).  On shell the derotated field satisfies
///   dirac F0 = -g5 kappa F0
/// and the branch Klein-Gordon equation box F0 -+ m^2 F0 = 0.
HertzChain hertz_chain(const HertzParams& hp);

}  // namespace stanum::fields
