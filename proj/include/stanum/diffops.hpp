#pragma once

// Finite-difference differential operators acting on analytic multivector
// fields, plus the equation-residual harness.  Residuals are evaluated on
// analytic closures rather than stored lattices: every claim checked here is
// an identity, and analytic evaluation avoids boundary-stencil artifacts.
// The grid is only a sample set.
//
// Contract: FieldMap evaluators must be pure.  The sweep may evaluate them
// concurrently in any order; reports are reduced associatively in a fixed
// chunk order, so results are bit-reproducible for a given grid.

#include <array>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "stanum/algebra.hpp"

namespace stanum::diffops {

struct FieldMap {
  std::function<Multivector(const SpacetimePoint&)> eval;
  std::string name;

  Multivector operator()(const SpacetimePoint& p) const { return eval(p); }
};

struct GridSpec {
  SpacetimePoint origin{};
  std::array<double, 4> extents{1, 1, 1, 1};
  std::array<int, 4> counts{9, 9, 9, 9};
  double fd_step = 1.0 / 64.0;

  // default sampling: 9^4 points over one characteristic wavelength per
  // axis, fd step = wavelength / 64
  static GridSpec for_wavelength(double wavelength);

  std::size_t total() const;
  SpacetimePoint point(std::size_t flat_index) const;
  void validate() const;
};

struct ResidualReport {
  std::string equation_id;
  double max_abs = 0;
  double rms = 0;
  std::size_t sample_count = 0;
  double h_used = 0;
  double richardson_order_estimate = 0;
};

enum class FdScheme {
  Central2,     // plain central differences, O(h^2)
  Richardson4,  // central differences at h and h/2 extrapolated, O(h^4)
};

struct TimeDependentField : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MissingInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Central-difference partial derivative along axis mu (0..3).
Multivector partial_mu(const FieldMap& f, int mu, const SpacetimePoint& p, double h,
                       FdScheme scheme = FdScheme::Central2);

/// Dirac operator: sum_mu g^mu partial_mu f.
Multivector dirac(const FieldMap& f, const SpacetimePoint& p, double h,
                  FdScheme scheme = FdScheme::Central2);

/// Exterior derivative d f = sum_mu g^mu ^ partial_mu f.
Multivector d_wedge(const FieldMap& f, const SpacetimePoint& p, double h,
                    FdScheme scheme = FdScheme::Central2);

/// Codifferential with the sign fixed so that dirac = d - codiff on
/// grade-homogeneous fields: codiff f = -sum_mu g^mu _| partial_mu f.
Multivector codiff(const FieldMap& f, const SpacetimePoint& p, double h,
                   FdScheme scheme = FdScheme::Central2);

/// Wave operator box = dt^2 - dx^2 - dy^2 - dz^2, direct second differences.
Multivector box(const FieldMap& f, const SpacetimePoint& p, double h,
                FdScheme scheme = FdScheme::Central2);

/// 3-D operators on relative-vector fields (values read from the sigma_k
/// components of the field).
double div3(const FieldMap& v, const SpacetimePoint& p, double h,
            FdScheme scheme = FdScheme::Central2);
Multivector curl3(const FieldMap& v, const SpacetimePoint& p, double h,
                  FdScheme scheme = FdScheme::Central2);
Multivector lap3(const FieldMap& v, const SpacetimePoint& p, double h,
                 FdScheme scheme = FdScheme::Central2);

/// Pauli-algebra gradient: nabla f = sum_k sigma_k partial_k f.
Multivector nabla_pauli(const FieldMap& f, const SpacetimePoint& p, double h,
                        FdScheme scheme = FdScheme::Central2);

/// Checks that a field is t-independent by comparing two time slices at a
/// few probe points; throws TimeDependentField otherwise.
void require_static(const FieldMap& f, const GridSpec& grid, double tol = 1e-9);

enum class EquationId {
  FreeMaxwell,         // dirac F = 0
  MonopoleMaxwell,     // dirac F + coef g5 J = 0        (current supplied)
  MonopoleStatic,      // dirac F + coef g5 F g0 = 0     (transcendent form)
  PauliDirac,          // nabla E - coef i E = 0         (i = -g5)
  PauliCurlWedge,      // -i (nabla ^ E) - coef E = 0
  Curl3Eigen,          // curl E - coef E = 0
  Div3Zero,            // div E = 0
  VectorHelmholtz,     // lap E + coef E = 0             (coef already squared)
  KgBradyonic, // box F + coef^2 F = 0
  KgTachyonic, // box F - coef^2 F = 0
  DerotatedDirac,      // dirac F + g5 kappa F = 0
};

std::string equation_name(EquationId id);

struct EquationInputs {
  const FieldMap* field = nullptr;
  const FieldMap* current = nullptr;  // MonopoleMaxwell only
  double coef = 0.0;                  // charge, mass, or eigenvalue as listed above
  Multivector kappa;                  // DerotatedDirac only
  bool check_static = false;          // verify t-independence before sweeping
};

/// Pointwise left-minus-right of the chosen equation.
Multivector equation_lhs_minus_rhs(EquationId id, const EquationInputs& in,
                                   const SpacetimePoint& p, double h, FdScheme scheme);

/// Sweeps the residual over the grid.  The order estimate compares the max
/// residual at fd_step and fd_step/2, so discretization error is
/// distinguishable from a genuine identity failure.
ResidualReport equation_residual(EquationId id, const EquationInputs& in, const GridSpec& grid,
                                 FdScheme scheme = FdScheme::Central2);

/// Shared sweep harness (also used by the spinor equations).
using PointResidual = std::function<Multivector(const SpacetimePoint&, double h, FdScheme)>;
ResidualReport sweep_residual(const std::string& equation_id, const PointResidual& r,
                              const GridSpec& grid, FdScheme scheme);

/// Max over the grid of the coefficient norm of a field (scale estimation).
double field_scale(const FieldMap& f, const GridSpec& grid);

enum class ForceVariant { Hodged, Plain };

/// Lorentz force density J _| *F (hodged) or J _| F (plain).  The contraction
/// is the grade-wise rule grade(J_r F_s, |s-r|) summed, which extends the
/// left contraction to the mixed-grade currents produced by the duality
/// phase e^{lambda g5}.
Multivector lorentz_force(const FieldMap& J, const FieldMap& F, const SpacetimePoint& p,
                          ForceVariant variant = ForceVariant::Hodged);

struct RelativeForce {
  double time_component = 0;        // scalar part of (force) g0
  std::array<double, 3> space{};    // sigma components of (force) g0
};

/// Relative decomposition of the grade-1 force for diagnostics.
RelativeForce lorentz_force_relative(const FieldMap& J, const FieldMap& F,
                                     const SpacetimePoint& p,
                                     ForceVariant variant = ForceVariant::Hodged);

}  // namespace stanum::diffops
