#include "stanum/report.hpp"

#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>

#include "stanum/fields.hpp"
#include "stanum/spinor.hpp"

namespace stanum::report {

using diffops::EquationId;
using diffops::EquationInputs;
using diffops::FdScheme;
using diffops::FieldMap;
using diffops::GridSpec;
using diffops::ResidualReport;

std::string unit_system_name(UnitSystem u) {
  return u == UnitSystem::Natural ? "natural" : "gaussian-symbolic";
}

UnitSystem unit_system_from_name(const std::string& s) {
  if (s == "natural") return UnitSystem::Natural;
  if (s == "gaussian-symbolic") return UnitSystem::GaussianSymbolic;
  throw std::invalid_argument("unknown unit system: " + s);
}

void RunConfig::validate() const {
  if (!(tol_abs > 0) || !(tol_rel > 0))
    throw std::invalid_argument("RunConfig: tolerances must be > 0");
  if (grid_points < 2) throw std::invalid_argument("RunConfig: grid_points must be >= 2");
  if (!(grid_h_divisor > 0))
    throw std::invalid_argument("RunConfig: grid_h_divisor must be > 0");
}

int SuiteReport::n_passed() const {
  int n = 0;
  for (const auto& c : checks) n += c.passed ? 1 : 0;
  return n;
}
int SuiteReport::n_failed() const { return static_cast<int>(checks.size()) - n_passed(); }
bool SuiteReport::all_passed() const { return n_failed() == 0; }

namespace {

// default-knob reference values: allowances are pinned at tol_abs = 1e-10,
// tol_rel = 1e-8 and rescale with the master knobs
constexpr double kRefAbs = 1e-10;

struct SuiteBuilder {
  const RunConfig& cfg;
  std::vector<CheckResult> out;

  double threshold(double allowance, double scale, CheckKind kind) const {
    if (kind == CheckKind::RequireLarge) return allowance;
    return allowance * (cfg.tol_abs / kRefAbs) + cfg.tol_rel * scale;
  }

  void add(CheckResult c) {
    c.threshold = threshold(c.allowance, c.scale, c.kind);
    if (c.kind == CheckKind::RequireLarge) {
      c.passed = c.max_abs >= c.threshold;
    } else {
      c.passed = c.max_abs <= c.threshold &&
                 (c.min_order == 0.0 || c.order_estimate >= c.min_order);
    }
    out.push_back(std::move(c));
  }

  void add_residual(const std::string& id, const std::string& detail, const ResidualReport& r,
                    double scale, double allowance, double min_order,
                    bool expected_inconsistent = false) {
    CheckResult c;
    c.id = id;
    c.equation_id = r.equation_id;
    c.detail = detail;
    c.max_abs = r.max_abs;
    c.rms = r.rms;
    c.samples = r.sample_count;
    c.h = r.h_used;
    c.order_estimate = r.richardson_order_estimate;
    c.scale = scale;
    c.allowance = allowance;
    c.min_order = min_order;
    c.kind = expected_inconsistent ? CheckKind::RequireLarge : CheckKind::ResidualSmall;
    c.expected_inconsistent = expected_inconsistent;
    add(std::move(c));
  }

  void add_value(const std::string& id, const std::string& equation_id,
                 const std::string& detail, double value, double scale, double allowance,
                 CheckKind kind = CheckKind::ResidualSmall, bool expected_inconsistent = false) {
    CheckResult c;
    c.id = id;
    c.equation_id = equation_id;
    c.detail = detail;
    c.max_abs = value;
    c.rms = value;
    c.samples = 1;
    c.scale = scale;
    c.allowance = allowance;
    c.kind = kind;
    c.expected_inconsistent = expected_inconsistent;
    add(std::move(c));
  }
};

GridSpec suite_grid(const RunConfig& cfg, double wavelength, bool spacetime) {
  GridSpec g = GridSpec::for_wavelength(wavelength);
  g.counts = {spacetime ? cfg.grid_points : 1, cfg.grid_points, cfg.grid_points,
              cfg.grid_points};
  g.fd_step = wavelength / cfg.grid_h_divisor;
  return g;
}

// -------------------------------------------------------------------------
// force-free configuration and the free/monopole equivalence

void beltrami_checks(SuiteBuilder& sb) {
  const RunConfig& cfg = sb.cfg;
  const double g = 0.5;
  const double lambda = 2.0 * g;      // curl eigenvalue, the doubled form
  const double kappa_factor = 2.0;    // duality rate m = kappa_factor * g
  const double m = kappa_factor * g;

  fields::BeltramiParams bp;
  bp.lambda_eig = lambda;

  const FieldMap E = fields::beltrami_field(bp);
  const FieldMap F0 = fields::embed_electric(E);
  const FieldMap J = fields::transcendent_current(F0);
  const FieldMap F = fields::duality_rotate(F0, fields::DualityWave(m, 0.0));

  // generic-orientation copies break the exact stencil cancellations of the
  // axis-aligned flow, so convergence orders are measurable
  const FieldMap Eg = fields::rotate_relative(E, 0.53, 0.31);
  const FieldMap F0g = fields::embed_electric(Eg);
  const FieldMap Fg = fields::duality_rotate(F0g, fields::DualityWave(m, 0.0));

  const double wl = 2 * M_PI / lambda;
  const GridSpec g4 = suite_grid(cfg, wl, true);
  const GridSpec g3 = suite_grid(cfg, wl, false);
  const double scaleE = diffops::field_scale(E, g3);

  EquationInputs in;
  in.field = &E;
  in.check_static = true;  // the transcendent-frame equations assume a static field
  in.coef = 2 * g;
  sb.add_residual("force_free_curl", "curl E = 2g E on the ABC eigenfield",
                  equation_residual(EquationId::Curl3Eigen, in, g3, FdScheme::Richardson4),
                  scaleE, 2e-4, 3.0);
  // each ABC component is independent of its own coordinate, so the stencil
  // divergence vanishes identically; no order to measure
  sb.add_residual("force_free_div", "div E = 0 on the ABC eigenfield",
                  equation_residual(EquationId::Div3Zero, in, g3, FdScheme::Richardson4),
                  scaleE, 1e-12, 0.0);
  sb.add_residual("pauli_curl_wedge", "-i(nabla ^ E) = 2g E",
                  equation_residual(EquationId::PauliCurlWedge, in, g3, FdScheme::Richardson4),
                  scaleE, 2e-4, 3.0);

  in.coef = lambda;
  sb.add_residual("pauli_dirac", "nabla E = 2g iE (coefficient matching the curl relation)",
                  equation_residual(EquationId::PauliDirac, in, g3, FdScheme::Richardson4),
                  scaleE, 2e-4, 3.0);
  in.coef = g;
  sb.add_residual("pauli_dirac_coeff_g",
                  "nabla E = g iE as printed: inconsistent with the 2g curl relation",
                  equation_residual(EquationId::PauliDirac, in, g3, FdScheme::Central2), scaleE,
                  0.3 * scaleE, 0.0, /*expected_inconsistent=*/true);

  in.coef = 4 * g * g;
  sb.add_residual("vector_helmholtz", "lap E + (2g)^2 E = 0",
                  equation_residual(EquationId::VectorHelmholtz, in, g3, FdScheme::Richardson4),
                  scaleE, 2e-4, 3.0);
  in.coef = g * g;
  sb.add_residual("vector_helmholtz_coeff_g2",
                  "lap E + g^2 E = 0 as printed: inconsistent with the 2g curl relation",
                  equation_residual(EquationId::VectorHelmholtz, in, g3, FdScheme::Central2),
                  scaleE, 0.3 * scaleE, 0.0, /*expected_inconsistent=*/true);

  // monopole equation in the transcendent frame, coefficient m = 2g
  EquationInputs mono;
  mono.field = &F0;
  mono.coef = m;
  mono.check_static = true;
  sb.add_residual("monopole_static", "dirac F + m g5 F g0 = 0 with m = 2g",
                  equation_residual(EquationId::MonopoleStatic, mono, g4, FdScheme::Richardson4),
                  scaleE, 2e-4, 3.0);
  EquationInputs monoj;
  monoj.field = &F0;
  monoj.current = &J;
  monoj.coef = m;
  sb.add_residual("monopole_with_current", "dirac F + m g5 J = 0 with J = F g0",
                  equation_residual(EquationId::MonopoleMaxwell, monoj, g4,
                                    FdScheme::Richardson4),
                  scaleE, 2e-4, 3.0);
  EquationInputs monog;
  monog.field = &F0;
  monog.coef = g;
  sb.add_residual("monopole_coeff_g",
                  "dirac F + g g5 F g0 = 0: requires the duality rate m = 2g, not g",
                  equation_residual(EquationId::MonopoleStatic, monog, g4, FdScheme::Central2),
                  scaleE, 0.3 * scaleE, 0.0, /*expected_inconsistent=*/true);

  EquationInputs kg;
  kg.field = &F0;
  kg.coef = m;
  sb.add_residual("monopole_kg", "dirac^2 F - m^2 F = 0 for the static eigenfield",
                  equation_residual(EquationId::KgTachyonic, kg, g4, FdScheme::Richardson4),
                  scaleE, 2e-4, 3.0);

  // Lorentz force on the transcendent current, normalized by |E|^2 pointwise
  diffops::PointResidual force = [&J, &F0](const SpacetimePoint& p, double, FdScheme) {
    const double e2 = F0(p).norm() * F0(p).norm();
    return (1.0 / (1e-30 + e2)) * diffops::lorentz_force(J, F0, p);
  };
  sb.add_residual("lorentz_force_null", "J _| *F = 0 at every sample point (per |E|^2)",
                  diffops::sweep_residual("lorentz_force", force, g3, FdScheme::Central2), 1.0,
                  1e-10, 0.0);

  // free Maxwell equation of the duality-rotated configuration
  EquationInputs free_exact;
  free_exact.field = &F;
  sb.add_residual("free_maxwell_rotated",
                  "dirac F = 0 for the rotated axis-aligned flow (stencils cancel exactly)",
                  equation_residual(EquationId::FreeMaxwell, free_exact, g4,
                                    FdScheme::Richardson4),
                  scaleE, 1e-9, 0.0);
  EquationInputs free_gen;
  free_gen.field = &Fg;
  sb.add_residual("free_maxwell_generic", "dirac F = 0, generic-orientation eigenfield",
                  equation_residual(EquationId::FreeMaxwell, free_gen, g4,
                                    FdScheme::Richardson4),
                  scaleE, 2e-4, 3.0);
  sb.add_residual("free_maxwell_generic_order",
                  "dirac F = 0 converges at second order in h (plain stencils)",
                  equation_residual(EquationId::FreeMaxwell, free_gen, g4, FdScheme::Central2),
                  scaleE, 5e-2, 1.7);

  // pointwise agreement of the free-field and monopole-field residuals
  EquationInputs mono_g;
  mono_g.field = &F0g;
  mono_g.coef = m;
  GridSpec fine = g4;
  fine.fd_step = 1e-3;
  diffops::PointResidual equiv = [&free_gen, &mono_g](const SpacetimePoint& p, double h,
                                                      FdScheme s) {
    const double a =
        diffops::equation_lhs_minus_rhs(EquationId::FreeMaxwell, free_gen, p, h, s).norm();
    const double b =
        diffops::equation_lhs_minus_rhs(EquationId::MonopoleStatic, mono_g, p, h, s).norm();
    return Multivector::scalar(a - b);
  };
  sb.add_residual("free_monopole_equivalence",
                  "|dirac F| equals |dirac F0 + m g5 F0 g0| at every sample point",
                  diffops::sweep_residual("free_monopole_equivalence", equiv, fine,
                                          FdScheme::Richardson4),
                  scaleE, 1e-9, 0.0);

  // duality-wave dispersion is exact by construction
  double disp = 0;
  for (double V : {0.0, 0.35, -0.8}) {
    const fields::DualityWave w(m, V);
    disp = std::max(disp,
                    std::abs(w.omega() * w.omega() - w.k() * w.k() - w.m * w.m) / (w.m * w.m));
  }
  sb.add_value("duality_dispersion", "property", "omega^2 - k^2 = m^2 for boosted waves", disp,
               1.0, 1e-12);
}

// -------------------------------------------------------------------------
// Hertz chains

void hertz_checks(SuiteBuilder& sb, const fields::HertzParams& hp, const std::string& tag) {
  const RunConfig& cfg = sb.cfg;
  const fields::HertzChain hc = fields::hertz_chain(hp);

  GridSpec grid;
  grid.origin = {0.13, 0.07, 0.11, 0.05};
  grid.extents = {1.2, 1.2, 1.2, 1.2};
  const int n = std::min(cfg.grid_points, 5);
  grid.counts = {n, std::min(n, 4), std::min(n, 4), n};
  // large enough that second-difference truncation stays above the roundoff
  // floor, so convergence orders remain measurable
  grid.fd_step = 0.04;

  const double scale_pi = diffops::field_scale(hc.pi, grid);
  const double scale_f = diffops::field_scale(hc.field, grid);
  const double scale_f0 = diffops::field_scale(hc.derotated, grid);

  EquationInputs in;
  in.field = &hc.pi;
  in.coef = 0.0;
  sb.add_residual(tag + "_box_pi", "box Pi = 0 for the Hertz potential",
                  equation_residual(EquationId::KgBradyonic, in, grid, FdScheme::Richardson4),
                  scale_pi, 1e-5 * std::max(1.0, scale_pi), 3.0);

  diffops::PointResidual da = [&hc](const SpacetimePoint& p, double h, FdScheme s) {
    return diffops::codiff(hc.potential, p, h, s);
  };
  sb.add_residual(tag + "_codiff_potential", "codiff A = 0 (Lorenz-type gauge holds)",
                  diffops::sweep_residual("codiff_potential", da, grid, FdScheme::Richardson4),
                  scale_f, 1e-5 * std::max(1.0, scale_f), 3.0);

  in.field = &hc.field;
  sb.add_residual(tag + "_free_maxwell", "dirac F = 0 for the Hertz field",
                  equation_residual(EquationId::FreeMaxwell, in, grid, FdScheme::Richardson4),
                  scale_f, 1e-5 * std::max(1.0, scale_f), 3.0);

  // the derotated field is static: compare two (t, z)-shifted slices
  diffops::PointResidual stat = [&hc](const SpacetimePoint& p, double, FdScheme) {
    const Multivector a = hc.derotated(p);
    const Multivector bt = hc.derotated(p.shifted(0, 0.41));
    const Multivector bz = hc.derotated(p.shifted(3, 0.29));
    return (a - bt) + (a - bz);
  };
  sb.add_residual(tag + "_derotated_static", "F exp(g5 chi) is independent of t and z",
                  diffops::sweep_residual("derotated_static", stat, grid, FdScheme::Central2),
                  scale_f0, 1e-9 * std::max(1.0, scale_f0), 0.0);

  EquationInputs dr;
  dr.field = &hc.derotated;
  dr.kappa = hc.kappa;
  sb.add_residual(tag + "_derotated_dirac", "dirac F0 = -g5 kappa F0",
                  equation_residual(EquationId::DerotatedDirac, dr, grid, FdScheme::Richardson4),
                  scale_f0, 1e-5 * std::max(1.0, scale_f0), 3.0);

  dr.coef = hp.m;
  const bool brady = hp.branch == fields::Branch::Bradyonic;
  sb.add_residual(tag + "_klein_gordon",
                  brady ? "box F0 + m^2 F0 = 0 (bradyonic branch)"
                        : "box F0 - m^2 F0 = 0 (tachyonic branch)",
                  equation_residual(brady ? EquationId::KgBradyonic : EquationId::KgTachyonic,
                                    dr, grid, FdScheme::Richardson4),
                  scale_f0, 1e-5 * std::max(1.0, scale_f0), 3.0);

  const double disp =
      std::abs(hp.omega * hp.omega - hp.k * hp.k + (brady ? hp.m * hp.m : -hp.m * hp.m));
  sb.add_value(tag + "_dispersion", "property", "construction satisfies its dispersion relation",
               disp / (hp.m * hp.m), 1.0, 1e-12);
}

void hertz_offshell_check(SuiteBuilder& sb) {
  fields::HertzParams hp;
  hp.branch = fields::Branch::Bradyonic;
  hp.m = 1.0;
  hp.omega = 1.0;
  hp.k = 1.0;  // omega^2 - k^2 = 0, off shell for either branch
  bool thrown = false;
  try {
    (void)fields::hertz_chain(hp);
  } catch (const fields::OffShell&) {
    thrown = true;
  }
  sb.add_value("hertz_offshell_rejected", "property",
               "off-dispersion Hertz parameters throw OffShell", thrown ? 0.0 : 1.0, 1.0, 0.5);
}

// -------------------------------------------------------------------------
// spinor battery

struct UnitFactors {
  double g = 1.0;          // magnetic charge quantum used in currents
  double field_pref = 1.0; // spinor-field bivector prefactor
};

UnitFactors unit_factors(UnitSystem u) {
  if (u == UnitSystem::Natural) return {1.0, 1.0};
  // Gaussian with symbolic constants at unit mass parameter: e = sqrt(alpha),
  // g from the quantization condition at n = 1, prefactor 2 pi e hbar / (m c)
  const double e = std::sqrt(spectrum::kAlphaCodata);
  return {spectrum::dirac_g(1, e), 2 * M_PI * e};
}

Multivector random_even_mv(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Multivector m;
  for (int i : {0, 5, 6, 7, 8, 9, 10, 15}) m[i] = u(rng);
  return m;
}

void spinor_checks(SuiteBuilder& sb) {
  const RunConfig& cfg = sb.cfg;
  const UnitFactors uf = unit_factors(cfg.units);
  std::mt19937_64 rng(cfg.seed);

  // polar decomposition round trip, rotor property, bilinear grade content
  double worst_rt = 0, worst_rotor = 0, worst_grades = 0;
  int accepted = 0;
  while (accepted < 10000) {
    const Multivector psi = random_even_mv(rng);
    const Multivector ppr = psi * reverse(psi);
    for (int i = 0; i < kBladeCount; ++i)
      if (i != 0 && i != 15) worst_grades = std::max(worst_grades, std::abs(ppr[i]));
    if (std::hypot(ppr.scalar_part(), ppr.pseudo_part()) < 1e-6) continue;
    ++accepted;
    const spinor::PolarParts pp = spinor::polar_decompose(psi);
    worst_rt = std::max(worst_rt, (spinor::recompose(pp) - psi).norm() / psi.norm());
    worst_rotor =
        std::max(worst_rotor, (pp.R * reverse(pp.R) - Multivector::scalar(1)).norm());
  }
  sb.add_value("polar_roundtrip", "polar_decomposition",
               "recompose(polar(psi)) = psi on 10^4 random even multivectors", worst_rt, 1.0,
               1e-10);
  sb.add_value("polar_rotor_property", "polar_decomposition", "R reverse(R) = 1", worst_rotor,
               1.0, 1e-10);
  sb.add_value("bilinear_grades", "property",
               "psi reverse(psi) has scalar and pseudoscalar parts only", worst_grades, 1.0,
               1e-12);

  // auto-force nullity at lambda = beta mod pi
  double worst_null = 0;
  int nspinors = 0;
  while (nspinors < 100) {
    const Multivector psi = random_even_mv(rng);
    const Multivector ppr = psi * reverse(psi);
    const double rho = std::hypot(ppr.scalar_part(), ppr.pseudo_part());
    if (rho < 1e-2) continue;
    ++nspinors;
    const double beta = spinor::polar_decompose(psi).beta;
    spinor::AnsatzParams a;
    a.g = uf.g;
    const double scale = rho * rho * uf.g * uf.field_pref;
    for (double l : {beta, beta + M_PI, beta - M_PI})
      worst_null = std::max(
          worst_null, spinor::auto_force(psi, l, a, uf.field_pref).norm() / scale);
  }
  sb.add_value("auto_force_null", "auto_force",
               "J _| F0 = 0 at lambda = beta and beta +- pi (per rho^2)", worst_null, 1.0,
               1e-10);

  // power of the nullity test: a quarter-period offset must not vanish
  const Multivector witness = exp_bivector(Multivector::blade(9, 0.3));
  const double beta_w = spinor::polar_decompose(witness).beta;
  spinor::AnsatzParams aw;
  aw.g = uf.g;
  sb.add_value("auto_force_power", "auto_force",
               "witness spinor exp(0.3 g1g3): force at lambda = beta + pi/2 is nonzero",
               spinor::auto_force(witness, beta_w + M_PI / 2, aw, uf.field_pref).norm() /
                   (uf.g * uf.field_pref),
               1.0, 1e-3, CheckKind::RequireLarge);

  // plane-wave solutions of the two spinor equations and their KG forms
  const double mass = 1.0;
  {
    const double k = 1.0, omega = std::sqrt(k * k + mass * mass);
    const spinor::SpinorField sf =
        spinor::plane_wave_spinor(omega, k, mass, fields::Branch::Bradyonic);
    GridSpec grid = suite_grid(cfg, 2 * M_PI / omega, true);
    grid.counts = {5, 3, 3, 5};
    spinor::DhExtras ex;
    ex.mass = mass;
    sb.add_residual("dh_bradyonic", "dirac psi g2g1 = m g5 psi g0 on the plane wave",
                    dh_residual(spinor::DhEquation::DhBradyonic, sf, ex, grid,
                                FdScheme::Richardson4),
                    1.0, 2e-4, 3.0);
    EquationInputs kg;
    kg.field = &sf.psi;
    kg.coef = mass;
    sb.add_residual("kg_spinor_bradyonic", "dirac^2 psi + m^2 psi = 0 with the same mass",
                    equation_residual(EquationId::KgBradyonic, kg, grid, FdScheme::Richardson4),
                    1.0, 2e-4, 3.0);

    // general form on the same solution: back out (K, m g/e) from beta
    const spinor::PolarParts pp = spinor::polar_decompose(sf.psi(SpacetimePoint{}));
    const double c2b = std::cos(2 * pp.beta);
    if (std::abs(c2b) > 0.1) {
      spinor::AnsatzParams a;
      a.lambda = pp.beta;
      a.g = uf.g;
      const FieldMap J = spinor::current_ansatz(sf, a);
      spinor::DhExtras gex;
      gex.K = mass * std::cos(pp.beta) / c2b;
      gex.m_over_e = -mass * std::sin(pp.beta) / (c2b * uf.g);
      gex.current = &J;
      sb.add_residual("dh_general_witness",
                      "general spinor equation holds with K, mg/e chosen for m1 = 0, m2 = m",
                      dh_residual(spinor::DhEquation::DhGeneral, sf, gex, grid,
                                  FdScheme::Richardson4),
                      1.0, 2e-4, 3.0);
    } else {
      sb.add_value("dh_general_witness", "dh_general",
                   "back-out degenerate: cos(2 beta) too small", 1.0, 1.0, 0.5);
    }

    // two-mass form with m1 = 0, m2 = m is the bradyonic equation itself
    spinor::DhExtras tm;
    tm.m1 = 0.0;
    tm.m2 = mass;
    sb.add_residual("dh_two_mass", "two-mass form with m1 = 0, m2 = m on the plane wave",
                    dh_residual(spinor::DhEquation::DhTwoMass, sf, tm, grid,
                                FdScheme::Richardson4),
                    1.0, 2e-4, 3.0);
  }
  {
    const double omega = 1.0, k = std::sqrt(omega * omega + mass * mass);
    const spinor::SpinorField sf =
        spinor::plane_wave_spinor(omega, k, mass, fields::Branch::Tachyonic);
    GridSpec grid = suite_grid(cfg, 2 * M_PI / k, true);
    grid.counts = {5, 3, 3, 5};
    spinor::DhExtras ex;
    ex.mass = mass;
    sb.add_residual("dh_tachyonic", "dirac psi = m g5 psi g0 on the plane wave",
                    dh_residual(spinor::DhEquation::DhTachyonic, sf, ex, grid,
                                FdScheme::Richardson4),
                    1.0, 2e-4, 3.0);
    EquationInputs kg;
    kg.field = &sf.psi;
    kg.coef = mass;
    sb.add_residual("kg_spinor_tachyonic", "dirac^2 psi - m^2 psi = 0 with the same mass",
                    equation_residual(EquationId::KgTachyonic, kg, grid, FdScheme::Richardson4),
                    1.0, 2e-4, 3.0);
  }

  // reduction of the general form to the two-mass form is exact algebra
  {
    std::mt19937_64 rrng(cfg.seed ^ 0x9e3779b97f4a7c15ull);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0;
    for (int trial = 0; trial < 40; ++trial) {
      const double beta0 = 1.2 * u(rrng);
      const Multivector R0 = exp_bivector(Multivector::blade(9, 0.8 * u(rrng)) +
                                          Multivector::blade(6, 0.5 * u(rrng)));
      std::array<double, 4> wv{u(rrng), u(rrng), u(rrng), u(rrng)};
      const Multivector gen = Multivector::blade(8, -0.4 * u(rrng));
      spinor::SpinorField sf;
      sf.psi = FieldMap{[=](const SpacetimePoint& p) {
                          const double ph =
                              wv[0] * p.t + wv[1] * p.x + wv[2] * p.y + wv[3] * p.z;
                          const double amp = 1.0 + 0.3 * std::sin(0.7 * p.x);
                          return amp * (exp_g5(beta0 / 2) * R0 * exp_bivector(gen * ph));
                        },
                        "constant_beta"};
      spinor::AnsatzParams a;
      a.lambda = beta0;
      a.g = uf.g;
      const FieldMap J = spinor::current_ansatz(sf, a);
      const double K = 2 * u(rrng), L = 2 * u(rrng), r = 2 * u(rrng);
      spinor::DhExtras ge;
      ge.Lambda = L;
      ge.K = K;
      ge.m_over_e = r / uf.g;
      ge.current = &J;
      spinor::DhExtras tm;
      tm.m1 = L * std::cos(beta0) + K * std::sin(beta0) + r * std::cos(beta0);
      tm.m2 = -L * std::sin(beta0) + K * std::cos(beta0) + r * std::sin(beta0);
      for (int pt = 0; pt < 5; ++pt) {
        const SpacetimePoint p{u(rrng), u(rrng), u(rrng), u(rrng)};
        const Multivector a31 = spinor::dh_lhs_minus_rhs(spinor::DhEquation::DhGeneral, sf, ge,
                                                         p, 0.05, FdScheme::Central2);
        const Multivector a35 = spinor::dh_lhs_minus_rhs(spinor::DhEquation::DhTwoMass, sf, tm,
                                                         p, 0.05, FdScheme::Central2);
        worst = std::max(worst, (a31 - a35).norm() / (1.0 + a31.norm()));
      }
    }
    sb.add_value("dh_reduction_identity", "dh_general",
                 "general equation with the lambda = beta ansatz equals the two-mass form",
                 worst, 1.0, 1e-12);
  }

  // off-shell rejection and the rank analysis behind it
  {
    bool thrown = false;
    try {
      (void)spinor::plane_wave_spinor(1.0, 1.0, 1.0, fields::Branch::Bradyonic);
    } catch (const spinor::OffShell&) {
      thrown = true;
    }
    const auto [smin_off, smax_off] =
        spinor::plane_wave_singular_values(1.0, 1.0, 1.0, fields::Branch::Bradyonic);
    const auto [smin_on, smax_on] =
        spinor::plane_wave_singular_values(std::sqrt(2.0), 1.0, 1.0, fields::Branch::Bradyonic);
    sb.add_value("spinor_offshell_rejected", "plane_wave_spinor",
                 "off-dispersion parameters throw OffShell", thrown ? 0.0 : 1.0, 1.0, 0.5);
    sb.add_value("spinor_offshell_rank", "plane_wave_spinor",
                 "amplitude map has full rank off shell", smin_off / smax_off, 1.0, 0.05,
                 CheckKind::RequireLarge);
    sb.add_value("spinor_onshell_nullspace", "plane_wave_spinor",
                 "amplitude map is singular on shell", smin_on / smax_on, 1.0, 1e-12);
  }

  // kinematic invariants of the uniformly precessing rotor
  {
    const double w = 0.9;
    spinor::SpinorField sf;
    sf.psi = FieldMap{[w](const SpacetimePoint& p) {
                        return exp_bivector(spinor::plane_g2g1() * (-w * p.t / 2.0));
                      },
                      "precessing"};
    const spinor::KinematicInvariants kin = spinor::kinematic_invariants(
        sf, SpacetimePoint{0.23, 0.1, -0.4, 0.7}, 1e-3, FdScheme::Richardson4);
    const double err = std::abs(kin.Lambda - w / 2) + std::abs(kin.K) +
                       (kin.Omega - grade(kin.Omega, 2)).norm();
    sb.add_value("kinematic_precession", "kinematic_invariants",
                 "precessing rotor: Lambda = w/2, K = 0, Omega is a bivector", err, 1.0, 1e-6);
  }
}

// -------------------------------------------------------------------------
// spectrum checks

void spectrum_checks(SuiteBuilder& sb) {
  const RunConfig& cfg = sb.cfg;
  using namespace stanum::spectrum;

  const double fitted = fit_m(3.0, {0, 1, 2}, 0.28);
  sb.add_value("spectrum_fit_m", "mass_fit",
               "fitted mass scale matches the published 1.97e-4 eV",
               std::abs(fitted - 1.97e-4), 1.97e-4, 2e-6);

  SpectrumParams p;
  p.m_param = fitted;
  p.N = 3;
  const MassSpectrum ms = build_spectrum(p);
  const double published[3] = {0.12, 0.10, 0.056};
  double worst_mass = 0;
  for (int i = 0; i < 3; ++i)
    worst_mass = std::max(worst_mass, std::abs(ms.masses[i].mass_ev - published[i]));
  sb.add_value("spectrum_masses", "mass_spectrum",
               "masses match the published (0.12, 0.10, 0.056) eV within 5e-3", worst_mass, 0.12,
               5e-3);
  sb.add_value("spectrum_sum_roundtrip", "mass_fit", "sum of fitted masses returns the bound",
               std::abs(ms.sum_ev - 0.28) / 0.28, 1.0, 1e-12);

  double ratio = 1.0;
  {
    double lo = ms.masses[0].mass_ev, hi = lo;
    for (const auto& e : ms.masses) {
      lo = std::min(lo, e.mass_ev);
      hi = std::max(hi, e.mass_ev);
    }
    ratio = hi / lo;
    sb.add_value("spectrum_near_degeneracy", "mass_spectrum",
                 "flavor masses lie within a factor 2.2", ratio, 1.0, 2.2);
    sb.add_value("spectrum_lightest", "mass_spectrum",
                 "lightest mass below the published 0.056 eV (with 5% slack)",
                 lo / (0.056 * 1.05), 1.0, 1.0);
  }

  // identity against the two-mass closed form through the quantized charge;
  // near N = n both routes cancel, so the agreement is measured against the
  // natural input magnitude hypot(K, r) everywhere and against the value
  // itself away from the degenerate edge
  {
    std::mt19937_64 rng(cfg.seed ^ 0xa5a5a5a5ull);
    std::uniform_real_distribution<double> um(1e-6, 1e-2);
    std::uniform_real_distribution<double> uN(0.5, 20.0);
    std::uniform_int_distribution<int> un(0, 20);
    double worst_scale = 0, worst_value = 0;
    int tested = 0;
    while (tested < 10000) {
      SpectrumParams q;
      q.m_param = um(rng);
      q.N = uN(rng);
      const int n = un(rng);
      if (static_cast<double>(n) > q.N) continue;
      ++tested;
      const double K = 1.5 * q.m_param * q.N / q.alpha;
      const double r = mg_over_e(q.m_param, n, q.alpha);
      const double lhs = mass_n(n, q);
      const double rhs = m2(K, r);
      worst_scale = std::max(worst_scale, std::abs(lhs - rhs) / std::hypot(K, r));
      const double nn = static_cast<double>(n);
      if (q.N * q.N - nn * nn > 1e-3 * q.N * q.N)
        worst_value = std::max(worst_value, std::abs(lhs - rhs) / std::abs(lhs));
    }
    sb.add_value("spectrum_identity", "mass_spectrum",
                 "mass_n(n) = m2(3mN/2a, 3mn/2a) over 10^4 random parameter triples",
                 std::max(worst_scale, worst_value), 1.0, 1e-12);
  }

  // squared differences from the published rounded masses
  MassSpectrum printed;
  printed.masses = {{0, 0.12}, {1, 0.10}, {2, 0.056}};
  const auto d = mass_squared_diffs(printed);
  sb.add_value("sq_diff_12", "mass_squared_diffs",
               "m1^2 - m2^2 = 6.86e-3 eV^2 from the published masses",
               std::abs(d[2].value_ev2 - 6.86e-3), 6.86e-3, 1e-5);
  sb.add_value("sq_diff_01_misprint", "mass_squared_diffs",
               "published 4.4e-5 for m0^2 - m1^2 disagrees with direct evaluation (4.4e-3)",
               std::abs(d[0].value_ev2 - 4.4e-5), 4.4e-3, 1e-3, CheckKind::RequireLarge,
               /*expected_inconsistent=*/true);
  sb.add_value("sq_diff_02_misprint", "mass_squared_diffs",
               "published 16.46e-3 for m0^2 - m2^2 disagrees with direct evaluation (1.13e-2)",
               std::abs(d[1].value_ev2 - 16.46e-3), 1.1264e-2, 1e-3, CheckKind::RequireLarge,
               /*expected_inconsistent=*/true);
}

}  // namespace

SuiteReport run_verify_suite(const RunConfig& cfg) {
  cfg.validate();
  SuiteReport rep;
  rep.config = cfg;

  SuiteBuilder sb{cfg, {}};
  beltrami_checks(sb);

  {
    fields::HertzParams hp;
    hp.branch = fields::Branch::Bradyonic;
    hp.m = 1.0;
    hp.omega = 0.6;
    hp.k = std::sqrt(hp.omega * hp.omega + hp.m * hp.m);
    hp.profile_kind = fields::ProfileKind::Exponential;
    hp.theta = 0.3;
    hertz_checks(sb, hp, "hertz_bradyonic");
  }
  {
    fields::HertzParams hp;
    hp.branch = fields::Branch::Tachyonic;
    hp.m = 1.0;
    hp.k = 0.6;
    hp.omega = std::sqrt(hp.k * hp.k + hp.m * hp.m);
    hp.profile_kind = fields::ProfileKind::Plane;
    hp.theta = 0.7;
    hertz_checks(sb, hp, "hertz_tachyonic");
    hp.profile_kind = fields::ProfileKind::Bessel;
    hertz_checks(sb, hp, "hertz_tachyonic_bessel");
  }
  hertz_offshell_check(sb);
  spinor_checks(sb);
  spectrum_checks(sb);

  rep.checks = std::move(sb.out);
  return rep;
}

// ---------------------------------------------------------------------------
// JSON

using nlohmann::json;

json to_json(const ResidualReport& r) {
  return json{{"equation_id", r.equation_id}, {"max_abs", r.max_abs},
              {"rms", r.rms},                 {"samples", r.sample_count},
              {"h", r.h_used},                {"order_estimate", r.richardson_order_estimate}};
}

json to_json(const RunConfig& cfg) {
  return json{{"tol_abs", cfg.tol_abs},
              {"tol_rel", cfg.tol_rel},
              {"seed", cfg.seed},
              {"grid_points", cfg.grid_points},
              {"grid_h_divisor", cfg.grid_h_divisor},
              {"units", unit_system_name(cfg.units)},
              {"output_dir", cfg.output_dir}};
}

RunConfig run_config_from_json(const json& j) {
  RunConfig cfg;
  if (j.contains("tol_abs")) cfg.tol_abs = j.at("tol_abs").get<double>();
  if (j.contains("tol_rel")) cfg.tol_rel = j.at("tol_rel").get<double>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("grid_points")) cfg.grid_points = j.at("grid_points").get<int>();
  if (j.contains("grid_h_divisor")) cfg.grid_h_divisor = j.at("grid_h_divisor").get<double>();
  if (j.contains("units")) cfg.units = unit_system_from_name(j.at("units").get<std::string>());
  if (j.contains("output_dir")) cfg.output_dir = j.at("output_dir").get<std::string>();
  return cfg;
}

json to_json(const CheckResult& c) {
  return json{{"id", c.id},
              {"equation_id", c.equation_id},
              {"detail", c.detail},
              {"max_abs", c.max_abs},
              {"rms", c.rms},
              {"samples", c.samples},
              {"h", c.h},
              {"order_estimate", c.order_estimate},
              {"scale", c.scale},
              {"allowance", c.allowance},
              {"threshold", c.threshold},
              {"min_order", c.min_order},
              {"kind", c.kind == CheckKind::ResidualSmall ? "residual_small" : "require_large"},
              {"expected_inconsistent", c.expected_inconsistent},
              {"passed", c.passed}};
}

namespace {
CheckResult check_from_json(const json& j) {
  CheckResult c;
  c.id = j.at("id").get<std::string>();
  c.equation_id = j.at("equation_id").get<std::string>();
  c.detail = j.at("detail").get<std::string>();
  c.max_abs = j.at("max_abs").get<double>();
  c.rms = j.at("rms").get<double>();
  c.samples = j.at("samples").get<std::uint64_t>();
  c.h = j.at("h").get<double>();
  c.order_estimate = j.at("order_estimate").get<double>();
  c.scale = j.at("scale").get<double>();
  c.allowance = j.at("allowance").get<double>();
  c.threshold = j.at("threshold").get<double>();
  c.min_order = j.at("min_order").get<double>();
  c.kind = j.at("kind").get<std::string>() == "require_large" ? CheckKind::RequireLarge
                                                              : CheckKind::ResidualSmall;
  c.expected_inconsistent = j.at("expected_inconsistent").get<bool>();
  c.passed = j.at("passed").get<bool>();
  return c;
}
}  // namespace

json to_json(const SuiteReport& rep) {
  json checks = json::array();
  for (const auto& c : rep.checks) checks.push_back(to_json(c));
  return json{{"schema_version", rep.schema_version},
              {"generator", rep.generator},
              {"config", to_json(rep.config)},
              {"checks", checks},
              {"n_passed", rep.n_passed()},
              {"n_failed", rep.n_failed()},
              {"all_passed", rep.all_passed()}};
}

SuiteReport suite_report_from_json(const json& j) {
  SuiteReport rep;
  rep.schema_version = j.at("schema_version").get<int>();
  rep.generator = j.at("generator").get<std::string>();
  rep.config = run_config_from_json(j.at("config"));
  for (const auto& cj : j.at("checks")) rep.checks.push_back(check_from_json(cj));
  return rep;
}

// ---------------------------------------------------------------------------
// CLI command cores

json cmd_spectrum(const SpectrumRequest& req) {
  using namespace stanum::spectrum;
  SpectrumParams p;
  p.N = req.N;
  p.n_set = req.n_set;
  p.alpha = req.alpha;
  p.m_param = req.use_sum_bound ? fit_m(req.N, req.n_set, req.sum_bound_ev, req.alpha)
                                : req.m_param_ev;
  const MassSpectrum ms = build_spectrum(p);

  json masses = json::array();
  for (const auto& e : ms.masses) masses.push_back({{"n", e.n}, {"mass_ev", e.mass_ev}});
  json diffs = json::array();
  for (const auto& d : ms.sq_diffs)
    diffs.push_back({{"n_i", d.n_i}, {"n_j", d.n_j}, {"value_ev2", d.value_ev2}});

  json params{{"m_param_ev", p.m_param}, {"N", p.N}, {"alpha", p.alpha}, {"n_set", p.n_set}};
  if (req.use_sum_bound) params["sum_bound_ev"] = req.sum_bound_ev;
  return json{{"schema_version", kSchemaVersion},
              {"params", params},
              {"masses", masses},
              {"sum_ev", ms.sum_ev},
              {"sq_diffs", diffs}};
}

std::string spectrum_csv(const json& out) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "n,mass_ev\n";
  for (const auto& e : out.at("masses"))
    os << e.at("n").get<int>() << "," << e.at("mass_ev").get<double>() << "\n";
  return os.str();
}

namespace {

GridSpec grid_from_json(const json& j) {
  GridSpec g;
  if (j.contains("origin")) {
    const auto& o = j.at("origin");
    g.origin = {o.at(0).get<double>(), o.at(1).get<double>(), o.at(2).get<double>(),
                o.at(3).get<double>()};
  }
  if (j.contains("extents"))
    for (int a = 0; a < 4; ++a) g.extents[a] = j.at("extents").at(a).get<double>();
  if (j.contains("counts"))
    for (int a = 0; a < 4; ++a) g.counts[a] = j.at("counts").at(a).get<int>();
  if (j.contains("fd_step")) g.fd_step = j.at("fd_step").get<double>();
  g.validate();
  return g;
}

fields::HertzParams hertz_from_json(const json& j) {
  fields::HertzParams hp;
  const std::string branch = j.value("branch", "bradyonic");
  hp.branch = branch == "tachyonic" ? fields::Branch::Tachyonic : fields::Branch::Bradyonic;
  hp.m = j.value("m", 1.0);
  const std::string prof = j.value("profile", hp.branch == fields::Branch::Bradyonic
                                                   ? "exponential"
                                                   : "plane");
  if (prof == "exponential")
    hp.profile_kind = fields::ProfileKind::Exponential;
  else if (prof == "plane")
    hp.profile_kind = fields::ProfileKind::Plane;
  else if (prof == "bessel")
    hp.profile_kind = fields::ProfileKind::Bessel;
  else
    throw std::invalid_argument("unknown hertz profile: " + prof);
  hp.theta = j.value("theta", 0.0);
  if (j.contains("omega") && j.contains("k")) {
    hp.omega = j.at("omega").get<double>();
    hp.k = j.at("k").get<double>();
  } else if (hp.branch == fields::Branch::Bradyonic) {
    hp.omega = j.value("omega", 0.6);
    hp.k = std::sqrt(hp.omega * hp.omega + hp.m * hp.m);
  } else {
    hp.k = j.value("k", 0.6);
    hp.omega = std::sqrt(hp.k * hp.k + hp.m * hp.m);
  }
  hp.validate();
  return hp;
}

}  // namespace

FieldSampleOutput cmd_field_sample(const json& config) {
  const std::string kind = config.value("field", "beltrami");

  fields::BeltramiParams bp;
  if (config.contains("beltrami")) {
    const auto& b = config.at("beltrami");
    bp.lambda_eig = b.value("lambda", 1.0);
    bp.A = b.value("A", 1.0);
    bp.B = b.value("B", 1.0);
    bp.C = b.value("C", 1.0);
  }

  json derived;
  FieldMap field;
  if (kind == "beltrami") {
    field = fields::beltrami_field(bp);
  } else if (kind == "beltrami_embedded") {
    field = fields::embed_electric(fields::beltrami_field(bp));
  } else if (kind == "transcendent_current") {
    field = fields::transcendent_current(fields::embed_electric(fields::beltrami_field(bp)));
  } else if (kind == "duality_rotated") {
    double m = bp.lambda_eig, V = 0.0;
    if (config.contains("wave")) {
      m = config.at("wave").value("m", m);
      V = config.at("wave").value("V", 0.0);
    }
    const fields::DualityWave w(m, V);
    derived["omega"] = w.omega();
    derived["k"] = w.k();
    field = fields::duality_rotate(fields::embed_electric(fields::beltrami_field(bp)), w);
  } else if (kind == "hertz_pi" || kind == "hertz_potential" || kind == "hertz_field" ||
             kind == "hertz_derotated") {
    const fields::HertzParams hp =
        hertz_from_json(config.contains("hertz") ? config.at("hertz") : json::object());
    derived["omega"] = hp.omega;
    derived["k"] = hp.k;
    const fields::HertzChain hc = fields::hertz_chain(hp);
    if (kind == "hertz_pi")
      field = hc.pi;
    else if (kind == "hertz_potential")
      field = hc.potential;
    else if (kind == "hertz_field")
      field = hc.field;
    else
      field = hc.derotated;
  } else {
    throw std::invalid_argument("unknown field kind: " + kind);
  }

  const GridSpec grid =
      grid_from_json(config.contains("grid") ? config.at("grid") : json::object());

  std::ostringstream os;
  os << std::setprecision(17);
  os << "t,x,y,z";
  for (int i = 0; i < kBladeCount; ++i) os << ",blade_" << i;
  os << "\n";
  for (std::size_t i = 0; i < grid.total(); ++i) {
    const SpacetimePoint p = grid.point(i);
    const Multivector v = field(p);
    os << p.t << "," << p.x << "," << p.y << "," << p.z;
    for (int b = 0; b < kBladeCount; ++b) os << "," << v[b];
    os << "\n";
  }

  FieldSampleOutput out;
  out.csv = os.str();
  out.sidecar = json{{"schema_version", kSchemaVersion},
                     {"field", kind},
                     {"config", config},
                     {"derived", derived},
                     {"rows", grid.total()},
                     {"field_name", field.name}};
  return out;
}

json cmd_spinor_check(double mass, double k_wave, std::uint64_t seed) {
  json reports = json::array();
  json samples = json::array();

  const double omega_b = std::sqrt(k_wave * k_wave + mass * mass);
  const spinor::SpinorField brady =
      spinor::plane_wave_spinor(omega_b, k_wave, mass, fields::Branch::Bradyonic);
  GridSpec grid = GridSpec::for_wavelength(2 * M_PI / omega_b);
  grid.counts = {5, 3, 3, 5};

  spinor::DhExtras ex;
  ex.mass = mass;
  reports.push_back(to_json(dh_residual(spinor::DhEquation::DhBradyonic, brady, ex, grid,
                                        FdScheme::Richardson4)));
  EquationInputs kg;
  kg.field = &brady.psi;
  kg.coef = mass;
  reports.push_back(to_json(
      equation_residual(EquationId::KgBradyonic, kg, grid, FdScheme::Richardson4)));

  const double k_t = std::sqrt(k_wave * k_wave + mass * mass);
  const spinor::SpinorField tachy =
      spinor::plane_wave_spinor(k_wave, k_t, mass, fields::Branch::Tachyonic);
  spinor::DhExtras ext;
  ext.mass = mass;
  reports.push_back(to_json(dh_residual(spinor::DhEquation::DhTachyonic, tachy, ext, grid,
                                        FdScheme::Richardson4)));
  EquationInputs kgt;
  kgt.field = &tachy.psi;
  kgt.coef = mass;
  reports.push_back(to_json(
      equation_residual(EquationId::KgTachyonic, kgt, grid, FdScheme::Richardson4)));

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 8; ++i) {
    const SpacetimePoint p{u(rng), u(rng), u(rng), u(rng)};
    const spinor::KinematicInvariants kin =
        spinor::kinematic_invariants(brady, p, 1e-3, FdScheme::Richardson4);
    samples.push_back({{"t", p.t},
                       {"x", p.x},
                       {"y", p.y},
                       {"z", p.z},
                       {"Lambda", kin.Lambda},
                       {"K", kin.K}});
  }

  return json{{"schema_version", kSchemaVersion},
              {"mass", mass},
              {"k", k_wave},
              {"reports", reports},
              {"kinematic_samples", samples}};
}

}  // namespace stanum::report
