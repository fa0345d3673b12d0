// Acceptance suite: one pass/fail line per criterion, exit 1 on any failure.
// Every tolerance is pinned here, in code.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "stanum/diffops.hpp"
#include "stanum/fields.hpp"
#include "stanum/report.hpp"
#include "stanum/spectrum.hpp"
#include "stanum/spinor.hpp"
#include "support/fixtures.hpp"

using namespace stanum;
using diffops::EquationId;
using diffops::EquationInputs;
using diffops::FdScheme;
using diffops::FieldMap;
using diffops::GridSpec;

namespace {

int g_failures = 0;

#define EXPECT(cond, ...)                                        \
  do {                                                           \
    if (!(cond)) {                                               \
      std::printf("        check failed (%s:%d): ", __FILE__, __LINE__); \
      std::printf(__VA_ARGS__);                                  \
      std::printf("\n");                                         \
      ok = false;                                                \
    }                                                            \
  } while (0)

void print_criterion(int n, const char* title, bool ok) {
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", n, title);
  if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<SpacetimePoint> sample_points(std::size_t n, double box, std::uint64_t seed,
                                          bool spatial_only = false) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-box, box);
  std::vector<SpacetimePoint> pts(n);
  for (auto& p : pts) p = {spatial_only ? 0.0 : u(rng), u(rng), u(rng), u(rng)};
  return pts;
}

// --------------------------------------------------------------------------

bool criterion1_spectrum_reproduction() {
  bool ok = true;
  const auto t0 = std::chrono::steady_clock::now();
  const double m = spectrum::fit_m(3.0, {0, 1, 2}, 0.28);
  spectrum::SpectrumParams p;
  p.m_param = m;
  p.N = 3;
  const spectrum::MassSpectrum ms = spectrum::build_spectrum(p);
  const double elapsed = seconds_since(t0);

  EXPECT(m >= 1.95e-4 && m <= 1.99e-4, "fitted m = %.6e outside [1.95e-4, 1.99e-4]", m);
  const double published[3] = {0.12, 0.10, 0.056};
  for (int i = 0; i < 3; ++i)
    EXPECT(std::abs(ms.masses[i].mass_ev - published[i]) <= 0.005,
           "mass[%d] = %.4f vs published %.3f (tol 0.005)", i, ms.masses[i].mass_ev,
           published[i]);
  EXPECT(elapsed < 1e-3, "fit + spectrum took %.2e s (limit 1e-3)", elapsed);
  return ok;
}

bool criterion2_spectrum_identity() {
  bool ok = true;
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(424242);
  std::uniform_real_distribution<double> um(1e-6, 1e-2);
  std::uniform_real_distribution<double> uN(0.5, 20.0);
  std::uniform_int_distribution<int> un(0, 20);
  int tested = 0;
  double worst_value = 0, worst_scale = 0;
  while (tested < 10000) {
    spectrum::SpectrumParams q;
    q.m_param = um(rng);
    q.N = uN(rng);
    const int n = un(rng);
    if (static_cast<double>(n) > q.N) continue;
    ++tested;
    const double K = 1.5 * q.m_param * q.N / q.alpha;
    const double r = spectrum::mg_over_e(q.m_param, n, q.alpha);
    const double lhs = spectrum::mass_n(n, q);
    const double rhs = spectrum::m2(K, r);
    // relative to the value away from the N ~ n cancellation edge, and to
    // the input magnitude hypot(K, r) everywhere
    worst_scale = std::max(worst_scale, std::abs(lhs - rhs) / std::hypot(K, r));
    const double nn = static_cast<double>(n);
    if (q.N * q.N - nn * nn > 1e-3 * q.N * q.N)
      worst_value = std::max(worst_value, std::abs(lhs - rhs) / std::abs(lhs));
  }
  const double elapsed = seconds_since(t0);
  EXPECT(worst_value < 1e-12, "relative error %.3e >= 1e-12", worst_value);
  EXPECT(worst_scale < 1e-12, "scale-relative error %.3e >= 1e-12", worst_scale);
  EXPECT(elapsed < 1.0, "identity sweep took %.2f s (limit 1)", elapsed);
  return ok;
}

bool criterion3_force_free() {
  bool ok = true;
  const double g = 0.5, lambda = 2 * g;
  fields::BeltramiParams bp;
  bp.lambda_eig = lambda;
  const FieldMap E = fields::beltrami_field(bp);
  const FieldMap F = fields::embed_electric(E);
  const FieldMap J = fields::transcendent_current(F);

  const auto pts = sample_points(1000, M_PI / lambda, 515151, /*spatial_only=*/true);
  const double h = 5e-3;
  double worst_curl = 0, worst_div = 0, worst_force = 0;
  for (const auto& p : pts) {
    const Multivector Ev = E(p);
    const double en = Ev.norm();
    const Multivector curl = diffops::curl3(E, p, h, FdScheme::Richardson4);
    if (en > 1e-12) worst_curl = std::max(worst_curl, (curl - 2 * g * Ev).norm() / en);
    worst_div = std::max(worst_div, std::abs(diffops::div3(E, p, h, FdScheme::Richardson4)));
    const double force = diffops::lorentz_force(J, F, p, diffops::ForceVariant::Hodged).norm();
    worst_force = std::max(worst_force, force / std::max(en * en, 1e-300));
  }
  EXPECT(worst_curl <= 1e-6, "max |curl E - 2g E| / |E| = %.3e > 1e-6", worst_curl);
  EXPECT(worst_div <= 1e-8, "max |div E| = %.3e > 1e-8", worst_div);
  EXPECT(worst_force <= 1e-10, "max |J _| *F| / |E|^2 = %.3e > 1e-10", worst_force);
  return ok;
}

bool criterion4_free_monopole_equivalence() {
  bool ok = true;
  const double lambda = 1.0, m = lambda;
  fields::BeltramiParams bp;
  bp.lambda_eig = lambda;
  const FieldMap E = testgen::rotated_beltrami(bp);
  const FieldMap F0 = fields::embed_electric(E);
  const FieldMap F = fields::duality_rotate(F0, fields::DualityWave(m, 0.0));

  EquationInputs free_in;
  free_in.field = &F;
  EquationInputs mono_in;
  mono_in.field = &F0;
  mono_in.coef = m;

  // pointwise agreement of the two residual magnitudes
  const auto pts = sample_points(500, M_PI, 616161);
  double worst = 0;
  for (const auto& p : pts) {
    const double a =
        equation_lhs_minus_rhs(EquationId::FreeMaxwell, free_in, p, 1e-3, FdScheme::Richardson4)
            .norm();
    const double b =
        equation_lhs_minus_rhs(EquationId::MonopoleStatic, mono_in, p, 1e-3,
                               FdScheme::Richardson4)
            .norm();
    worst = std::max(worst, std::abs(a - b));
  }
  EXPECT(worst <= 1e-9, "max | |r_free| - |r_monopole| | = %.3e > 1e-9", worst);

  // both residuals converge at order >= 2: halving h shrinks the max by 3.5x
  const auto cpts = sample_points(200, M_PI, 717171);
  for (const EquationId id : {EquationId::FreeMaxwell, EquationId::MonopoleStatic}) {
    const EquationInputs& in = id == EquationId::FreeMaxwell ? free_in : mono_in;
    double r[3] = {0, 0, 0};
    const double hs[3] = {0.08, 0.04, 0.02};
    for (int k = 0; k < 3; ++k)
      for (const auto& p : cpts)
        r[k] = std::max(r[k],
                        equation_lhs_minus_rhs(id, in, p, hs[k], FdScheme::Central2).norm());
    EXPECT(r[0] / r[1] >= 3.5 && r[1] / r[2] >= 3.5,
           "%s ratios %.2f, %.2f below 3.5 (order < 2)",
           diffops::equation_name(id).c_str(), r[0] / r[1], r[1] / r[2]);
  }
  return ok;
}

bool criterion5_hertz_chains(const fields::HertzParams& hp, const char* tag) {
  bool ok = true;
  const fields::HertzChain hc = fields::hertz_chain(hp);
  const auto pts = sample_points(200, 0.8, 818181);

  // residual maxima at two steps; identities hold and decay at order >= 2
  auto max_residual = [&](auto&& fn, double h) {
    double worst = 0;
    for (const auto& p : pts) worst = std::max(worst, fn(p, h).norm());
    return worst;
  };

  auto box_pi = [&](const SpacetimePoint& p, double h) {
    return diffops::box(hc.pi, p, h, FdScheme::Central2);
  };
  auto codiff_a = [&](const SpacetimePoint& p, double h) {
    return diffops::codiff(hc.potential, p, h, FdScheme::Central2);
  };
  auto dirac_f = [&](const SpacetimePoint& p, double h) {
    return diffops::dirac(hc.field, p, h, FdScheme::Central2);
  };
  EquationInputs dr;
  dr.field = &hc.derotated;
  dr.coef = hp.m;
  const EquationId kg_id = hp.branch == fields::Branch::Bradyonic
                               ? EquationId::KgBradyonic
                               : EquationId::KgTachyonic;
  auto kg = [&](const SpacetimePoint& p, double h) {
    return equation_lhs_minus_rhs(kg_id, dr, p, h, FdScheme::Central2);
  };

  struct Named {
    const char* name;
    std::function<Multivector(const SpacetimePoint&, double)> fn;
    double allow;  // pinned residual bound at h = 0.02
  };
  const Named checks[] = {{"box Pi", box_pi, 2e-2},
                          {"codiff A", codiff_a, 2e-2},
                          {"dirac F", dirac_f, 2e-2},
                          {"derotated KG", kg, 2e-2}};
  for (const auto& c : checks) {
    const double r1 = max_residual(c.fn, 0.04);
    const double r2 = max_residual(c.fn, 0.02);
    EXPECT(r2 <= c.allow, "%s %s residual %.3e > %.0e at h = 0.02", tag, c.name, r2, c.allow);
    EXPECT(r1 / r2 >= 3.5, "%s %s ratio %.2f < 3.5 (order < 2)", tag, c.name, r1 / r2);
  }

  // off-dispersion parameters are rejected
  fields::HertzParams bad = hp;
  bad.omega = hp.m;
  bad.k = hp.m;
  bool thrown = false;
  try {
    (void)fields::hertz_chain(bad);
  } catch (const fields::OffShell&) {
    thrown = true;
  }
  EXPECT(thrown, "%s: off-dispersion parameters were not rejected", tag);
  return ok;
}

bool criterion6_spinor_suite() {
  bool ok = true;

  // polar round trip on 10^4 random even multivectors
  std::mt19937_64 rng(929292);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto random_even = [&]() {
    Multivector m;
    for (int i : {0, 5, 6, 7, 8, 9, 10, 15}) m[i] = u(rng);
    return m;
  };
  double worst_rt = 0;
  int accepted = 0;
  while (accepted < 10000) {
    const Multivector psi = random_even();
    const Multivector ppr = psi * reverse(psi);
    if (std::hypot(ppr.scalar_part(), ppr.pseudo_part()) < 1e-6) continue;
    ++accepted;
    worst_rt = std::max(
        worst_rt, (spinor::recompose(spinor::polar_decompose(psi)) - psi).norm() / psi.norm());
  }
  EXPECT(worst_rt < 1e-10, "polar round trip %.3e >= 1e-10", worst_rt);

  // auto-force nullity and its power
  double worst_null = 0;
  int nspinors = 0;
  while (nspinors < 100) {
    const Multivector psi = random_even();
    const Multivector ppr = psi * reverse(psi);
    const double rho = std::hypot(ppr.scalar_part(), ppr.pseudo_part());
    if (rho < 1e-2) continue;
    ++nspinors;
    const double beta = spinor::polar_decompose(psi).beta;
    for (double l : {beta, beta + M_PI, beta - M_PI})
      worst_null = std::max(worst_null, spinor::auto_force(psi, l).norm() / (rho * rho));
  }
  EXPECT(worst_null <= 1e-10, "auto-force at lambda = beta mod pi: %.3e > 1e-10", worst_null);

  const Multivector witness = exp_bivector(Multivector::blade(9, 0.3));  // exp(0.3 g1g3)
  const double beta_w = spinor::polar_decompose(witness).beta;
  const double power = spinor::auto_force(witness, beta_w + M_PI / 2).norm();
  EXPECT(power >= 1e-3, "witness auto-force at beta + pi/2 is %.3e < 1e-3", power);

  // plane-wave solutions: equation and Klein-Gordon residuals with the same
  // mass, at second order in h
  const double mass = 1.0;
  struct WaveCase {
    fields::Branch branch;
    spinor::DhEquation eq;
    EquationId kg;
    double omega, k;
  };
  const WaveCase cases[] = {
      {fields::Branch::Bradyonic, spinor::DhEquation::DhBradyonic, EquationId::KgBradyonic,
       std::sqrt(2.0), 1.0},
      {fields::Branch::Tachyonic, spinor::DhEquation::DhTachyonic, EquationId::KgTachyonic, 1.0,
       std::sqrt(2.0)},
  };
  for (const auto& wc : cases) {
    const spinor::SpinorField sf = spinor::plane_wave_spinor(wc.omega, wc.k, mass, wc.branch);
    GridSpec grid = GridSpec::for_wavelength(2 * M_PI / std::max(wc.omega, wc.k));
    grid.counts = {4, 3, 3, 4};
    spinor::DhExtras ex;
    ex.mass = mass;
    const auto r1 = dh_residual(wc.eq, sf, ex, grid, FdScheme::Central2);
    GridSpec half = grid;
    half.fd_step = grid.fd_step / 2;
    const auto r2 = dh_residual(wc.eq, sf, ex, half, FdScheme::Central2);
    EXPECT(r1.max_abs <= 1.0 * grid.fd_step * grid.fd_step,
           "%s equation residual %.3e above the h^2 envelope",
           dh_equation_name(wc.eq).c_str(), r1.max_abs);
    EXPECT(r1.max_abs / r2.max_abs >= 3.5, "%s equation ratio %.2f < 3.5",
           dh_equation_name(wc.eq).c_str(), r1.max_abs / r2.max_abs);

    EquationInputs kg;
    kg.field = &sf.psi;
    kg.coef = mass;
    const auto k1 = equation_residual(wc.kg, kg, grid, FdScheme::Central2);
    const auto k2 = equation_residual(wc.kg, kg, half, FdScheme::Central2);
    EXPECT(k1.max_abs <= 1.0 * grid.fd_step * grid.fd_step,
           "%s residual %.3e above the h^2 envelope", equation_name(wc.kg).c_str(), k1.max_abs);
    EXPECT(k1.max_abs / k2.max_abs >= 3.5, "%s ratio %.2f < 3.5", equation_name(wc.kg).c_str(),
           k1.max_abs / k2.max_abs);
  }
  return ok;
}

bool criterion7_published_value_caveat() {
  bool ok = true;
  // the published experimental inputs (0.28 eV cosmological sum bound, the
  // oscillation mass-squared splittings, the superluminal-neutrino timing
  // claim) are inputs or context, not outputs of this artifact; what is
  // reproduced numerically is the parameter fit of criterion 1 and the
  // mass-squared differences of the published mass table, with the two
  // misprinted values reported against direct evaluation
  spectrum::MassSpectrum printed;
  printed.masses = {{0, 0.12}, {1, 0.10}, {2, 0.056}};
  const auto d = spectrum::mass_squared_diffs(printed);
  EXPECT(std::abs(d[2].value_ev2 - 6.86e-3) <= 1e-5,
         "m1^2 - m2^2 = %.4e does not match the published 6.86e-3", d[2].value_ev2);
  EXPECT(std::abs(d[0].value_ev2 - 4.4e-3) <= 1e-5,
         "m0^2 - m1^2 = %.4e vs direct 4.4e-3", d[0].value_ev2);
  EXPECT(std::abs(d[0].value_ev2 - 4.4e-5) > 1e-3,
         "published 4.4e-5 unexpectedly matches the direct value");
  EXPECT(std::abs(d[1].value_ev2 - 1.1264e-2) <= 1e-5,
         "m0^2 - m2^2 = %.4e vs direct 1.1264e-2", d[1].value_ev2);
  EXPECT(std::abs(d[1].value_ev2 - 16.46e-3) > 1e-3,
         "published 16.46e-3 unexpectedly matches the direct value");
  if (ok) {
    std::printf(
        "        note: published values 4.4e-5 (m0^2-m1^2) and 16.46e-3 (m0^2-m2^2)\n"
        "        disagree with direct evaluation from the same mass table\n"
        "        (4.4e-3 and 1.1264e-2); the computed values are reported.\n");
  }
  return ok;
}

bool criterion8_full_suite_runtime() {
  bool ok = true;
  const auto t0 = std::chrono::steady_clock::now();
  report::RunConfig cfg;
  const report::SuiteReport rep = report::run_verify_suite(cfg);
  const double elapsed = seconds_since(t0);
  EXPECT(rep.all_passed(), "verify suite: %d checks failed", rep.n_failed());
  EXPECT(elapsed < 60.0, "verify suite took %.1f s (limit 60)", elapsed);
  std::printf("        verify: %d checks in %.2f s\n", rep.n_passed(), elapsed);
  return ok;
}

}  // namespace

int main() {
  print_criterion(1, "spectrum reproduction (m = 1.97e-4 eV; 0.12, 0.10, 0.056 eV)",
         criterion1_spectrum_reproduction());
  print_criterion(2, "spectrum identity against the two-mass closed form (1e-12, 10^4 triples)",
         criterion2_spectrum_identity());
  print_criterion(3, "force-free configuration (curl, divergence, Lorentz force)",
         criterion3_force_free());
  print_criterion(4, "free/monopole equivalence with second-order convergence",
         criterion4_free_monopole_equivalence());
  {
    fields::HertzParams brady;
    brady.branch = fields::Branch::Bradyonic;
    brady.m = 1.0;
    brady.omega = 0.6;
    brady.k = std::sqrt(brady.omega * brady.omega + brady.m * brady.m);
    brady.profile_kind = fields::ProfileKind::Exponential;
    brady.theta = 0.3;
    fields::HertzParams tachy;
    tachy.branch = fields::Branch::Tachyonic;
    tachy.m = 1.0;
    tachy.k = 0.6;
    tachy.omega = std::sqrt(tachy.k * tachy.k + tachy.m * tachy.m);
    tachy.profile_kind = fields::ProfileKind::Plane;
    tachy.theta = 0.7;
    const bool ok = criterion5_hertz_chains(brady, "bradyonic") &
                    criterion5_hertz_chains(tachy, "tachyonic");
    print_criterion(5, "Hertz chains (box Pi, codiff A, dirac F, Klein-Gordon, off-shell)", ok);
  }
  print_criterion(6, "spinor suite (polar, auto-force, plane-wave equations)",
         criterion6_spinor_suite());
  print_criterion(7, "published-value caveat (mass-squared differences and misprints)",
         criterion7_published_value_caveat());
  print_criterion(8, "full verify suite under 60 s", criterion8_full_suite_runtime());

  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all 8 criteria passed\n");
  return 0;
}
