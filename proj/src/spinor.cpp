#include "stanum/spinor.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace stanum::spinor {

using diffops::FdScheme;
using diffops::FieldMap;

PolarParts polar_decompose(const Multivector& psi, double tol) {
  const Multivector pp = psi * reverse(psi);  // scalar + pseudoscalar
  const double s = pp.scalar_part();
  const double q = pp.pseudo_part();
  const double rho = std::hypot(s, q);
  if (rho <= tol)
    throw SingularSpinor("polar_decompose: psi reverse(psi) ~ 0, no polar form");
  const double beta = std::atan2(q, s);
  PolarParts out;
  out.rho = rho;
  out.beta = beta;
  out.R = (1.0 / std::sqrt(rho)) * (psi * exp_g5(-beta / 2.0));
  return out;
}

Multivector recompose(const PolarParts& pp) {
  return std::sqrt(pp.rho) * (exp_g5(pp.beta / 2.0) * pp.R);
}

Multivector plane_g2g1() { return Multivector::blade(8, -1.0); }  // g2g1 = -g1g2
Multivector plane_g0g3() { return Multivector::blade(7); }

FieldMap field_from_spinor(const SpinorField& sf, const Multivector& plane, double prefactor) {
  const double d21 = (plane - plane_g2g1()).norm();
  const double d03 = (plane - plane_g0g3()).norm();
  if (d21 > 1e-12 && d03 > 1e-12)
    throw std::invalid_argument("field_from_spinor: plane must be g2g1 or g0g3");
  return FieldMap{
      [ev = sf.psi.eval, plane, prefactor](const SpacetimePoint& p) {
        const Multivector psi = ev(p);
        return prefactor * (psi * plane * reverse(psi));
      },
      sf.psi.name + "_field"};
}

FieldMap current_ansatz(const SpinorField& sf, const AnsatzParams& a, CurrentDirection dir) {
  const Multivector d = dir == CurrentDirection::Time ? Multivector::gamma(0)
                                                      : Multivector::gamma(3);
  const Multivector phase = exp_g5(a.lambda);
  const double cg = a.c_const * a.g;
  return FieldMap{
      [ev = sf.psi.eval, d, phase, cg](const SpacetimePoint& p) {
        const Multivector psi = ev(p);
        return cg * (phase * (psi * d * reverse(psi)));
      },
      sf.psi.name + "_current"};
}

Multivector auto_force(const Multivector& psi, double lambda, const AnsatzParams& a,
                       double field_prefactor) {
  const Multivector ppr = psi * reverse(psi);
  if (std::hypot(ppr.scalar_part(), ppr.pseudo_part()) <= 1e-12)
    throw SingularSpinor("auto_force: singular spinor");
  const Multivector J = a.c_const * a.g *
                        (exp_g5(lambda) * (psi * Multivector::gamma(0) * reverse(psi)));
  const Multivector F = field_prefactor * (psi * plane_g2g1() * reverse(psi));
  return graded_dot(J, F);
}

KinematicInvariants kinematic_invariants(const SpinorField& sf, const SpacetimePoint& p,
                                         double h, FdScheme scheme) {
  FieldMap rotor{[ev = sf.psi.eval](const SpacetimePoint& q) { return polar_decompose(ev(q)).R; },
                 sf.psi.name + "_rotor"};

  const Multivector R = rotor(p);
  const Multivector Rt = reverse(R);

  KinematicInvariants kin;
  kin.S = 0.5 * (R * plane_g2g1() * Rt);
  kin.v = R * Multivector::gamma(0) * Rt;

  // v^mu = v . g^mu: v^0 = v[1], v^i = -v[1+i]
  const double vup[4] = {kin.v[1], -kin.v[2], -kin.v[3], -kin.v[4]};
  for (int mu = 0; mu < 4; ++mu) {
    if (vup[mu] == 0.0) continue;
    const Multivector omega_mu = 2.0 * (diffops::partial_mu(rotor, mu, p, h, scheme) * Rt);
    kin.Omega += vup[mu] * omega_mu;
  }
  kin.Lambda = (kin.Omega * kin.S).scalar_part();
  kin.K = (kin.Omega * (Multivector::gamma5() * kin.S)).scalar_part();
  return kin;
}

std::string dh_equation_name(DhEquation eq) {
  switch (eq) {
    case DhEquation::DhGeneral: return "dh_general";
    case DhEquation::DhTwoMass: return "dh_two_mass";
    case DhEquation::DhBradyonic: return "dh_bradyonic";
    case DhEquation::DhTachyonic: return "dh_tachyonic";
  }
  return "unknown";
}

Multivector dh_lhs_minus_rhs(DhEquation eq, const SpinorField& sf, const DhExtras& ex,
                             const SpacetimePoint& p, double h, FdScheme scheme) {
  const Multivector g0 = Multivector::gamma(0);
  const Multivector g5 = Multivector::gamma5();
  const Multivector psi = sf.psi(p);
  const Multivector dpsi = diffops::dirac(sf.psi, p, h, scheme);

  switch (eq) {
    case DhEquation::DhBradyonic:
      return dpsi * plane_g2g1() - ex.mass * (g5 * psi * g0);
    case DhEquation::DhTachyonic:
      return dpsi - ex.mass * (g5 * psi * g0);
    case DhEquation::DhTwoMass:
      return dpsi * plane_g2g1() - ex.m1 * (psi * g0) - ex.m2 * (g5 * psi * g0);
    case DhEquation::DhGeneral: {
      if (ex.current == nullptr) throw diffops::MissingInput("dh_general: current is required");
      double rho, beta;
      if (ex.rho && ex.beta) {
        rho = *ex.rho;
        beta = *ex.beta;
      } else {
        const PolarParts pp = polar_decompose(psi);
        rho = ex.rho.value_or(pp.rho);
        beta = ex.beta.value_or(pp.beta);
      }
      const Multivector eb = exp_g5(beta);
      Multivector rhs = ex.Lambda * (psi * g0 * eb) + ex.K * (g5 * psi * g0 * eb);
      rhs += (ex.m_over_e / rho) * (eb * (*ex.current)(p) * psi);
      return dpsi * plane_g2g1() - rhs;
    }
  }
  throw std::logic_error("unhandled dh equation");
}

diffops::ResidualReport dh_residual(DhEquation eq, const SpinorField& sf, const DhExtras& ex,
                                    const diffops::GridSpec& grid, FdScheme scheme) {
  diffops::PointResidual r = [eq, &sf, &ex](const SpacetimePoint& p, double h, FdScheme s) {
    return dh_lhs_minus_rhs(eq, sf, ex, p, h, s);
  };
  return diffops::sweep_residual(dh_equation_name(eq), r, grid, scheme);
}

namespace {

constexpr int kEvenIdx[8] = {0, 5, 6, 7, 8, 9, 10, 15};
constexpr int kOddIdx[8] = {1, 2, 3, 4, 11, 12, 13, 14};

// the linear map whose kernel is the plane-wave amplitude space
Multivector plane_wave_map(const Multivector& X, double omega, double k, double mass,
                           Branch branch) {
  const Multivector kappa =
      omega * Multivector::gamma(0) - k * Multivector::gamma(3);
  const Multivector mg5Xg0 =
      mass * (Multivector::gamma5() * X * Multivector::gamma(0));
  if (branch == Branch::Bradyonic) return kappa * X + mg5Xg0;
  return kappa * X * plane_g2g1() - mg5Xg0;
}

Eigen::Matrix<double, 8, 8> plane_wave_matrix(double omega, double k, double mass,
                                              Branch branch) {
  Eigen::Matrix<double, 8, 8> A;
  for (int col = 0; col < 8; ++col) {
    const Multivector img = plane_wave_map(Multivector::blade(kEvenIdx[col]), omega, k, mass,
                                           branch);
    for (int row = 0; row < 8; ++row) A(row, col) = img[kOddIdx[row]];
    // the map lands in the odd subspace; anything else is a logic error
    for (int e = 0; e < 8; ++e)
      if (std::abs(img[kEvenIdx[e]]) > 1e-12)
        throw std::logic_error("plane_wave_matrix: image not odd-graded");
  }
  return A;
}

}  // namespace

std::pair<double, double> plane_wave_singular_values(double omega, double k, double mass,
                                                     Branch branch) {
  const auto A = plane_wave_matrix(omega, k, mass, branch);
  Eigen::JacobiSVD<Eigen::Matrix<double, 8, 8>> svd(A);
  const auto& sv = svd.singularValues();
  return {sv(7), sv(0)};
}

SpinorField plane_wave_spinor(double omega, double k, double mass, Branch branch) {
  const auto A = plane_wave_matrix(omega, k, mass, branch);
  Eigen::JacobiSVD<Eigen::Matrix<double, 8, 8>> svd(A, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double scale = std::max(sv(0), 1.0);
  if (sv(7) > 1e-9 * scale)
    throw OffShell("plane_wave_spinor: dispersion violated, amplitude map has full rank");

  Eigen::Matrix<double, 8, 1> nv = svd.matrixV().col(7);
  // deterministic sign: first significant component positive
  for (int i = 0; i < 8; ++i) {
    if (std::abs(nv(i)) > 1e-6) {
      if (nv(i) < 0) nv = -nv;
      break;
    }
  }
  Multivector psi0;
  for (int i = 0; i < 8; ++i) psi0[kEvenIdx[i]] = nv(i);

  SpinorField sf;
  sf.mass = mass;
  sf.branch = branch;
  sf.psi = FieldMap{
      [psi0, omega, k](const SpacetimePoint& p) {
        const double phi = omega * p.t - k * p.z;
        // exp(g2g1 phi) = cos phi + g2g1 sin phi
        Multivector rot = Multivector::scalar(std::cos(phi));
        rot[8] = -std::sin(phi);  // g2g1 = -g1g2
        return psi0 * rot;
      },
      branch == Branch::Bradyonic ? "plane_wave_bradyonic" : "plane_wave_tachyonic"};
  return sf;
}

}  // namespace stanum::spinor
