#include "stanum/fields.hpp"

#include <cmath>

namespace stanum::fields {

using diffops::FieldMap;

FieldMap beltrami_field(const BeltramiParams& p) {
  const double L = p.lambda_eig, A = p.A, B = p.B, C = p.C;
  return FieldMap{
      [=](const SpacetimePoint& q) {
        Multivector m;
        m[5] = A * std::sin(L * q.z) + C * std::cos(L * q.y);
        m[6] = B * std::sin(L * q.x) + A * std::cos(L * q.z);
        m[7] = C * std::sin(L * q.y) + B * std::cos(L * q.x);
        return m;
      },
      "beltrami_abc"};
}

FieldMap embed_electric(const FieldMap& E) {
  return FieldMap{
      [ev = E.eval](const SpacetimePoint& q) {
        const Multivector v = ev(q);
        Multivector m;
        m[5] = v[5];
        m[6] = v[6];
        m[7] = v[7];
        return m;
      },
      E.name + "_embedded"};
}

FieldMap transcendent_current(const FieldMap& F) {
  return FieldMap{
      [ev = F.eval, name = F.name](const SpacetimePoint& q) {
        const Multivector f = ev(q);
        double off = 0;
        for (int i = 0; i < kBladeCount; ++i)
          if (i != 5 && i != 6 && i != 7) off += f.c[i] * f.c[i];
        if (off > 1e-18 * (1.0 + f.norm() * f.norm()))
          throw NonElectricField("transcendent_current: field '" + name +
                                 "' is not a pure electric bivector");
        return f * Multivector::gamma(0);
      },
      F.name + "_current"};
}

FieldMap rotate_relative(const FieldMap& v, double angle_z, double angle_x) {
  const double ca = std::cos(angle_z), sa = std::sin(angle_z);
  const double cb = std::cos(angle_x), sb = std::sin(angle_x);
  // rows of Q = Rz(angle_z) Rx(angle_x)
  const std::array<std::array<double, 3>, 3> Q = {{{ca, -sa * cb, sa * sb},
                                                   {sa, ca * cb, -ca * sb},
                                                   {0.0, sb, cb}}};
  return FieldMap{
      [Q, ev = v.eval](const SpacetimePoint& p) {
        SpacetimePoint q;  // body coordinates x_b = Q^T x
        q.t = p.t;
        q.x = Q[0][0] * p.x + Q[1][0] * p.y + Q[2][0] * p.z;
        q.y = Q[0][1] * p.x + Q[1][1] * p.y + Q[2][1] * p.z;
        q.z = Q[0][2] * p.x + Q[1][2] * p.y + Q[2][2] * p.z;
        const Multivector eb = ev(q);
        Multivector out;
        for (int r = 0; r < 3; ++r)
          out[5 + r] = Q[r][0] * eb[5] + Q[r][1] * eb[6] + Q[r][2] * eb[7];
        return out;
      },
      v.name + "_rotated_frame"};
}

FieldMap duality_rotate(const FieldMap& F_static, const DualityWave& w) {
  // probe t-independence at a few generic points
  const SpacetimePoint probes[] = {
      {0.0, 0.311, -0.177, 0.523}, {0.0, -1.21, 0.64, -0.09}, {0.0, 2.7, 1.31, 0.41}};
  for (const auto& p : probes) {
    const Multivector a = F_static(p);
    const Multivector b = F_static(p.shifted(0, 0.731));
    if ((a - b).max_abs_coeff() > 1e-9 * (1.0 + a.max_abs_coeff()))
      throw diffops::TimeDependentField("duality_rotate: field '" + F_static.name +
                                        "' depends on t");
  }
  const double omega = w.omega(), k = w.k();
  return FieldMap{
      [ev = F_static.eval, omega, k](const SpacetimePoint& q) {
        return ev(q) * exp_g5(omega * q.t - k * q.z);
      },
      F_static.name + "_rotated"};
}

void HertzParams::validate() const {
  if (!(m > 0)) throw std::invalid_argument("HertzParams: m must be > 0");
  const double disp = omega * omega - k * k + (branch == Branch::Bradyonic ? m * m : -m * m);
  const double scale = omega * omega + k * k + m * m;
  if (std::abs(disp) > 1e-9 * scale)
    throw OffShell("HertzParams: dispersion violated (omega^2 - k^2 != " +
                   std::string(branch == Branch::Bradyonic ? "-m^2)" : "+m^2)"));
  if (B2.norm() == 0.0) throw std::invalid_argument("HertzParams: B2 must be nonzero");
  if ((B2 - grade(B2, 2)).norm() > 1e-12 * B2.norm())
    throw std::invalid_argument("HertzParams: B2 must be a pure bivector");
  const bool kind_ok = (branch == Branch::Bradyonic)
                           ? profile_kind == ProfileKind::Exponential
                           : (profile_kind == ProfileKind::Plane ||
                              profile_kind == ProfileKind::Bessel);
  if (!kind_ok)
    throw std::invalid_argument("HertzParams: profile kind inconsistent with branch");
}

namespace {

ScalarProfile exponential_profile(double m, double theta) {
  const double cx = m * std::cos(theta), cy = m * std::sin(theta);
  return ScalarProfile{
      ProfileKind::Exponential,
      [=](double x, double y) { return std::exp(cx * x + cy * y); },
      [=](double x, double y) {
        const double u = std::exp(cx * x + cy * y);
        return std::array<double, 2>{cx * u, cy * u};
      },
      [=](double x, double y) {
        const double u = std::exp(cx * x + cy * y);
        return std::array<double, 3>{cx * cx * u, cx * cy * u, cy * cy * u};
      }};
}

ScalarProfile plane_profile(double m, double theta) {
  const double cx = m * std::cos(theta), cy = m * std::sin(theta);
  return ScalarProfile{
      ProfileKind::Plane,
      [=](double x, double y) { return std::cos(cx * x + cy * y); },
      [=](double x, double y) {
        const double s = std::sin(cx * x + cy * y);
        return std::array<double, 2>{-cx * s, -cy * s};
      },
      [=](double x, double y) {
        const double c = std::cos(cx * x + cy * y);
        return std::array<double, 3>{-cx * cx * c, -cx * cy * c, -cy * cy * c};
      }};
}

// J0(m rho) with a series fallback near the axis where x/rho is singular
ScalarProfile bessel_profile(double m) {
  const auto small = [m](double r2) { return m * m * r2 < 1e-4; };
  return ScalarProfile{
      ProfileKind::Bessel,
      [=](double x, double y) {
        const double r2 = x * x + y * y;
        if (small(r2)) {
          const double a = m * m * r2;
          return 1.0 - a / 4.0 + a * a / 64.0 - a * a * a / 2304.0;
        }
        return std::cyl_bessel_j(0, m * std::sqrt(r2));
      },
      [=](double x, double y) {
        const double r2 = x * x + y * y;
        if (small(r2)) {
          const double m2 = m * m, m4 = m2 * m2, m6 = m4 * m2;
          const double d = -m2 / 2.0 + m4 * r2 / 16.0 - m6 * r2 * r2 / 384.0;
          return std::array<double, 2>{x * d, y * d};
        }
        const double rho = std::sqrt(r2);
        const double wp = -m * std::cyl_bessel_j(1, m * rho);
        return std::array<double, 2>{wp * x / rho, wp * y / rho};
      },
      [=](double x, double y) {
        const double r2 = x * x + y * y;
        if (small(r2)) {
          const double m2 = m * m, m4 = m2 * m2, m6 = m4 * m2;
          const double d = -m2 / 2.0 + m4 * r2 / 16.0 - m6 * r2 * r2 / 384.0;
          const double dd = m4 / 8.0 - m6 * r2 / 96.0;
          return std::array<double, 3>{d + x * x * dd, x * y * dd, d + y * y * dd};
        }
        const double rho = std::sqrt(r2);
        const double j0 = std::cyl_bessel_j(0, m * rho);
        const double j1 = std::cyl_bessel_j(1, m * rho);
        const double wp = -m * j1;
        const double wpp = -m * m * j0 + m * j1 / rho;
        const double a = (wpp - wp / rho) / r2;
        return std::array<double, 3>{wpp * x * x / r2 + wp * (1.0 / rho - x * x / (rho * r2)),
                                     a * x * y,
                                     wpp * y * y / r2 + wp * (1.0 / rho - y * y / (rho * r2))};
      }};
}

}  // namespace

ScalarProfile hertz_profile(const HertzParams& hp) {
  hp.validate();
  switch (hp.profile_kind) {
    case ProfileKind::Exponential: return exponential_profile(hp.m, hp.theta);
    case ProfileKind::Plane: return plane_profile(hp.m, hp.theta);
    case ProfileKind::Bessel: return bessel_profile(hp.m);
  }
  throw std::logic_error("unhandled profile kind");
}

FieldMap profile_field(const ScalarProfile& prof) {
  return FieldMap{
      [v = prof.value](const SpacetimePoint& q) { return Multivector::scalar(v(q.x, q.y)); },
      "hertz_profile"};
}

HertzChain hertz_chain(const HertzParams& hp) {
  hp.validate();
  const ScalarProfile prof = hertz_profile(hp);
  const double omega = hp.omega, k = hp.k;
  const Multivector B2 = hp.B2;

  // dchi_mu = (omega, 0, 0, -k); Pi = u exp(g5 chi) B2
  const std::array<double, 4> dchi = {omega, 0.0, 0.0, -k};

  auto phase = [omega, k](const SpacetimePoint& q) { return exp_g5(omega * q.t - k * q.z); };

  // first derivatives: dPi_mu = [du_mu + u g5 dchi_mu] phase B2
  auto dpi = [prof, dchi, B2, phase](const SpacetimePoint& q, int mu) {
    const auto gr = prof.gradient(q.x, q.y);
    const double du = mu == 1 ? gr[0] : (mu == 2 ? gr[1] : 0.0);
    const double u = prof.value(q.x, q.y);
    const Multivector w =
        Multivector::scalar(du) + Multivector::blade(15, u * dchi[static_cast<size_t>(mu)]);
    return w * phase(q) * B2;
  };

  FieldMap pi{[prof, B2, phase](const SpacetimePoint& q) {
                return prof.value(q.x, q.y) * (phase(q) * B2);
              },
              "hertz_pi"};

  FieldMap potential{[dpi](const SpacetimePoint& q) {
                       Multivector a;
                       for (int mu = 0; mu < 4; ++mu)
                         a += contract_left(Multivector::gamma(mu), dpi(q, mu));
                       return a;  // A = -codiff Pi = +sum g^mu _| dPi_mu
                     },
                     "hertz_potential"};

  // second derivatives:
  // ddPi_{mu nu} = [dd_u - u dchi_mu dchi_nu
  //                 + (du_mu dchi_nu + du_nu dchi_mu) g5] phase B2
  auto ddpi = [prof, dchi, B2, phase](const SpacetimePoint& q, int mu, int nu) {
    const auto gr = prof.gradient(q.x, q.y);
    const auto hs = prof.hessian(q.x, q.y);
    const double u = prof.value(q.x, q.y);
    auto du = [&gr](int a) { return a == 1 ? gr[0] : (a == 2 ? gr[1] : 0.0); };
    auto dd = [&hs](int a, int b) {
      if (a > b) std::swap(a, b);
      if (a == 1 && b == 1) return hs[0];
      if (a == 1 && b == 2) return hs[1];
      if (a == 2 && b == 2) return hs[2];
      return 0.0;
    };
    const double cmu = dchi[static_cast<size_t>(mu)], cnu = dchi[static_cast<size_t>(nu)];
    const Multivector w = Multivector::scalar(dd(mu, nu) - u * cmu * cnu) +
                          Multivector::blade(15, du(mu) * cnu + du(nu) * cmu);
    return w * phase(q) * B2;
  };

  FieldMap field{[ddpi](const SpacetimePoint& q) {
                   Multivector f;
                   for (int mu = 0; mu < 4; ++mu) {
                     Multivector da;  // partial_mu A
                     for (int nu = 0; nu < 4; ++nu)
                       da += contract_left(Multivector::gamma(nu), ddpi(q, mu, nu));
                     f += wedge(Multivector::gamma(mu), da);
                   }
                   return f;
                 },
                 "hertz_field"};

  FieldMap derotated{[ev = field.eval, omega, k](const SpacetimePoint& q) {
                       return ev(q) * exp_g5(omega * q.t - k * q.z);
                     },
                     "hertz_derotated"};

  return HertzChain{std::move(pi), std::move(potential), std::move(field), std::move(derotated),
                    hp.kappa()};
}

}  // namespace stanum::fields
