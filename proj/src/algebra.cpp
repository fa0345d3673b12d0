#include "stanum/algebra.hpp"

namespace stanum {

namespace {
constexpr double kGradePurityTol = 1e-12;

bool is_grade_pure(const Multivector& a, int k, double tol) {
  double other = 0, own = 0;
  for (int i = 0; i < kBladeCount; ++i) {
    if (blade_grade(i) == k)
      own += a.c[i] * a.c[i];
    else
      other += a.c[i] * a.c[i];
  }
  return other <= tol * tol * (1.0 + own);
}
}  // namespace

RelativeSplit pauli_split(const Multivector& F) {
  if (!is_grade_pure(F, 2, kGradePurityTol))
    throw std::invalid_argument("pauli_split: input is not a pure bivector");
  RelativeSplit rs;
  rs.E = {F[5], F[6], F[7]};
  // spatial part = -i B = g5 B; g5 sigma_1 = g2g3, g5 sigma_2 = -g1g3,
  // g5 sigma_3 = g1g2
  rs.B = {-F[10], F[9], -F[8]};
  return rs;
}

Multivector pauli_join(const RelativeSplit& rs) {
  Multivector F;
  F[5] = rs.E[0];
  F[6] = rs.E[1];
  F[7] = rs.E[2];
  F[10] = -rs.B[0];
  F[9] = rs.B[1];
  F[8] = -rs.B[2];
  return F;
}

Multivector exp_bivector(const Multivector& B) {
  if (!is_grade_pure(B, 2, kGradePurityTol))
    throw std::invalid_argument("exp_bivector: input is not a pure bivector");

  const Multivector B2 = B * B;  // grades 0 and 4 only
  const double s = B2.scalar_part();
  const double p = B2.pseudo_part();

  if (std::abs(p) <= 1e-14 * (1.0 + std::abs(s))) {
    // closed form: B^2 = s scalar
    if (s < -1e-14) {
      const double th = std::sqrt(-s);
      return Multivector::scalar(std::cos(th)) + (std::sin(th) / th) * B;
    }
    if (s > 1e-14) {
      const double th = std::sqrt(s);
      return Multivector::scalar(std::cosh(th)) + (std::sinh(th) / th) * B;
    }
    // |B^2| ~ 0: series through third order is exact to rounding
    return Multivector::scalar(1.0 + s / 2.0) + (1.0 + s / 6.0) * B;
  }

  // general case: scaling and squaring with a Taylor series
  int n = 0;
  double scale = B.norm();
  while (scale > 0.5) {
    scale *= 0.5;
    ++n;
  }
  const Multivector X = std::ldexp(1.0, -n) * B;
  Multivector sum = Multivector::scalar(1.0);
  Multivector term = Multivector::scalar(1.0);
  for (int k = 1; k < 40; ++k) {
    term = (1.0 / k) * (term * X);
    sum += term;
    if (term.norm() < 1e-18 * sum.norm()) break;
  }
  for (int k = 0; k < n; ++k) sum = sum * sum;
  return sum;
}

}  // namespace stanum
