#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "stanum/spectrum.hpp"

using namespace stanum::spectrum;

TEST_CASE("charge quantization") {
  CHECK(dirac_g(0, 1.0) == 0.0);
  CHECK(dirac_g(-3, 0.7) == -dirac_g(3, 0.7));

  // the ratio m g / e must match the spectrum coefficient normalization
  const double alpha = kAlphaCodata;
  const double m = 2.5e-4;
  CHECK(mg_over_e(m, 1, alpha) == doctest::Approx(1.5 * m / alpha).epsilon(1e-14));
  for (int n : {1, 2, 5}) {
    const double e = std::sqrt(alpha);  // Gaussian-unit electron charge
    CHECK(m * dirac_g(n, e) / e == doctest::Approx(mg_over_e(m, n, alpha)).epsilon(1e-13));
  }
}

TEST_CASE("beta choice kills m1 and reproduces the closed-form m2") {
  CHECK(beta_for_null_m1(1.0, 0.0) == 0.0);
  CHECK(beta_for_null_m1(1.0, 1.0) == doctest::Approx(-M_PI / 4).epsilon(1e-15));
  CHECK(beta_for_null_m1(0.0, 1.0) == doctest::Approx(-M_PI / 2).epsilon(1e-15));
  CHECK(beta_for_null_m1(0.0, -1.0) == doctest::Approx(M_PI / 2).epsilon(1e-15));

  {
    const double beta = beta_for_null_m1(1.0, 1.0);
    CHECK(std::abs(m1_of_beta(1.0, 1.0, beta)) < 1e-14);
    CHECK(std::abs(m2_of_beta(1.0, 1.0, beta) - m2(1.0, 1.0)) < 1e-14);
    CHECK(m2(1.0, 1.0) == 0.0);
  }

  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const double K = u(rng), r = u(rng);
    if (std::hypot(K, r) < 1e-6) continue;
    const double beta = beta_for_null_m1(K, r);
    const double scale = std::hypot(K, r);
    CHECK(std::abs(m1_of_beta(K, r, beta)) < 1e-14 * scale);
    CHECK(std::abs(m2_of_beta(K, r, beta) - m2(K, r)) < 1e-12 * scale);
  }
}

TEST_CASE("m2 edge cases") {
  CHECK(m2(3.0, 0.0) == 3.0);
  CHECK(m2(2.0, 2.0) == 0.0);
  CHECK_THROWS_AS((void)m2(0.0, 0.0), DegenerateInput);
}

TEST_CASE("spectrum values at the published parameter point") {
  SpectrumParams p;
  p.m_param = 1.97e-4;
  p.N = 3;

  CHECK(mass_n(0, p) == doctest::Approx(0.12).epsilon(0.05));
  CHECK(std::abs(mass_n(0, p) - 0.12) < 0.005);
  CHECK(std::abs(mass_n(1, p) - 0.10) < 0.005);
  CHECK(std::abs(mass_n(2, p) - 0.056) < 0.005);
  CHECK(mass_n(3, p) == 0.0);  // n = N
  CHECK_THROWS_AS((void)mass_n(4, p), NegativeMass);

  // monotone decreasing over 0..N
  CHECK(mass_n(0, p) > mass_n(1, p));
  CHECK(mass_n(1, p) > mass_n(2, p));

  // homogeneous of degree 1 in the mass scale
  SpectrumParams p2 = p;
  p2.m_param = 2 * p.m_param;
  CHECK(mass_n(1, p2) == doctest::Approx(2 * mass_n(1, p)).epsilon(1e-15));
}

TEST_CASE("fit of the mass scale to the sum bound") {
  const double m = fit_m(3.0, {0, 1, 2}, 0.28);
  CHECK(std::abs(m - 1.97e-4) < 2e-6);
  CHECK(m > 1.95e-4);
  CHECK(m < 1.99e-4);

  // round-trip: the fitted scale reproduces the target sum
  SpectrumParams p;
  p.m_param = m;
  p.N = 3;
  const MassSpectrum ms = build_spectrum(p);
  CHECK(ms.sum_ev == doctest::Approx(0.28).epsilon(1e-12));

  CHECK(fit_m(3.0, {0, 1, 2}, 0.0) == 0.0);
  CHECK(fit_m(3.0, {0, 1, 2}, 0.56) == doctest::Approx(2 * m).epsilon(1e-14));
  CHECK_THROWS_AS((void)fit_m(3.0, {}, 0.28), std::invalid_argument);
}

TEST_CASE("spectrum equals the two-mass closed form through the quantized charge") {
  std::mt19937_64 rng(211);
  std::uniform_real_distribution<double> um(1e-6, 1e-2);
  std::uniform_real_distribution<double> uN(0.5, 20.0);
  std::uniform_int_distribution<int> un(0, 20);
  int tested = 0;
  for (int trial = 0; trial < 20000 && tested < 10000; ++trial) {
    SpectrumParams p;
    p.m_param = um(rng);
    p.N = uN(rng);
    const int n = un(rng);
    if (static_cast<double>(n) > p.N) continue;
    ++tested;
    const double K = 1.5 * p.m_param * p.N / p.alpha;
    const double r = mg_over_e(p.m_param, n, p.alpha);
    const double lhs = mass_n(n, p);
    const double rhs = m2(K, r);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(std::abs(lhs), 1e-300));
  }
  CHECK(tested == 10000);
}

TEST_CASE("published mass table: squared differences and their misprints") {
  // from the rounded printed masses 0.12, 0.10, 0.056 eV
  MassSpectrum printed;
  printed.masses = {{0, 0.12}, {1, 0.10}, {2, 0.056}};
  const auto d = mass_squared_diffs(printed);
  REQUIRE(d.size() == 3);
  CHECK(d[0].value_ev2 == doctest::Approx(4.4e-3).epsilon(1e-10));    // m0^2 - m1^2
  CHECK(d[1].value_ev2 == doctest::Approx(1.1264e-2).epsilon(1e-10)); // m0^2 - m2^2
  CHECK(d[2].value_ev2 == doctest::Approx(6.864e-3).epsilon(1e-10));  // m1^2 - m2^2

  // the published remark prints 4.4e-5 for the first and 16.46e-3 for the
  // second difference; both disagree with direct evaluation from the same
  // mass table, so the computed values are reported instead
  CHECK(std::abs(d[0].value_ev2 - 4.4e-5) > 1e-3);
  CHECK(std::abs(d[1].value_ev2 - 16.46e-3) > 1e-3);
}

TEST_CASE("near-degeneracy of the fitted spectrum") {
  SpectrumParams p;
  p.m_param = fit_m(3.0, {0, 1, 2}, 0.28);
  p.N = 3;
  const MassSpectrum ms = build_spectrum(p);
  REQUIRE(ms.masses.size() == 3);
  double lo = ms.masses[0].mass_ev, hi = lo;
  for (const auto& e : ms.masses) {
    lo = std::min(lo, e.mass_ev);
    hi = std::max(hi, e.mass_ev);
  }
  CHECK(hi / lo < 2.2);
  CHECK(lo < 0.056 * 1.05);  // lightest below the published bound
}

TEST_CASE("parameter validation") {
  SpectrumParams p;
  p.n_set = {0, 1, 4};
  p.N = 3;
  CHECK_THROWS_AS(p.validate(), NegativeMass);
  p.n_set = {};
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.n_set = {-1};
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}
