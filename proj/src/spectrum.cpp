#include "stanum/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace stanum::spectrum {

void SpectrumParams::validate() const {
  if (!(alpha > 0)) throw std::invalid_argument("SpectrumParams: alpha must be > 0");
  if (n_set.empty()) throw std::invalid_argument("SpectrumParams: n_set must be nonempty");
  for (int n : n_set) {
    if (n < 0) throw std::invalid_argument("SpectrumParams: n must be >= 0");
    if (static_cast<double>(n) > N)
      throw NegativeMass("SpectrumParams: n = " + std::to_string(n) +
                         " exceeds N, mass would be negative");
  }
}

double dirac_g(int n, double e_charge) { return 1.5 * static_cast<double>(n) / e_charge; }

double mg_over_e(double m_param, int n, double alpha) {
  return 1.5 * m_param * static_cast<double>(n) / alpha;
}

double beta_for_null_m1(double K, double r) { return std::atan2(-r, K); }

double m1_of_beta(double K, double r, double beta) {
  return K * std::sin(beta) + r * std::cos(beta);
}

double m2_of_beta(double K, double r, double beta) {
  return K * std::cos(beta) + r * std::sin(beta);
}

double m2(double K, double r) {
  const double den = std::hypot(K, r);
  if (den == 0.0) throw DegenerateInput("m2: K and mg/e both zero");
  return (K * K - r * r) / den;
}

namespace {
double spectrum_shape(double N, int n) {
  const double nn = static_cast<double>(n);
  return (N * N - nn * nn) / std::sqrt(N * N + nn * nn);
}
}  // namespace

double mass_n(int n, const SpectrumParams& p) {
  if (n < 0) throw std::invalid_argument("mass_n: n must be >= 0");
  if (static_cast<double>(n) > p.N)
    throw NegativeMass("mass_n: n = " + std::to_string(n) + " exceeds N = " +
                       std::to_string(p.N));
  return 1.5 * p.m_param / p.alpha * spectrum_shape(p.N, n);
}

double fit_m(double N, const std::vector<int>& n_set, double sum_target_ev, double alpha) {
  if (n_set.empty()) throw std::invalid_argument("fit_m: n_set must be nonempty");
  double shape_sum = 0;
  for (int n : n_set) {
    if (n < 0 || static_cast<double>(n) > N)
      throw NegativeMass("fit_m: n outside [0, N]");
    shape_sum += spectrum_shape(N, n);
  }
  if (!(shape_sum > 0)) throw DegenerateInput("fit_m: spectrum shape sum is not positive");
  return sum_target_ev * (2.0 * alpha / 3.0) / shape_sum;
}

MassSpectrum build_spectrum(const SpectrumParams& p) {
  p.validate();
  MassSpectrum ms;
  ms.masses.reserve(p.n_set.size());
  for (int n : p.n_set) {
    const double m = mass_n(n, p);
    ms.masses.push_back({n, m});
    ms.sum_ev += m;
  }
  ms.sq_diffs = mass_squared_diffs(ms);
  return ms;
}

std::vector<SqDiffEntry> mass_squared_diffs(const MassSpectrum& ms) {
  std::vector<SqDiffEntry> out;
  const auto& m = ms.masses;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j)
      out.push_back({m[i].n, m[j].n, m[i].mass_ev * m[i].mass_ev - m[j].mass_ev * m[j].mass_ev});
  return out;
}

}  // namespace stanum::spectrum
