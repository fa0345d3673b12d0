#pragma once

// Quantized neutrino mass spectrum: charge quantization, the beta / two-mass
// reduction, the closed-form spectrum m_n = (3m/2a)(N^2-n^2)/sqrt(N^2+n^2),
// the linear fit of the mass scale to a sum bound, and mass-squared
// differences.  All I/O in eV / eV^2.

#include <stdexcept>
#include <vector>

namespace stanum::spectrum {

/// Fine structure constant, CODATA 2018.
inline constexpr double kAlphaCodata = 7.2973525693e-3;

struct NegativeMass : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegenerateInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SpectrumParams {
  double m_param = 1.97e-4;           // mass scale, eV
  double N = 3.0;                      // level constant, need not be integer
  double alpha = kAlphaCodata;
  std::vector<int> n_set = {0, 1, 2};  // flavor indices

  void validate() const;  // n >= 0, N >= max(n_set), alpha > 0
};

struct MassEntry {
  int n = 0;
  double mass_ev = 0;
};

struct SqDiffEntry {
  int n_i = 0, n_j = 0;
  double value_ev2 = 0;  // m_i^2 - m_j^2
};

struct MassSpectrum {
  std::vector<MassEntry> masses;
  double sum_ev = 0;
  std::vector<SqDiffEntry> sq_diffs;
};

/// Quantized magnetic charge g = (3n/2)(hbar c / e) from the one-third
/// minimum charge reading of the quantization condition.  Odd in n.
double dirac_g(int n, double e_charge);

/// The ratio m g / e entering the two-mass reduction, in the normalization
/// consistent with the spectrum coefficient 9 m^2 n^2 / 4 a^2:
/// m g / e = (3 / 2 alpha) m n.
double mg_over_e(double m_param, int n, double alpha = kAlphaCodata);

/// beta making the first reduced mass vanish: tan(beta) = -(mg/e)/K,
/// computed as atan2(-mg_over_e, K) so K = 0 resolves to -+pi/2.
double beta_for_null_m1(double K, double mg_over_e_ratio);

/// Reduced masses of the two-mass equation before the beta choice.
double m1_of_beta(double K, double mg_over_e_ratio, double beta);
double m2_of_beta(double K, double mg_over_e_ratio, double beta);

/// m2 = (K^2 - r^2) / sqrt(K^2 + r^2); throws DegenerateInput at (0,0).
double m2(double K, double mg_over_e_ratio);

/// Closed-form spectrum value for flavor index n; throws NegativeMass for
/// n > N.
double mass_n(int n, const SpectrumParams& p);

/// Mass scale m making the spectrum sum over n_set equal sum_target_ev;
/// linear in m, so solved in closed form.
double fit_m(double N, const std::vector<int>& n_set, double sum_target_ev,
             double alpha = kAlphaCodata);

/// Full table: masses over n_set, their sum, and all pairwise squared
/// differences (i < j in n_set order).
MassSpectrum build_spectrum(const SpectrumParams& p);

/// Pairwise m_i^2 - m_j^2 for an existing mass table (>= 2 masses).
std::vector<SqDiffEntry> mass_squared_diffs(const MassSpectrum& ms);

}  // namespace stanum::spectrum
