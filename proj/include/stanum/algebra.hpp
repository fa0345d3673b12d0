#pragma once

// Real Clifford algebra Cl(1,3) over Minkowski vector space, metric
// signature (+,-,-,-).  A Multivector holds 16 coefficients indexed by the
// canonical basis blades
//
//   idx  0 : 1
//   idx  1..4  : g0, g1, g2, g3          (the raised frame vectors g^mu)
//   idx  5..10 : g0g1, g0g2, g0g3, g1g2, g1g3, g2g3
//   idx 11..14 : g0g1g2, g0g1g3, g0g2g3, g1g2g3
//   idx 15 : g5 = g0g1g2g3              (pseudoscalar, g5^2 = -1)
//
// Conventions used throughout:
//   * coefficients refer to blades built from the raised basis {g^mu},
//     g^0 g^0 = +1, g^i g^i = -1.  The lowered vectors are g_0 = g^0,
//     g_i = -g^i; gamma_low() returns them.
//   * relative (Pauli) basis: sigma_k := g^0 g^k = g_k g_0, sigma_k^2 = +1,
//     and the relative pseudoscalar is i = sigma1 sigma2 sigma3 = -g5.
//   * a bivector F splits as F = E + iB (see pauli_split below).
//
// All operations are pure functions on immutable values; everything here is
// safe to share across threads.

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace stanum {

inline constexpr int kBladeCount = 16;

// canonical index -> bitmask (bit mu set means g^mu is a factor)
inline constexpr std::array<int, kBladeCount> kBladeMask = {
    0b0000,                                  // 1
    0b0001, 0b0010, 0b0100, 0b1000,          // g0..g3
    0b0011, 0b0101, 0b1001,                  // g0g1 g0g2 g0g3
    0b0110, 0b1010, 0b1100,                  // g1g2 g1g3 g2g3
    0b0111, 0b1011, 0b1101, 0b1110,          // trivectors
    0b1111};                                 // g5

namespace detail {

constexpr std::array<int, kBladeCount> make_mask_to_index() {
  std::array<int, kBladeCount> m{};
  for (int i = 0; i < kBladeCount; ++i) m[kBladeMask[i]] = i;
  return m;
}
inline constexpr std::array<int, kBladeCount> kMaskToIndex = make_mask_to_index();

constexpr int popcount4(int m) {
  int n = 0;
  for (int b = 0; b < 4; ++b) n += (m >> b) & 1;
  return n;
}

// sign from reordering the concatenation of two blades into canonical order
constexpr int reorder_sign(int a, int b) {
  int swaps = 0;
  a >>= 1;
  while (a != 0) {
    swaps += popcount4(a & b);
    a >>= 1;
  }
  return (swaps & 1) ? -1 : +1;
}

// metric factors for the contracted generators; eta^{00} = +1, eta^{ii} = -1
constexpr int metric_sign(int common) {
  int s = 1;
  for (int mu = 1; mu < 4; ++mu)
    if ((common >> mu) & 1) s = -s;
  return s;
}

struct ProductTable {
  std::array<std::array<int8_t, kBladeCount>, kBladeCount> sign{};
  std::array<std::array<int8_t, kBladeCount>, kBladeCount> index{};
};

constexpr ProductTable make_product_table() {
  ProductTable t{};
  for (int i = 0; i < kBladeCount; ++i) {
    for (int j = 0; j < kBladeCount; ++j) {
      const int a = kBladeMask[i];
      const int b = kBladeMask[j];
      t.sign[i][j] = static_cast<int8_t>(reorder_sign(a, b) * metric_sign(a & b));
      t.index[i][j] = static_cast<int8_t>(kMaskToIndex[a ^ b]);
    }
  }
  return t;
}

inline constexpr ProductTable kProduct = make_product_table();

constexpr std::array<int8_t, kBladeCount> make_grade_table() {
  std::array<int8_t, kBladeCount> g{};
  for (int i = 0; i < kBladeCount; ++i) g[i] = static_cast<int8_t>(popcount4(kBladeMask[i]));
  return g;
}
inline constexpr std::array<int8_t, kBladeCount> kGrade = make_grade_table();

}  // namespace detail

/// Grade of canonical blade `idx` (0..4).
inline constexpr int blade_grade(int idx) { return detail::kGrade[idx]; }

struct SpacetimePoint {
  double t = 0, x = 0, y = 0, z = 0;

  double operator[](int mu) const {
    switch (mu) {
      case 0: return t;
      case 1: return x;
      case 2: return y;
      default: return z;
    }
  }
  SpacetimePoint shifted(int mu, double d) const {
    SpacetimePoint q = *this;
    switch (mu) {
      case 0: q.t += d; break;
      case 1: q.x += d; break;
      case 2: q.y += d; break;
      default: q.z += d; break;
    }
    return q;
  }
};

class Multivector {
 public:
  std::array<double, kBladeCount> c{};

  constexpr Multivector() = default;

  static Multivector scalar(double s) {
    Multivector m;
    m.c[0] = s;
    return m;
  }
  /// Raised frame vector g^mu, mu in 0..3.
  static Multivector gamma(int mu) { return blade(1 + mu); }
  /// Lowered frame vector g_mu: g_0 = g^0, g_i = -g^i.
  static Multivector gamma_low(int mu) { return blade(1 + mu, mu == 0 ? 1.0 : -1.0); }
  /// Pseudoscalar g5 = g0g1g2g3.
  static Multivector gamma5() { return blade(15); }
  /// Relative frame vector sigma_k = g^0 g^k, k in 1..3.
  static Multivector sigma(int k) { return blade(4 + k); }
  static Multivector blade(int idx, double coef = 1.0) {
    Multivector m;
    m.c[static_cast<size_t>(idx)] = coef;
    return m;
  }

  double operator[](int idx) const { return c[static_cast<size_t>(idx)]; }
  double& operator[](int idx) { return c[static_cast<size_t>(idx)]; }

  friend Multivector operator+(const Multivector& a, const Multivector& b) {
    Multivector r;
    for (int i = 0; i < kBladeCount; ++i) r.c[i] = a.c[i] + b.c[i];
    return r;
  }
  friend Multivector operator-(const Multivector& a, const Multivector& b) {
    Multivector r;
    for (int i = 0; i < kBladeCount; ++i) r.c[i] = a.c[i] - b.c[i];
    return r;
  }
  friend Multivector operator-(const Multivector& a) {
    Multivector r;
    for (int i = 0; i < kBladeCount; ++i) r.c[i] = -a.c[i];
    return r;
  }
  friend Multivector operator*(double s, const Multivector& a) {
    Multivector r;
    for (int i = 0; i < kBladeCount; ++i) r.c[i] = s * a.c[i];
    return r;
  }
  friend Multivector operator*(const Multivector& a, double s) { return s * a; }
  Multivector& operator+=(const Multivector& b) {
    for (int i = 0; i < kBladeCount; ++i) c[i] += b.c[i];
    return *this;
  }
  Multivector& operator-=(const Multivector& b) {
    for (int i = 0; i < kBladeCount; ++i) c[i] -= b.c[i];
    return *this;
  }

  /// Geometric product.
  friend Multivector operator*(const Multivector& a, const Multivector& b) {
    Multivector r;
    for (int i = 0; i < kBladeCount; ++i) {
      const double ai = a.c[i];
      if (ai == 0.0) continue;
      for (int j = 0; j < kBladeCount; ++j) {
        const double bj = b.c[j];
        if (bj == 0.0) continue;
        r.c[detail::kProduct.index[i][j]] += detail::kProduct.sign[i][j] * ai * bj;
      }
    }
    return r;
  }

  double scalar_part() const { return c[0]; }
  double pseudo_part() const { return c[15]; }

  /// Euclidean 2-norm of the 16 coefficients.
  double norm() const {
    double s = 0;
    for (double v : c) s += v * v;
    return std::sqrt(s);
  }
  double max_abs_coeff() const {
    double m = 0;
    for (double v : c) m = std::max(m, std::abs(v));
    return m;
  }
};

inline Multivector gp(const Multivector& a, const Multivector& b) { return a * b; }

/// Projection onto grade k; throws for k outside 0..4.
inline Multivector grade(const Multivector& a, int k) {
  if (k < 0 || k > 4) throw std::out_of_range("grade: k must be in 0..4, got " + std::to_string(k));
  Multivector r;
  for (int i = 0; i < kBladeCount; ++i)
    if (blade_grade(i) == k) r.c[i] = a.c[i];
  return r;
}

/// Reversion: grade-k part scaled by (-1)^{k(k-1)/2}.
inline Multivector reverse(const Multivector& a) {
  static constexpr double sign[5] = {1, 1, -1, -1, 1};
  Multivector r;
  for (int i = 0; i < kBladeCount; ++i) r.c[i] = sign[blade_grade(i)] * a.c[i];
  return r;
}

namespace detail {
// Blade-level outer product / left contraction.  For orthogonal basis blades
// A wedge B = AB when the factor sets are disjoint (else 0), and
// A lcont B = AB when A's factors all occur in B (else 0).
enum class BladeOp { Wedge, LContract, GradedDot };
inline Multivector graded_product(const Multivector& a, const Multivector& b, BladeOp op) {
  Multivector r;
  for (int i = 0; i < kBladeCount; ++i) {
    const double ai = a.c[i];
    if (ai == 0.0) continue;
    const int ma = kBladeMask[i];
    for (int j = 0; j < kBladeCount; ++j) {
      const double bj = b.c[j];
      if (bj == 0.0) continue;
      const int mb = kBladeMask[j];
      bool keep = false;
      switch (op) {
        case BladeOp::Wedge: keep = (ma & mb) == 0; break;
        case BladeOp::LContract: keep = (ma & ~mb) == 0; break;
        case BladeOp::GradedDot:
          // grade(a_r b_s, |s-r|): kept when the product lands on |s-r|,
          // i.e. the smaller blade's factors all occur in the larger one.
          keep = (ma & ~mb) == 0 || (mb & ~ma) == 0;
          break;
      }
      if (keep) r.c[kProduct.index[i][j]] += kProduct.sign[i][j] * ai * bj;
    }
  }
  return r;
}
}  // namespace detail

/// Outer product, grade(a_r b_s, r+s) extended bilinearly.
inline Multivector wedge(const Multivector& a, const Multivector& b) {
  return detail::graded_product(a, b, detail::BladeOp::Wedge);
}

/// Left contraction, grade(a_r b_s, s-r), zero when r > s.
inline Multivector contract_left(const Multivector& a, const Multivector& b) {
  return detail::graded_product(a, b, detail::BladeOp::LContract);
}

/// Grade-wise contraction grade(a_r b_s, |s-r|), used for Lorentz forces with
/// mixed-grade currents; coincides with contract_left for r <= s.
inline Multivector graded_dot(const Multivector& a, const Multivector& b) {
  return detail::graded_product(a, b, detail::BladeOp::GradedDot);
}

/// Hodge dual: *a = reverse(a) g5.  For grade-1 J this equals -g5 J.
inline Multivector hodge(const Multivector& a) { return reverse(a) * Multivector::gamma5(); }

/// exp(g5 chi) = cos(chi) + g5 sin(chi).
inline Multivector exp_g5(double chi) {
  Multivector m;
  m.c[0] = std::cos(chi);
  m.c[15] = std::sin(chi);
  return m;
}

struct RelativeSplit {
  std::array<double, 3> E{};
  std::array<double, 3> B{};
};

/// Splits a bivector F = E + iB (i = -g5) relative to the g^0 frame.
/// E_k is the coefficient of sigma_k = g0 g^k; B_k = -coeff(g5 sigma_k).
/// Throws if F has components outside grade 2.
RelativeSplit pauli_split(const Multivector& F);
Multivector pauli_join(const RelativeSplit& rs);

/// Rotor-style exponential of a bivector.  Uses the closed form when B^2 is
/// a pure scalar; otherwise falls back to a scaled-and-squared power series
/// converged to ~1e-15 of the result norm.  Throws on non-bivector input.
Multivector exp_bivector(const Multivector& B);

}  // namespace stanum
