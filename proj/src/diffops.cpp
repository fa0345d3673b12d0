#include "stanum/diffops.hpp"

#include <atomic>
#include <mutex>
#include <cmath>
#include <thread>

namespace stanum::diffops {

GridSpec GridSpec::for_wavelength(double wavelength) {
  GridSpec g;
  // slightly off-center origin so samples avoid symmetry points
  g.origin = {0.0321 * wavelength, 0.0173 * wavelength, 0.0087 * wavelength,
              0.0251 * wavelength};
  g.extents = {wavelength, wavelength, wavelength, wavelength};
  g.counts = {9, 9, 9, 9};
  g.fd_step = wavelength / 64.0;
  return g;
}

std::size_t GridSpec::total() const {
  std::size_t n = 1;
  for (int a = 0; a < 4; ++a) n *= static_cast<std::size_t>(counts[a]);
  return n;
}

SpacetimePoint GridSpec::point(std::size_t flat) const {
  std::array<double, 4> u{};
  for (int a = 3; a >= 0; --a) {
    const auto n = static_cast<std::size_t>(counts[a]);
    const std::size_t i = flat % n;
    flat /= n;
    u[a] = counts[a] > 1 ? extents[a] * static_cast<double>(i) / (counts[a] - 1) : 0.0;
  }
  return {origin.t + u[0], origin.x + u[1], origin.y + u[2], origin.z + u[3]};
}

void GridSpec::validate() const {
  for (int a = 0; a < 4; ++a)
    if (counts[a] < 1) throw std::invalid_argument("GridSpec: counts must be >= 1");
  if (!(fd_step > 0)) throw std::invalid_argument("GridSpec: fd_step must be > 0");
}

namespace {

Multivector central_diff(const FieldMap& f, int mu, const SpacetimePoint& p, double h) {
  return (1.0 / (2.0 * h)) * (f(p.shifted(mu, h)) - f(p.shifted(mu, -h)));
}

Multivector second_diff(const FieldMap& f, int mu, const SpacetimePoint& p, double h) {
  return (1.0 / (h * h)) * (f(p.shifted(mu, h)) - 2.0 * f(p) + f(p.shifted(mu, -h)));
}

void require_finite(const Multivector& m, const char* what) {
  for (double v : m.c)
    if (!std::isfinite(v)) throw std::runtime_error(std::string(what) + ": non-finite field value");
}

std::array<double, 3> rel_vec(const Multivector& m) { return {m[5], m[6], m[7]}; }

Multivector from_rel_vec(const std::array<double, 3>& v) {
  Multivector m;
  m[5] = v[0];
  m[6] = v[1];
  m[7] = v[2];
  return m;
}

}  // namespace

Multivector partial_mu(const FieldMap& f, int mu, const SpacetimePoint& p, double h,
                       FdScheme scheme) {
  if (!(h > 0)) throw std::invalid_argument("partial_mu: h must be > 0");
  Multivector d = central_diff(f, mu, p, h);
  if (scheme == FdScheme::Richardson4) {
    const Multivector d2 = central_diff(f, mu, p, h / 2.0);
    d = (1.0 / 3.0) * (4.0 * d2 - d);
  }
  require_finite(d, "partial_mu");
  return d;
}

Multivector dirac(const FieldMap& f, const SpacetimePoint& p, double h, FdScheme scheme) {
  Multivector r;
  for (int mu = 0; mu < 4; ++mu) r += Multivector::gamma(mu) * partial_mu(f, mu, p, h, scheme);
  return r;
}

Multivector d_wedge(const FieldMap& f, const SpacetimePoint& p, double h, FdScheme scheme) {
  Multivector r;
  for (int mu = 0; mu < 4; ++mu) r += wedge(Multivector::gamma(mu), partial_mu(f, mu, p, h, scheme));
  return r;
}

Multivector codiff(const FieldMap& f, const SpacetimePoint& p, double h, FdScheme scheme) {
  Multivector r;
  for (int mu = 0; mu < 4; ++mu)
    r -= contract_left(Multivector::gamma(mu), partial_mu(f, mu, p, h, scheme));
  return r;
}

Multivector box(const FieldMap& f, const SpacetimePoint& p, double h, FdScheme scheme) {
  static constexpr double eta[4] = {1, -1, -1, -1};
  Multivector r;
  for (int mu = 0; mu < 4; ++mu) {
    Multivector d = second_diff(f, mu, p, h);
    if (scheme == FdScheme::Richardson4) {
      const Multivector d2 = second_diff(f, mu, p, h / 2.0);
      d = (1.0 / 3.0) * (4.0 * d2 - d);
    }
    r += eta[mu] * d;
  }
  require_finite(r, "box");
  return r;
}

double div3(const FieldMap& v, const SpacetimePoint& p, double h, FdScheme scheme) {
  double s = 0;
  for (int k = 1; k <= 3; ++k) s += rel_vec(partial_mu(v, k, p, h, scheme))[k - 1];
  return s;
}

Multivector curl3(const FieldMap& v, const SpacetimePoint& p, double h, FdScheme scheme) {
  const auto dx = rel_vec(partial_mu(v, 1, p, h, scheme));
  const auto dy = rel_vec(partial_mu(v, 2, p, h, scheme));
  const auto dz = rel_vec(partial_mu(v, 3, p, h, scheme));
  return from_rel_vec({dy[2] - dz[1], dz[0] - dx[2], dx[1] - dy[0]});
}

Multivector lap3(const FieldMap& v, const SpacetimePoint& p, double h, FdScheme scheme) {
  Multivector r;
  for (int k = 1; k <= 3; ++k) {
    Multivector d = second_diff(v, k, p, h);
    if (scheme == FdScheme::Richardson4) {
      const Multivector d2 = second_diff(v, k, p, h / 2.0);
      d = (1.0 / 3.0) * (4.0 * d2 - d);
    }
    r += d;
  }
  return r;
}

Multivector nabla_pauli(const FieldMap& f, const SpacetimePoint& p, double h, FdScheme scheme) {
  Multivector r;
  for (int k = 1; k <= 3; ++k) r += Multivector::sigma(k) * partial_mu(f, k, p, h, scheme);
  return r;
}

void require_static(const FieldMap& f, const GridSpec& grid, double tol) {
  const std::size_t n = grid.total();
  const std::size_t probes[] = {0, n / 3, (2 * n) / 3, n - 1};
  const double dt = grid.extents[0] > 0 ? 0.37 * grid.extents[0] : 0.5;
  for (std::size_t i : probes) {
    SpacetimePoint p = grid.point(i % n);
    const Multivector a = f(p);
    const Multivector b = f(p.shifted(0, dt));
    if ((a - b).max_abs_coeff() > tol * (1.0 + a.max_abs_coeff()))
      throw TimeDependentField("field '" + f.name + "' is not static");
  }
}

std::string equation_name(EquationId id) {
  switch (id) {
    case EquationId::FreeMaxwell: return "free_maxwell";
    case EquationId::MonopoleMaxwell: return "monopole_maxwell";
    case EquationId::MonopoleStatic: return "monopole_static";
    case EquationId::PauliDirac: return "pauli_dirac";
    case EquationId::PauliCurlWedge: return "pauli_curl_wedge";
    case EquationId::Curl3Eigen: return "curl3_eigen";
    case EquationId::Div3Zero: return "div3_zero";
    case EquationId::VectorHelmholtz: return "vector_helmholtz";
    case EquationId::KgBradyonic: return "kg_bradyonic";
    case EquationId::KgTachyonic: return "kg_tachyonic";
    case EquationId::DerotatedDirac: return "derotated_dirac";
  }
  return "unknown";
}

Multivector equation_lhs_minus_rhs(EquationId id, const EquationInputs& in,
                                   const SpacetimePoint& p, double h, FdScheme scheme) {
  if (in.field == nullptr) throw MissingInput("equation inputs: field is required");
  const FieldMap& f = *in.field;
  const Multivector g5 = Multivector::gamma5();
  switch (id) {
    case EquationId::FreeMaxwell:
      return dirac(f, p, h, scheme);
    case EquationId::MonopoleMaxwell: {
      if (in.current == nullptr) throw MissingInput("monopole_maxwell: current is required");
      return dirac(f, p, h, scheme) + in.coef * (g5 * (*in.current)(p));
    }
    case EquationId::MonopoleStatic:
      return dirac(f, p, h, scheme) + in.coef * (g5 * f(p) * Multivector::gamma(0));
    case EquationId::PauliDirac:
      // nabla E - coef i E, with i = -g5
      return nabla_pauli(f, p, h, scheme) + in.coef * (g5 * f(p));
    case EquationId::PauliCurlWedge: {
      // -i(nabla ^ E): keep the spatial-bivector part of nabla E, left
      // multiply by g5 (since -i = g5)
      const Multivector nE = nabla_pauli(f, p, h, scheme);
      Multivector w;
      w[8] = nE[8];
      w[9] = nE[9];
      w[10] = nE[10];
      return g5 * w - in.coef * f(p);
    }
    case EquationId::Curl3Eigen:
      return curl3(f, p, h, scheme) - in.coef * f(p);
    case EquationId::Div3Zero:
      return Multivector::scalar(div3(f, p, h, scheme));
    case EquationId::VectorHelmholtz:
      return lap3(f, p, h, scheme) + in.coef * f(p);
    case EquationId::KgBradyonic:
      return box(f, p, h, scheme) + (in.coef * in.coef) * f(p);
    case EquationId::KgTachyonic:
      return box(f, p, h, scheme) - (in.coef * in.coef) * f(p);
    case EquationId::DerotatedDirac:
      return dirac(f, p, h, scheme) + g5 * in.kappa * f(p);
  }
  throw std::logic_error("unhandled equation id");
}

namespace {

struct SweepStats {
  double max_abs = 0;
  double sum_sq = 0;
};

// Fixed-size chunks reduced in chunk order: results do not depend on the
// number of worker threads.
SweepStats parallel_sweep(std::size_t n, const std::function<double(std::size_t)>& norm_at) {
  constexpr std::size_t kChunk = 256;
  const std::size_t nchunks = (n + kChunk - 1) / kChunk;
  std::vector<SweepStats> partial(nchunks);

  unsigned nthreads = std::max(1u, std::min(std::thread::hardware_concurrency(), 8u));
  nthreads = static_cast<unsigned>(std::min<std::size_t>(nthreads, nchunks));

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&] {
    for (;;) {
      if (failed.load(std::memory_order_relaxed)) return;
      const std::size_t ck = next.fetch_add(1);
      if (ck >= nchunks) return;
      SweepStats s;
      const std::size_t lo = ck * kChunk;
      const std::size_t hi = std::min(lo + kChunk, n);
      try {
        for (std::size_t i = lo; i < hi; ++i) {
          const double v = norm_at(i);
          s.max_abs = std::max(s.max_abs, v);
          s.sum_sq += v * v;
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!failed.exchange(true)) error = std::current_exception();
        return;
      }
      partial[ck] = s;
    }
  };

  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failed.load()) std::rethrow_exception(error);

  SweepStats total;
  for (const auto& s : partial) {
    total.max_abs = std::max(total.max_abs, s.max_abs);
    total.sum_sq += s.sum_sq;
  }
  return total;
}

}  // namespace

ResidualReport sweep_residual(const std::string& equation_id, const PointResidual& r,
                              const GridSpec& grid, FdScheme scheme) {
  grid.validate();
  const std::size_t n = grid.total();

  auto stats_at = [&](double h) {
    return parallel_sweep(n, [&](std::size_t i) { return r(grid.point(i), h, scheme).norm(); });
  };

  const SweepStats full = stats_at(grid.fd_step);
  const SweepStats half = stats_at(grid.fd_step / 2.0);

  ResidualReport rep;
  rep.equation_id = equation_id;
  rep.max_abs = full.max_abs;
  rep.rms = std::sqrt(full.sum_sq / static_cast<double>(n));
  rep.sample_count = n;
  rep.h_used = grid.fd_step;
  if (half.max_abs <= 0) {
    rep.richardson_order_estimate = full.max_abs <= 0 ? 0.0 : 99.0;
  } else {
    rep.richardson_order_estimate = std::log2(full.max_abs / half.max_abs);
  }
  return rep;
}

ResidualReport equation_residual(EquationId id, const EquationInputs& in, const GridSpec& grid,
                                 FdScheme scheme) {
  if (in.field == nullptr) throw MissingInput("equation inputs: field is required");
  if (in.check_static) require_static(*in.field, grid);
  PointResidual r = [id, &in](const SpacetimePoint& p, double h, FdScheme s) {
    return equation_lhs_minus_rhs(id, in, p, h, s);
  };
  return sweep_residual(equation_name(id), r, grid, scheme);
}

double field_scale(const FieldMap& f, const GridSpec& grid) {
  grid.validate();
  const std::size_t n = grid.total();
  const SweepStats s = parallel_sweep(n, [&](std::size_t i) { return f(grid.point(i)).norm(); });
  return s.max_abs;
}

Multivector lorentz_force(const FieldMap& J, const FieldMap& F, const SpacetimePoint& p,
                          ForceVariant variant) {
  const Multivector j = J(p);
  const Multivector f = F(p);
  return graded_dot(j, variant == ForceVariant::Hodged ? hodge(f) : f);
}

RelativeForce lorentz_force_relative(const FieldMap& J, const FieldMap& F,
                                     const SpacetimePoint& p, ForceVariant variant) {
  const Multivector force1 = grade(lorentz_force(J, F, p, variant), 1);
  const Multivector rel = force1 * Multivector::gamma(0);
  RelativeForce rf;
  rf.time_component = rel[0];
  rf.space = {rel[5], rel[6], rel[7]};
  return rf;
}

}  // namespace stanum::diffops
