#include "zsnft/scattering.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "zsnft/fft.hpp"
#include "zsnft/matpoly.hpp"
#include "zsnft/parallel.hpp"
#include "zsnft/phase.hpp"
#include "zsnft/schemes.hpp"
#include "zsnft/simd/kernels.hpp"

namespace zsnft {

std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::bo: return "bo";
    case Scheme::tes4: return "tes4";
    case Scheme::tes4sb: return "tes4sb";
    case Scheme::ftes4sb: return "ftes4sb";
  }
  return "?";
}

std::optional<Scheme> parse_scheme(const std::string& name) {
  if (name == "bo") return Scheme::bo;
  if (name == "tes4") return Scheme::tes4;
  if (name == "tes4sb") return Scheme::tes4sb;
  if (name == "ftes4sb") return Scheme::ftes4sb;
  return std::nullopt;
}

double invariant_error(Cx a, Cx b, int sigma) {
  return std::abs(1.0 - std::norm(a) - static_cast<double>(sigma) * std::norm(b));
}

namespace {

using clock_type = std::chrono::steady_clock;

constexpr std::size_t kXiBlock = 64;  // fixed so results don't depend on thread count

// cosh(k)/sinh(k)/k for k^2 real (the real-xi case): branches on the sign of
// k^2, with one series covering both signs near zero.
inline void cosh_sinhc_real(double k2, double& ch, double& sc) {
  if (std::abs(k2) < 1e-8) {
    ch = 1.0 + k2 * (0.5 + k2 / 24.0);
    sc = 1.0 + k2 * (1.0 / 6.0 + k2 / 120.0);
  } else if (k2 < 0.0) {
    const double k = std::sqrt(-k2);
    ch = std::cos(k);
    sc = std::sin(k) / k;
  } else {
    const double k = std::sqrt(k2);
    ch = std::cosh(k);
    sc = std::sinh(k) / k;
  }
}

// exp(tau Q) for real xi applied to the running column.
inline void bo_apply(Cx q, double sigma, double xi, double tau, Cx& p1, Cx& p2) {
  const double qt_r = tau * q.real(), qt_i = tau * q.imag();
  const double xt = tau * xi;
  const double k2 = -xt * xt - sigma * (qt_r * qt_r + qt_i * qt_i);
  double ch, sc;
  cosh_sinhc_real(k2, ch, sc);
  const Cx t11(ch, -sc * xt);
  const Cx t12(sc * qt_r, sc * qt_i);
  const Cx t21(-sigma * sc * qt_r, sigma * sc * qt_i);
  const Cx t22(ch, sc * xt);
  const Cx n1 = t11 * p1 + t12 * p2;
  const Cx n2 = t21 * p1 + t22 * p2;
  p1 = n1;
  p2 = n2;
}

inline void mat_apply(const Mat2& m, Cx& p1, Cx& p2) {
  const Cx n1 = m.a11 * p1 + m.a12 * p2;
  const Cx n2 = m.a21 * p1 + m.a22 * p2;
  p1 = n1;
  p2 = n2;
}

void fill_point(SpectralPoint& pt, Cx a, Cx b, int sigma) {
  pt.a = a;
  pt.b = b;
  pt.h_err = invariant_error(a, b, sigma);
  if (std::abs(a) > 0.0) {
    pt.r = b / a;
    pt.r_valid = true;
  } else {
    pt.r = Cx(0.0);
    pt.r_valid = false;
  }
}

// a-extraction phase e^{i zeta (M+1) tau} for real xi, in split precision.
Cx boundary_phase(double tau, std::size_t M, double xi) {
  const DD theta = ddmath::prod(tau, static_cast<double>(M + 1));
  return unit_phase(theta, xi);
}

void sweep_bo(const Signal& s, const EvalGrid& grid, ScatteringResult& res) {
  const double tau = s.tau();
  const double sigma = static_cast<double>(s.sigma);
  parallel_for_blocks(grid.size(), kXiBlock, [&](std::size_t b, std::size_t e) {
    for (std::size_t j = b; j < e; ++j) {
      const double xi = grid.xi[j];
      Cx p1(1.0), p2(0.0);
      for (const Cx& q : s.samples) bo_apply(q, sigma, xi, tau, p1, p2);
      res.points[j].zeta = Cx(xi, 0.0);
      fill_point(res.points[j], p1 * boundary_phase(tau, s.M(), xi), p2, s.sigma);
    }
  });
}

void sweep_tes4(const Signal& s, const EvalGrid& grid, ScatteringResult& res) {
  const double tau = s.tau();
  const double sigma = static_cast<double>(s.sigma);
  const std::size_t n_steps = s.M() + 1;

  std::vector<std::pair<Mat2, Mat2>> edges(n_steps);
  parallel_for_blocks(n_steps, 1024, [&](std::size_t b, std::size_t e) {
    for (std::size_t n = b; n < e; ++n)
      edges[n] = edge_matrices(central_derivatives(window_at(s, n)), tau, s.sigma);
  });

  parallel_for_blocks(grid.size(), kXiBlock, [&](std::size_t b, std::size_t e) {
    for (std::size_t j = b; j < e; ++j) {
      const double xi = grid.xi[j];
      Cx p1(1.0), p2(0.0);
      for (std::size_t n = 0; n < n_steps; ++n) {
        mat_apply(edges[n].second, p1, p2);
        bo_apply(s.samples[n], sigma, xi, tau, p1, p2);
        mat_apply(edges[n].first, p1, p2);
      }
      res.points[j].zeta = Cx(xi, 0.0);
      fill_point(res.points[j], p1 * boundary_phase(tau, s.M(), xi), p2, s.sigma);
    }
  });
}

void pack_mat(const Mat2& m, double out[8]) {
  out[0] = m.a11.real();
  out[1] = m.a11.imag();
  out[2] = m.a12.real();
  out[3] = m.a12.imag();
  out[4] = m.a21.real();
  out[5] = m.a21.imag();
  out[6] = m.a22.real();
  out[7] = m.a22.imag();
}

std::vector<simd::StepConsts> tes4sb_step_consts(const Signal& s) {
  const std::size_t n_steps = s.M() + 1;
  std::vector<simd::StepConsts> consts(n_steps);
  parallel_for_blocks(n_steps, 1024, [&](std::size_t b, std::size_t e) {
    for (std::size_t n = b; n < e; ++n) {
      const StepWindow w = window_at(s, n);
      const auto [ep, em] = edge_matrices(central_derivatives(w), w.tau, w.sigma);
      const double sg = static_cast<double>(w.sigma);
      auto bexp = [&](double c) {
        return exp_offdiag(c * w.tau * w.q_curr, -sg * c * w.tau * std::conj(w.q_curr));
      };
      const Mat2 b7 = bexp(suzuki::b_edge);
      pack_mat(b7 * em, consts[n].c_in);
      pack_mat(bexp(suzuki::b_mid), consts[n].b_mid);
      pack_mat(bexp(suzuki::b_neg), consts[n].b_neg);
      pack_mat(ep * b7, consts[n].c_out);
    }
  });
  return consts;
}

void sweep_tes4sb(const Signal& s, const EvalGrid& grid, ScatteringResult& res) {
  const double tau = s.tau();
  const std::size_t n = grid.size();
  const auto consts = tes4sb_step_consts(s);

  std::vector<double> zr(n), zi(n), z3r(n), z3i(n), o11r(n), o11i(n), o21r(n), o21i(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double xi = grid.xi[j];
    zr[j] = std::cos(tau * xi / 3.0);
    zi[j] = -std::sin(tau * xi / 3.0);
    z3r[j] = std::cos(tau * xi);
    z3i[j] = -std::sin(tau * xi);
  }

  const auto sweep = simd::kernels().tes4sb_sweep;
  parallel_for_blocks(n, kXiBlock, [&](std::size_t b, std::size_t e) {
    sweep(consts.data(), consts.size(), zr.data() + b, zi.data() + b, z3r.data() + b,
          z3i.data() + b, e - b, o11r.data() + b, o11i.data() + b, o21r.data() + b,
          o21i.data() + b);
  });

  for (std::size_t j = 0; j < n; ++j) {
    res.points[j].zeta = Cx(grid.xi[j], 0.0);
    fill_point(res.points[j], Cx(o11r[j], o11i[j]) * boundary_phase(tau, s.M(), grid.xi[j]),
               Cx(o21r[j], o21i[j]), s.sigma);
  }
}

// Generic per-zeta product for arbitrary complex spectral parameters, with
// periodic rescaling so upper-half-plane sweeps cannot overflow.
void sweep_generic(const Signal& s, const std::vector<Cx>& zetas, Scheme scheme,
                   ScatteringResult& res) {
  const double tau = s.tau();
  parallel_for_blocks(zetas.size(), 4, [&](std::size_t b, std::size_t e) {
    for (std::size_t j = b; j < e; ++j) {
      const Cx zeta = zetas[j];
      Cx p1(1.0), p2(0.0);
      double scale_log = 0.0;
      for (std::size_t n = 0; n <= s.M(); ++n) {
        Mat2 t;
        switch (scheme) {
          case Scheme::bo: t = bo_step(s.samples[n], s.sigma, zeta, tau); break;
          case Scheme::tes4: t = tes4_step(window_at(s, n), zeta); break;
          default: t = tes4sb_step(window_at(s, n), zeta); break;
        }
        mat_apply(t, p1, p2);
        if ((n & 255u) == 255u) {
          const double m = std::max(std::abs(p1), std::abs(p2));
          if (m > 1e150) {
            p1 *= 1e-150;
            p2 *= 1e-150;
            scale_log += std::log(1e150);
          }
        }
      }
      const Cx expo = Cx(0.0, 1.0) * zeta * (tau * static_cast<double>(s.M() + 1));
      res.points[j].zeta = zeta;
      fill_point(res.points[j], p1 * std::exp(expo + scale_log), p2 * std::exp(scale_log),
                 s.sigma);
    }
  });
}

}  // namespace

ScatteringResult run_conventional(const Signal& s, const EvalGrid& grid, Scheme scheme,
                                  const std::vector<Cx>* zeta_override) {
  validate(s);
  if (scheme == Scheme::ftes4sb)
    throw std::invalid_argument("run_conventional: ftes4sb is the fast path; use run_fast");
  if (!zeta_override && grid.size() == 0)
    throw std::invalid_argument("run_conventional: empty grid");
  if (zeta_override && zeta_override->empty())
    throw std::invalid_argument("run_conventional: empty zeta override");

  ScatteringResult res;
  res.scheme = scheme;
  res.M = s.M();
  res.sigma = s.sigma;

  const auto t0 = clock_type::now();
  if (zeta_override) {
    res.N = zeta_override->size();
    res.points.resize(res.N);
    sweep_generic(s, *zeta_override, scheme, res);
  } else {
    res.N = grid.size();
    res.points.resize(res.N);
    switch (scheme) {
      case Scheme::bo: sweep_bo(s, grid, res); break;
      case Scheme::tes4: sweep_tes4(s, grid, res); break;
      default: sweep_tes4sb(s, grid, res); break;
    }
  }
  res.wall_seconds = std::chrono::duration<double>(clock_type::now() - t0).count();
  return res;
}

ScatteringResult run_fast(const Signal& s, const EvalGrid& grid) {
  validate(s);
  if (grid.size() == 0) throw std::invalid_argument("run_fast: empty grid");

  ScatteringResult res;
  res.scheme = Scheme::ftes4sb;
  res.M = s.M();
  res.N = grid.size();
  res.sigma = s.sigma;
  res.points.resize(res.N);

  const auto t0 = clock_type::now();
  const std::size_t n_steps = s.M() + 1;

  EvalGrid g = grid;
  g.tau = s.tau();

  // The product polynomial only matters through its values on the grid, so
  // close the tree in chunks sized to the grid: the top tree levels would
  // cost more than evaluating the chunk polynomials and multiplying the
  // evaluated matrices per point. Each chunk builds its own step windows so
  // the working set stays cache-sized.
  std::size_t chunk_steps = next_pow2((4 * grid.size() + 6) / 7);
  chunk_steps = std::max<std::size_t>(chunk_steps, 64);
  std::vector<Mat2> vals;
  if (n_steps <= 2 * chunk_steps || !g.uniform) {
    std::vector<StepPoly> steps(n_steps);
    parallel_for_blocks(n_steps, 256, [&](std::size_t b, std::size_t e) {
      for (std::size_t n = b; n < e; ++n) steps[n] = step_polynomial(window_at(s, n));
    });
    vals = evaluate_grid(tree_product(steps), g);
  } else {
    const std::size_t n_chunks = (n_steps + chunk_steps - 1) / chunk_steps;
    vals = evaluate_grid_product_fn(n_chunks, 7 * chunk_steps, g, [&](std::size_t c) {
      const std::size_t b = c * chunk_steps;
      const std::size_t e = std::min(n_steps, b + chunk_steps);
      std::vector<StepPoly> steps(e - b);
      for (std::size_t n = b; n < e; ++n) steps[n - b] = step_polynomial(window_at(s, n));
      return tree_product(steps);
    });
  }

  const double tau = s.tau();
  for (std::size_t j = 0; j < res.N; ++j) {
    const double xi = g.xi[j];
    res.points[j].zeta = Cx(xi, 0.0);
    fill_point(res.points[j], vals[j].a11 * boundary_phase(tau, s.M(), xi), vals[j].a21,
               s.sigma);
  }
  res.wall_seconds = std::chrono::duration<double>(clock_type::now() - t0).count();
  return res;
}

EnergyResult continuous_energy(const ScatteringResult& res, int sigma) {
  const double sg = static_cast<double>(sigma);
  EnergyResult out;
  if (res.points.size() < 2) {
    out.valid = false;
    out.value = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  std::vector<double> f(res.points.size());
  for (std::size_t j = 0; j < res.points.size(); ++j) {
    const SpectralPoint& pt = res.points[j];
    const double r2 = std::norm(pt.r);
    if (!pt.r_valid || !std::isfinite(r2) || (sigma == -1 && r2 >= 1.0)) {
      out.valid = false;
      out.value = std::numeric_limits<double>::quiet_NaN();
      return out;
    }
    f[j] = std::log1p(sg * r2);
  }
  double integral = 0.0;
  for (std::size_t j = 0; j + 1 < res.points.size(); ++j) {
    const double dx = res.points[j + 1].zeta.real() - res.points[j].zeta.real();
    integral += 0.5 * dx * (f[j] + f[j + 1]);
  }
  out.value = sg / M_PI * integral;
  return out;
}

}  // namespace zsnft
