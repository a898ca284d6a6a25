#include "zsnft/matpoly.hpp"

#include <cmath>
#include <stdexcept>

#include "zsnft/fft.hpp"
#include "zsnft/parallel.hpp"
#include "zsnft/phase.hpp"
#include "zsnft/simd/kernels.hpp"

namespace zsnft {

namespace {

constexpr std::size_t kNaiveDegreeLimit = 32;  // FFT path at/above this output degree
constexpr double kTrimThreshold = 1e-300;      // exact-zero trimming only

void trim(MatPoly& p) {
  while (p.coeffs.size() > 1 && p.coeffs.back().max_abs() < kTrimThreshold)
    p.coeffs.pop_back();
}

MatPoly mul_naive(const MatPoly& p, const MatPoly& q) {
  const std::size_t dp = p.coeffs.size() - 1, dq = q.coeffs.size() - 1;
  MatPoly r;
  r.denom_z_exp = p.denom_z_exp + q.denom_z_exp;
  r.coeffs.resize(dp + dq + 1);
  for (std::size_t m = 0; m <= dp + dq; ++m) {
    double acc[8] = {};
    const std::size_t k0 = (m > dq) ? m - dq : 0;
    const std::size_t k1 = std::min(dp, m);
    for (std::size_t k = k0; k <= k1; ++k) {
      const Mat2& a = p.coeffs[k];
      const Mat2& b = q.coeffs[m - k];
      auto mac = [&](int slot, Cx x, Cx y) {
        acc[2 * slot] += x.real() * y.real() - x.imag() * y.imag();
        acc[2 * slot + 1] += x.real() * y.imag() + x.imag() * y.real();
      };
      mac(0, a.a11, b.a11);
      mac(0, a.a12, b.a21);
      mac(1, a.a11, b.a12);
      mac(1, a.a12, b.a22);
      mac(2, a.a21, b.a11);
      mac(2, a.a22, b.a21);
      mac(3, a.a21, b.a12);
      mac(3, a.a22, b.a22);
    }
    r.coeffs[m] = {Cx(acc[0], acc[1]), Cx(acc[2], acc[3]), Cx(acc[4], acc[5]),
                   Cx(acc[6], acc[7])};
  }
  return r;
}

// Per-thread transform scratch; tree levels reuse it across thousands of
// pair products.
struct ConvScratch {
  std::vector<Cx> pe[4], qe[4], re[4];
};

const Fft& cached_plan(std::size_t f) {
  thread_local std::size_t size = 0;
  thread_local const Fft* plan = nullptr;
  if (size != f) {
    plan = &fft_plan(f);
    size = f;
  }
  return *plan;
}

MatPoly mul_fft(const MatPoly& p, const MatPoly& q) {
  const std::size_t out_len = p.coeffs.size() + q.coeffs.size() - 1;
  const std::size_t f = next_pow2(out_len);
  const Fft& plan = cached_plan(f);

  thread_local ConvScratch scratch;
  auto load_entries = [f](const MatPoly& m, std::vector<Cx> (&e)[4]) {
    for (int k = 0; k < 4; ++k) {
      e[k].assign(f, Cx(0.0));
    }
    for (std::size_t k = 0; k < m.coeffs.size(); ++k) {
      e[0][k] = m.coeffs[k].a11;
      e[1][k] = m.coeffs[k].a12;
      e[2][k] = m.coeffs[k].a21;
      e[3][k] = m.coeffs[k].a22;
    }
  };
  load_entries(p, scratch.pe);
  load_entries(q, scratch.qe);
  for (auto& v : scratch.pe) plan.forward_conv(v.data());
  for (auto& v : scratch.qe) plan.forward_conv(v.data());

  for (auto& v : scratch.re) v.resize(f);
  const Cx* pp[4] = {scratch.pe[0].data(), scratch.pe[1].data(), scratch.pe[2].data(),
                     scratch.pe[3].data()};
  const Cx* qq[4] = {scratch.qe[0].data(), scratch.qe[1].data(), scratch.qe[2].data(),
                     scratch.qe[3].data()};
  Cx* rr[4] = {scratch.re[0].data(), scratch.re[1].data(), scratch.re[2].data(),
               scratch.re[3].data()};
  simd::kernels().pointwise_mat2_mul(pp, qq, rr, f);

  for (auto& v : scratch.re) plan.inverse_conv(v.data());

  MatPoly r;
  r.denom_z_exp = p.denom_z_exp + q.denom_z_exp;
  r.coeffs.resize(out_len);
  for (std::size_t k = 0; k < out_len; ++k)
    r.coeffs[k] = {scratch.re[0][k], scratch.re[1][k], scratch.re[2][k], scratch.re[3][k]};
  return r;
}

}  // namespace

MatPoly matpoly_from_step(const StepPoly& p) {
  MatPoly m;
  m.denom_z_exp = p.denom_z_exp;
  m.coeffs.assign(p.coeffs.begin(), p.coeffs.end());
  trim(m);
  return m;
}

MatPoly matpoly_mul(const MatPoly& p, const MatPoly& q) {
  if (p.coeffs.empty() || q.coeffs.empty())
    throw std::invalid_argument("matpoly_mul: empty operand");
  MatPoly r = (p.degree() + q.degree() >= kNaiveDegreeLimit) ? mul_fft(p, q)
                                                             : mul_naive(p, q);
  trim(r);
  return r;
}

MatPoly tree_product(const std::vector<StepPoly>& steps) {
  if (steps.empty()) throw std::invalid_argument("tree_product: empty step list");

  std::vector<MatPoly> level(steps.size());
  for (std::size_t i = 0; i < steps.size(); ++i) level[i] = matpoly_from_step(steps[i]);

  while (level.size() > 1) {
    const std::size_t pairs = level.size() / 2;
    std::vector<MatPoly> next(pairs + (level.size() & 1));
    parallel_for(pairs, [&](std::size_t i) {
      // Later-in-time factor on the left.
      next[i] = matpoly_mul(level[2 * i + 1], level[2 * i]);
    });
    if (level.size() & 1) next.back() = std::move(level.back());
    level = std::move(next);
  }
  return std::move(level.front());
}

Mat2 evaluate_horner(const MatPoly& p, Cx zeta, double tau) {
  if (p.coeffs.empty()) throw std::invalid_argument("evaluate_horner: empty polynomial");
  const std::size_t deg = p.degree();

  if (zeta.imag() == 0.0) {
    const double xi = zeta.real();
    const Cx w = std::polar(1.0, -2.0 * tau * xi / 3.0);
    Mat2 acc = p.coeffs[deg];
    for (std::size_t k = deg; k-- > 0;) acc = w * acc + p.coeffs[k];
    // Z^{-denom} = e^{i tau xi denom / 3}
    const DD theta = ddmath::mul_d(ddmath::prod(tau, xi), 1.0 / 3.0);
    return unit_phase(theta, static_cast<double>(p.denom_z_exp)) * acc;
  }

  // Complex zeta: rescale the accumulator as it grows and fold the scale and
  // the Z^{-denom} factor into one exponent at the end.
  const Cx z = std::exp(Cx(0.0, -1.0) * zeta * (tau / 3.0));
  const Cx w = z * z;
  Mat2 acc = p.coeffs[deg];
  double scale_log = 0.0;
  std::size_t since_check = 0;
  for (std::size_t k = deg; k-- > 0;) {
    acc = w * acc + p.coeffs[k];
    if (++since_check == 64) {
      since_check = 0;
      const double m = acc.max_abs();
      if (m > 1e200) {
        acc = Cx(1e-200) * acc;
        scale_log += std::log(1e200);
      } else if (m < 1e-200 && m > 0.0) {
        acc = Cx(1e200) * acc;
        scale_log -= std::log(1e200);
      }
    }
  }
  // Z^{-denom} = exp(i tau zeta denom / 3)
  const Cx expo = Cx(0.0, 1.0) * zeta * (tau * static_cast<double>(p.denom_z_exp) / 3.0) +
                  scale_log;
  return std::exp(expo) * acc;
}

namespace {

// Shared Bluestein machinery for one (grid, max degree) pair: the chirp
// tables and the transformed kernel are reused across matrix entries and
// across factor polynomials.
struct CztContext {
  std::size_t f{0};
  const Fft* plan{nullptr};
  std::size_t n_points{0};
  std::size_t deg_max{0};
  std::vector<Cx> u_phase;   // e^{i theta0 k} e^{i dtheta k^2/2}, k <= deg_max
  std::vector<Cx> v_hat;     // FFT of the chirp kernel
  std::vector<Cx> post;      // e^{i dtheta j^2/2}, j < n_points

  CztContext(const EvalGrid& grid, std::size_t deg_max_) {
    n_points = grid.size();
    deg_max = deg_max_;
    const double xi0 = grid.xi.front();
    const double dxi = grid.xi[1] - grid.xi[0];
    const DD theta0 = ddmath::mul_d(ddmath::prod(grid.tau, xi0), -2.0 / 3.0);
    const DD dtheta = ddmath::mul_d(ddmath::prod(grid.tau, dxi), -2.0 / 3.0);
    const DD half = ddmath::mul_d(dtheta, 0.5);
    const DD neg_half = ddmath::mul_d(dtheta, -0.5);

    f = next_pow2(deg_max + n_points);
    plan = &fft_plan(f);

    u_phase.resize(deg_max + 1);
    for (std::size_t k = 0; k <= deg_max; ++k) {
      const double kd = static_cast<double>(k);
      u_phase[k] = unit_phase(theta0, kd) * unit_phase(half, kd * kd);
    }
    post.resize(n_points);
    for (std::size_t j = 0; j < n_points; ++j) {
      const double jd = static_cast<double>(j);
      post[j] = unit_phase(half, jd * jd);
    }
    v_hat.assign(f, Cx(0.0));
    const std::size_t m_max = std::max(deg_max, n_points - 1);
    for (std::size_t m = 0; m <= m_max; ++m) {
      const double md = static_cast<double>(m);
      const Cx val = unit_phase(neg_half, md * md);
      if (m < n_points) v_hat[m] = val;
      if (m > 0 && m <= deg_max) v_hat[f - m] = val;
    }
    plan->forward_conv(v_hat.data());
  }

  // One scalar polynomial (ascending coeffs, degree <= deg_max) -> values at
  // all grid points.
  void run(const Cx* coeffs, std::size_t deg, Cx* out) const {
    thread_local std::vector<Cx> work;
    work.assign(f, Cx(0.0));
    for (std::size_t k = 0; k <= deg; ++k) work[k] = coeffs[k] * u_phase[k];
    plan->forward_conv(work.data());
    for (std::size_t i = 0; i < f; ++i) work[i] *= v_hat[i];
    plan->inverse_conv(work.data());
    for (std::size_t j = 0; j < n_points; ++j) out[j] = work[j] * post[j];
  }
};

// Per-point denominator factor Z^{-denom} = e^{i (tau denom / 3) xi_j}.
void apply_denominator(std::vector<Mat2>& vals, const EvalGrid& grid, long denom) {
  const DD theta =
      ddmath::mul_d(ddmath::prod(grid.tau, static_cast<double>(denom)), 1.0 / 3.0);
  for (std::size_t j = 0; j < vals.size(); ++j)
    vals[j] = unit_phase(theta, grid.xi[j]) * vals[j];
}

std::vector<Mat2> evaluate_uniform(const MatPoly& p, const EvalGrid& grid,
                                   const CztContext& ctx) {
  const std::size_t n = grid.size();
  const std::size_t deg = p.degree();
  std::vector<std::vector<Cx>> entry(4, std::vector<Cx>(deg + 1));
  for (std::size_t k = 0; k <= deg; ++k) {
    entry[0][k] = p.coeffs[k].a11;
    entry[1][k] = p.coeffs[k].a12;
    entry[2][k] = p.coeffs[k].a21;
    entry[3][k] = p.coeffs[k].a22;
  }
  std::vector<std::vector<Cx>> vals(4, std::vector<Cx>(n));
  parallel_for(4, [&](std::size_t e) { ctx.run(entry[e].data(), deg, vals[e].data()); });

  std::vector<Mat2> out(n);
  for (std::size_t j = 0; j < n; ++j)
    out[j] = {vals[0][j], vals[1][j], vals[2][j], vals[3][j]};
  apply_denominator(out, grid, p.denom_z_exp);
  return out;
}

}  // namespace

std::vector<Mat2> evaluate_grid(const MatPoly& p, const EvalGrid& grid) {
  if (grid.size() == 0) throw std::invalid_argument("evaluate_grid: empty grid");
  const std::size_t n = grid.size();

  if (!grid.uniform || n < 2) {
    std::vector<Mat2> out(n);
    parallel_for_blocks(n, 16, [&](std::size_t b, std::size_t e) {
      for (std::size_t j = b; j < e; ++j)
        out[j] = evaluate_horner(p, Cx(grid.xi[j], 0.0), grid.tau);
    });
    return out;
  }
  const CztContext ctx(grid, p.degree());
  return evaluate_uniform(p, grid, ctx);
}

std::vector<Mat2> evaluate_grid_product_fn(std::size_t n_factors, std::size_t deg_max,
                                           const EvalGrid& grid,
                                           const std::function<MatPoly(std::size_t)>& factor) {
  if (n_factors == 0) throw std::invalid_argument("evaluate_grid_product: empty list");
  if (grid.size() == 0) throw std::invalid_argument("evaluate_grid_product: empty grid");
  const std::size_t n = grid.size();

  if (!grid.uniform || n < 2) {
    std::vector<MatPoly> factors(n_factors);
    parallel_for(n_factors, [&](std::size_t c) { factors[c] = factor(c); });
    std::vector<Mat2> out(n);
    parallel_for_blocks(n, 16, [&](std::size_t b, std::size_t e) {
      for (std::size_t j = b; j < e; ++j) {
        Mat2 acc = evaluate_horner(factors[0], Cx(grid.xi[j], 0.0), grid.tau);
        for (std::size_t c = 1; c < n_factors; ++c)
          acc = evaluate_horner(factors[c], Cx(grid.xi[j], 0.0), grid.tau) * acc;
        out[j] = acc;
      }
    });
    return out;
  }

  const CztContext ctx(grid, deg_max);
  std::vector<std::vector<Cx>> vals(4 * n_factors);
  std::vector<long> denoms(n_factors, 0);

  parallel_for(n_factors, [&](std::size_t c) {
    const MatPoly p = factor(c);
    if (p.degree() > deg_max)
      throw std::invalid_argument("evaluate_grid_product: factor exceeds deg_max");
    denoms[c] = p.denom_z_exp;
    const std::size_t deg = p.degree();
    thread_local std::vector<Cx> entry;
    entry.resize(deg + 1);
    for (int e = 0; e < 4; ++e) {
      for (std::size_t k = 0; k <= deg; ++k) {
        const Mat2& m = p.coeffs[k];
        entry[k] = (e == 0) ? m.a11 : (e == 1) ? m.a12 : (e == 2) ? m.a21 : m.a22;
      }
      vals[4 * c + e].resize(n);
      ctx.run(entry.data(), deg, vals[4 * c + e].data());
    }
  });

  std::vector<Mat2> out(n);
  parallel_for_blocks(n, 256, [&](std::size_t b, std::size_t e) {
    for (std::size_t j = b; j < e; ++j) {
      Mat2 acc{vals[0][j], vals[1][j], vals[2][j], vals[3][j]};
      for (std::size_t c = 1; c < n_factors; ++c)
        acc = Mat2{vals[4 * c][j], vals[4 * c + 1][j], vals[4 * c + 2][j],
                   vals[4 * c + 3][j]} *
              acc;
      out[j] = acc;
    }
  });
  long denom_total = 0;
  for (long d : denoms) denom_total += d;
  apply_denominator(out, grid, denom_total);
  return out;
}

std::vector<Mat2> evaluate_grid_product(const std::vector<MatPoly>& factors,
                                        const EvalGrid& grid) {
  if (factors.empty()) throw std::invalid_argument("evaluate_grid_product: empty list");
  std::size_t deg_max = 0;
  for (const MatPoly& p : factors) deg_max = std::max(deg_max, p.degree());
  return evaluate_grid_product_fn(factors.size(), deg_max, grid,
                                  [&](std::size_t c) { return factors[c]; });
}

}  // namespace zsnft
