#include <doctest.h>

#include <cmath>

#include "test_util.hpp"
#include "zsnft/fft.hpp"
#include "zsnft/matpoly.hpp"
#include "zsnft/schemes.hpp"

using namespace zsnft;
using testutil::random_cx;

namespace {

// Independent convolution oracle: plain double loop.
MatPoly naive_mul(const MatPoly& p, const MatPoly& q) {
  MatPoly r;
  r.denom_z_exp = p.denom_z_exp + q.denom_z_exp;
  r.coeffs.assign(p.coeffs.size() + q.coeffs.size() - 1, Mat2{});
  for (std::size_t i = 0; i < p.coeffs.size(); ++i)
    for (std::size_t j = 0; j < q.coeffs.size(); ++j)
      r.coeffs[i + j] = r.coeffs[i + j] + p.coeffs[i] * q.coeffs[j];
  return r;
}

MatPoly random_poly(std::mt19937_64& rng, std::size_t deg, long denom = 0) {
  MatPoly p;
  p.denom_z_exp = denom;
  p.coeffs.resize(deg + 1);
  for (Mat2& c : p.coeffs)
    c = {random_cx(rng), random_cx(rng), random_cx(rng), random_cx(rng)};
  return p;
}

double rel_dev(const MatPoly& a, const MatPoly& b) {
  REQUIRE(a.coeffs.size() == b.coeffs.size());
  double scale = 0.0, dev = 0.0;
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    scale = std::max(scale, b.coeffs[i].max_abs());
    dev = std::max(dev, max_abs_diff(a.coeffs[i], b.coeffs[i]));
  }
  return dev / std::max(scale, 1e-300);
}

StepWindow random_window(std::mt19937_64& rng, double tau, int sigma) {
  return {random_cx(rng), random_cx(rng), random_cx(rng), tau, sigma};
}

Signal random_smooth_signal(std::mt19937_64& rng, std::size_t M, double L, int sigma,
                            double amp = 1.0) {
  // Decaying envelope times a few random Fourier modes; smooth and small at
  // the boundary.
  Signal s;
  s.L = L;
  s.sigma = sigma;
  s.samples.resize(M + 1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double c1 = u(rng), c2 = u(rng), c3 = u(rng), c4 = u(rng);
  const double tau = 2.0 * L / double(M);
  for (std::size_t n = 0; n <= M; ++n) {
    const double t = -L + tau * double(n);
    const double env = amp * std::exp(-t * t / (0.08 * L * L));
    s.samples[n] = env * Cx(c1 * std::cos(2.0 * c2 * t) + 0.4 * c3, c4 * std::sin(1.7 * c1 * t));
  }
  return s;
}

}  // namespace

TEST_CASE("fft roundtrip and naive DFT check") {
  std::mt19937_64 rng(51);
  const std::size_t n = 64;
  std::vector<Cx> x(n);
  for (Cx& v : x) v = random_cx(rng);

  std::vector<Cx> y = x;
  const Fft& plan = fft_plan(n);
  plan.forward(y.data());

  // naive DFT
  for (std::size_t k = 0; k < n; ++k) {
    Cx s(0.0);
    for (std::size_t j = 0; j < n; ++j)
      s += x[j] * std::polar(1.0, -2.0 * M_PI * double(j * k) / double(n));
    CHECK(std::abs(s - y[k]) < 1e-12);
  }

  plan.inverse(y.data());
  for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(y[j] - x[j]) < 1e-13);
}

TEST_CASE("conv transforms: unordered roundtrip and convolution identity") {
  std::mt19937_64 rng(52);
  for (const std::size_t n : {std::size_t{8}, std::size_t{64}, std::size_t{1024},
                              std::size_t{2048}}) {
    std::vector<Cx> x(n), y(n);
    for (Cx& v : x) v = random_cx(rng);
    for (Cx& v : y) v = random_cx(rng);
    const Fft& plan = fft_plan(n);

    // roundtrip in natural order
    std::vector<Cx> r = x;
    plan.forward_conv(r.data());
    plan.inverse_conv(r.data());
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(r[i] - x[i]) < 1e-13);

    // circular convolution against the direct sum (first 8 slots)
    std::vector<Cx> fx = x, fy = y;
    plan.forward_conv(fx.data());
    plan.forward_conv(fy.data());
    for (std::size_t i = 0; i < n; ++i) fx[i] *= fy[i];
    plan.inverse_conv(fx.data());
    for (std::size_t j = 0; j < std::min<std::size_t>(n, 8); ++j) {
      Cx want(0.0);
      for (std::size_t k = 0; k < n; ++k) want += x[k] * y[(j + n - k) % n];
      CHECK(std::abs(fx[j] - want) < 1e-10);
    }
  }
}

TEST_CASE("evaluate_grid_product equals evaluating the full product") {
  std::mt19937_64 rng(54);
  const Signal s = random_smooth_signal(rng, 400, 8.0, -1);
  std::vector<StepPoly> steps;
  for (std::size_t n = 0; n <= s.M(); ++n) steps.push_back(step_polynomial(window_at(s, n)));

  std::vector<MatPoly> chunks;
  for (std::size_t b = 0; b < steps.size(); b += 96)
    chunks.push_back(
        tree_product({steps.begin() + b, steps.begin() + std::min(steps.size(), b + 96)}));
  const MatPoly total = tree_product(steps);

  const EvalGrid g = make_uniform_grid(-12.0, 12.0, 201, s.tau());
  const auto full = evaluate_grid(total, g);
  const auto split = evaluate_grid_product(chunks, g);
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double scale = std::max(1.0, full[j].max_abs());
    CHECK(max_abs_diff(split[j], full[j]) / scale < 1e-10);
  }
}

TEST_CASE("evaluate_grid_product_fn propagates worker errors") {
  std::mt19937_64 rng(55);
  const EvalGrid g = make_uniform_grid(-2.0, 2.0, 9, 0.25);
  const StepWindow w{random_cx(rng), random_cx(rng), random_cx(rng), 0.25, 1};
  const MatPoly p = matpoly_from_step(step_polynomial(w));
  CHECK_THROWS_AS(
      evaluate_grid_product_fn(6, 3, g, [&](std::size_t) { return p; }),
      std::invalid_argument);
}

TEST_CASE("czt matches direct evaluation") {
  std::mt19937_64 rng(53);
  std::vector<Cx> c(37);
  for (Cx& v : c) v = random_cx(rng);
  const double th0 = 0.123, dth = -0.0371;
  const auto vals = czt_unit_circle(c, 21, DD{th0, 0.0}, DD{dth, 0.0});
  for (std::size_t j = 0; j < 21; ++j) {
    Cx s(0.0);
    for (std::size_t k = 0; k < c.size(); ++k)
      s += c[k] * std::polar(1.0, (th0 + dth * double(j)) * double(k));
    CHECK(std::abs(s - vals[j]) < 1e-12);
  }
}

TEST_CASE("matpoly_mul identity and monomial cases") {
  std::mt19937_64 rng(57);
  const MatPoly q = random_poly(rng, 7, 7);

  MatPoly ident;
  ident.coeffs = {Mat2::identity()};
  ident.denom_z_exp = 3;
  const MatPoly r = matpoly_mul(ident, q);
  CHECK(r.denom_z_exp == 10);
  CHECK(rel_dev(r, q) == 0.0);

  // (diag(W^5, W^2)/Z^7)^2 = diag(W^10, W^4)/Z^14
  const StepPoly zero_step = step_polynomial({0.0, 0.0, 0.0, 0.1, 1});
  const MatPoly z = matpoly_from_step(zero_step);
  const MatPoly z2 = matpoly_mul(z, z);
  CHECK(z2.denom_z_exp == 14);
  CHECK(z2.degree() == 10);
  for (std::size_t m = 0; m <= 10; ++m) {
    const Mat2& c = z2.coeffs[m];
    CHECK(std::abs(c.a11 - (m == 10 ? 1.0 : 0.0)) < 1e-15);
    CHECK(std::abs(c.a22 - (m == 4 ? 1.0 : 0.0)) < 1e-15);
  }
}

TEST_CASE("matpoly_mul equals the naive convolution") {
  std::mt19937_64 rng(59);

  SUBCASE("two degree-7 step polynomials") {
    const MatPoly a = matpoly_from_step(step_polynomial(random_window(rng, 0.2, 1)));
    const MatPoly b = matpoly_from_step(step_polynomial(random_window(rng, 0.2, 1)));
    CHECK(rel_dev(matpoly_mul(a, b), naive_mul(a, b)) < 1e-12);
  }

  SUBCASE("FFT path against naive across the threshold") {
    for (const std::size_t deg : {std::size_t{15}, std::size_t{16}, std::size_t{100}}) {
      const MatPoly a = random_poly(rng, deg);
      const MatPoly b = random_poly(rng, deg + 3);
      CHECK(rel_dev(matpoly_mul(a, b), naive_mul(a, b)) < 1e-12);
    }
  }

  SUBCASE("large random product") {
    const MatPoly a = random_poly(rng, 2048);
    const MatPoly b = random_poly(rng, 2100);
    CHECK(rel_dev(matpoly_mul(a, b), naive_mul(a, b)) < 1e-12);
  }
}

TEST_CASE("tree_product") {
  std::mt19937_64 rng(61);
  const double tau = 0.11;

  SUBCASE("singleton") {
    const StepPoly s = step_polynomial(random_window(rng, tau, 1));
    const MatPoly t = tree_product({s});
    CHECK(t.denom_z_exp == 7);
    for (std::size_t m = 0; m <= t.degree(); ++m)
      CHECK(max_abs_diff(t.coeffs[m], s.coeffs[m]) == 0.0);
  }

  SUBCASE("zero potential collapses to diag(W^{5(M+1)}, W^{2(M+1)})") {
    const std::size_t n_steps = 8;
    std::vector<StepPoly> steps(n_steps, step_polynomial({0.0, 0.0, 0.0, tau, 1}));
    const MatPoly t = tree_product(steps);
    CHECK(t.denom_z_exp == 7 * n_steps);
    CHECK(t.degree() == 5 * n_steps);
    for (std::size_t m = 0; m <= t.degree(); ++m) {
      CHECK(std::abs(t.coeffs[m].a11 - (m == 5 * n_steps ? 1.0 : 0.0)) < 1e-14);
      CHECK(std::abs(t.coeffs[m].a22 - (m == 2 * n_steps ? 1.0 : 0.0)) < 1e-14);
      CHECK(std::abs(t.coeffs[m].a12) < 1e-15);
      CHECK(std::abs(t.coeffs[m].a21) < 1e-15);
    }
  }

  SUBCASE("matches the sequential product for M+1 = 4") {
    std::vector<StepPoly> steps;
    for (int i = 0; i < 4; ++i) steps.push_back(step_polynomial(random_window(rng, tau, -1)));
    const MatPoly t = tree_product(steps);
    MatPoly seq = matpoly_from_step(steps[0]);
    for (int i = 1; i < 4; ++i) seq = naive_mul(matpoly_from_step(steps[i]), seq);
    CHECK(t.denom_z_exp == 28);
    CHECK(rel_dev(t, seq) < 1e-13);
  }

  CHECK_THROWS_AS(tree_product({}), std::invalid_argument);
}

TEST_CASE("evaluate_horner") {
  std::mt19937_64 rng(67);
  const double tau = 0.13;

  SUBCASE("constant identity polynomial") {
    MatPoly p;
    p.coeffs = {Mat2::identity()};
    p.denom_z_exp = 0;
    const Mat2 v = evaluate_horner(p, Cx(3.7, 0.0), tau);
    CHECK(max_abs_diff(v, Mat2::identity()) < 1e-15);
    const Mat2 vc = evaluate_horner(p, Cx(0.4, 0.8), tau);
    CHECK(max_abs_diff(vc, Mat2::identity()) < 1e-14);
  }

  SUBCASE("free single step evaluates to diag(e^{-i xi tau}, e^{i xi tau})") {
    const MatPoly p = matpoly_from_step(step_polynomial({0.0, 0.0, 0.0, tau, 1}));
    const double xi = -4.3;
    const Mat2 v = evaluate_horner(p, Cx(xi, 0.0), tau);
    CHECK(std::abs(v.a11 - std::polar(1.0, -xi * tau)) < 1e-14);
    CHECK(std::abs(v.a22 - std::polar(1.0, xi * tau)) < 1e-14);
  }

  SUBCASE("reproduces the direct 13-factor product at random points") {
    for (int i = 0; i < 10; ++i) {
      const int sigma = (i % 2) ? 1 : -1;
      const StepWindow w = random_window(rng, tau, sigma);
      const MatPoly p = matpoly_from_step(step_polynomial(w));
      const double xi = std::uniform_real_distribution<double>(-20, 20)(rng);
      CHECK(max_abs_diff(evaluate_horner(p, Cx(xi, 0.0), tau), tes4sb_step(w, Cx(xi, 0.0))) <
            1e-13);
    }
  }

  SUBCASE("complex zeta path matches the direct product") {
    for (int i = 0; i < 5; ++i) {
      const StepWindow w = random_window(rng, tau, 1);
      const MatPoly p = matpoly_from_step(step_polynomial(w));
      const Cx zeta(std::uniform_real_distribution<double>(-2, 2)(rng), 0.6);
      CHECK(max_abs_diff(evaluate_horner(p, zeta, tau), tes4sb_step(w, zeta)) < 1e-13);
    }
  }
}

TEST_CASE("evaluate_grid") {
  std::mt19937_64 rng(71);

  SUBCASE("single-point grid is one Horner evaluation") {
    const Signal s = random_smooth_signal(rng, 16, 4.0, 1);
    std::vector<StepPoly> steps;
    for (std::size_t n = 0; n <= s.M(); ++n) steps.push_back(step_polynomial(window_at(s, n)));
    const MatPoly t = tree_product(steps);
    EvalGrid g;
    g.xi = {1.234};
    g.uniform = false;
    g.tau = s.tau();
    const auto vals = evaluate_grid(t, g);
    CHECK(vals.size() == 1);
    CHECK(max_abs_diff(vals[0], evaluate_horner(t, Cx(1.234, 0.0), s.tau())) == 0.0);
  }

  SUBCASE("free polynomial gives pure phases per point") {
    const double tau = 0.25;
    const std::size_t n_steps = 9;
    std::vector<StepPoly> steps(n_steps, step_polynomial({0.0, 0.0, 0.0, tau, 1}));
    const MatPoly t = tree_product(steps);
    const EvalGrid g = make_uniform_grid(-5.0, 5.0, 33, tau);
    const auto vals = evaluate_grid(t, g);
    for (std::size_t j = 0; j < g.size(); ++j) {
      CHECK(std::abs(vals[j].a11 - std::polar(1.0, -g.xi[j] * tau * n_steps)) < 1e-12);
      CHECK(std::abs(vals[j].a22 - std::polar(1.0, g.xi[j] * tau * n_steps)) < 1e-12);
    }
  }

  SUBCASE("chirp-Z equals Horner on a uniform grid, M = 255, N = 1025") {
    const Signal s = random_smooth_signal(rng, 255, 8.0, 1);
    std::vector<StepPoly> steps;
    for (std::size_t n = 0; n <= s.M(); ++n) steps.push_back(step_polynomial(window_at(s, n)));
    const MatPoly t = tree_product(steps);
    const EvalGrid g = make_uniform_grid(-20.0, 20.0, 1025, s.tau());
    const auto vals = evaluate_grid(t, g);
    double worst = 0.0;
    for (std::size_t j = 0; j < g.size(); j += 7) {
      const Mat2 h = evaluate_horner(t, Cx(g.xi[j], 0.0), s.tau());
      worst = std::max(worst, max_abs_diff(vals[j], h) / std::max(1.0, h.max_abs()));
    }
    CHECK(worst < 1e-10);
  }

  SUBCASE("unimodularity of the evaluated tree product") {
    const Signal s = random_smooth_signal(rng, 255, 8.0, 1);
    std::vector<StepPoly> steps;
    for (std::size_t n = 0; n <= s.M(); ++n) steps.push_back(step_polynomial(window_at(s, n)));
    const MatPoly t = tree_product(steps);
    const EvalGrid g = make_uniform_grid(-20.0, 20.0, 257, s.tau());
    for (const Mat2& v : evaluate_grid(t, g)) CHECK(std::abs(v.det() - 1.0) < 1e-9);
  }

  SUBCASE("tree pairing vs sequential pairing at evaluation points") {
    const Signal s = random_smooth_signal(rng, 63, 6.0, -1);
    std::vector<StepPoly> steps;
    for (std::size_t n = 0; n <= s.M(); ++n) steps.push_back(step_polynomial(window_at(s, n)));
    const MatPoly t = tree_product(steps);
    MatPoly seq = matpoly_from_step(steps[0]);
    for (std::size_t n = 1; n < steps.size(); ++n)
      seq = matpoly_mul(matpoly_from_step(steps[n]), seq);
    const EvalGrid g = make_uniform_grid(-10.0, 10.0, 101, s.tau());
    const auto vt = evaluate_grid(t, g);
    const auto vs = evaluate_grid(seq, g);
    for (std::size_t j = 0; j < g.size(); ++j) {
      const double scale = std::max(1.0, vs[j].max_abs());
      CHECK(max_abs_diff(vt[j], vs[j]) / scale < 1e-10);
    }
  }
}
