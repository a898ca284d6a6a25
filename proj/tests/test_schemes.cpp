#include <doctest.h>

#include <cmath>

#include "test_util.hpp"
#include "zsnft/schemes.hpp"

using namespace zsnft;
using testutil::exp_scaling_squaring;
using testutil::random_cx;

namespace {

StepWindow make_window(Cx qp, Cx qc, Cx qn, double tau, int sigma) {
  return {qp, qc, qn, tau, sigma};
}

StepWindow random_window(std::mt19937_64& rng, double tau, int sigma) {
  return {random_cx(rng), random_cx(rng), random_cx(rng), tau, sigma};
}

// Q_n as a traceless matrix, scaled by tau.
Mat2 tau_q(Cx q, int sigma, Cx zeta, double tau) {
  return Mat2::traceless(Cx(0.0, -1.0) * zeta * tau, tau * q,
                         -double(sigma) * tau * std::conj(q));
}

}  // namespace

TEST_CASE("central_derivatives exactness") {
  const double tau = 0.37;
  const DerivPair c = central_derivatives(make_window(Cx(2, 1), Cx(2, 1), Cx(2, 1), tau, 1));
  CHECK(std::abs(c.q1) == 0.0);
  CHECK(std::abs(c.q2) == 0.0);

  // q(t) = t on the window
  const DerivPair lin = central_derivatives(make_window(-tau, 0.0, tau, tau, 1));
  CHECK(std::abs(lin.q1 - 1.0) < 1e-15);
  CHECK(std::abs(lin.q2) < 1e-15);

  // q(t) = t^2 on the window
  const DerivPair quad =
      central_derivatives(make_window(tau * tau, 0.0, tau * tau, tau, 1));
  CHECK(std::abs(quad.q1) < 1e-15);
  CHECK(std::abs(quad.q2 - 2.0) < 1e-13);
}

TEST_CASE("edge_matrices") {
  const double tau = 0.2;

  const auto [ip, im] = edge_matrices(DerivPair{}, tau, 1);
  CHECK(max_abs_diff(ip, Mat2::identity()) == 0.0);
  CHECK(max_abs_diff(im, Mat2::identity()) == 0.0);

  // real q1 > 0, q2 = 0, sigma = +1: E+ a rotation with E- its inverse
  const auto [ep, em] = edge_matrices(DerivPair{Cx(1.5), Cx(0.0)}, tau, 1);
  CHECK(max_abs_diff(ep * em, Mat2::identity()) < 1e-15);
  CHECK(std::abs(ep.a11.imag()) == 0.0);
  CHECK(std::abs(ep.det() - 1.0) < 1e-15);

  // generic complex derivatives: E+ E- != I once q2 enters, but both unimodular
  const auto [cp, cm] = edge_matrices(DerivPair{Cx(0.4, -1.1), Cx(2.0, 0.9)}, tau, 1);
  CHECK(max_abs_diff(cp * cm, Mat2::identity()) > 1e-10);

  std::mt19937_64 rng(5);
  for (int sigma : {1, -1}) {
    for (int i = 0; i < 20; ++i) {
      const DerivPair d{random_cx(rng, 3.0), random_cx(rng, 3.0)};
      const auto [gp, gm] = edge_matrices(d, tau, sigma);
      CHECK(std::abs(gp.det() - 1.0) < 1e-14);
      CHECK(std::abs(gm.det() - 1.0) < 1e-14);
      // against the generic exponential of the assembled generators
      const double t2 = tau * tau / 12.0, t3 = tau * tau * tau / 48.0;
      const Cx xp = t2 * d.q1 + t3 * d.q2, xm = -t2 * d.q1 + t3 * d.q2;
      const Mat2 gen_p = Mat2::traceless(0.0, xp, -double(sigma) * std::conj(xp));
      const Mat2 gen_m = Mat2::traceless(0.0, xm, -double(sigma) * std::conj(xm));
      CHECK(max_abs_diff(gp, exp_scaling_squaring(gen_p)) < 1e-14);
      CHECK(max_abs_diff(gm, exp_scaling_squaring(gen_m)) < 1e-14);
    }
  }
}

TEST_CASE("bo_step") {
  const double tau = 0.1;
  const Cx zeta(1.3, 0.0);

  const Mat2 free = bo_step(0.0, 1, zeta, tau);
  CHECK(std::abs(free.a11 - std::exp(Cx(0, -1) * zeta * tau)) < 1e-15);
  CHECK(std::abs(free.a22 - std::exp(Cx(0, 1) * zeta * tau)) < 1e-15);
  CHECK(std::abs(free.a12) == 0.0);

  // zeta = 0, real q: rotation by q tau
  const Mat2 rot = bo_step(2.0, 1, 0.0, tau);
  CHECK(std::abs(rot.a11 - std::cos(0.2)) < 1e-15);
  CHECK(std::abs(rot.a12 - std::sin(0.2)) < 1e-15);

  const Mat2 g = bo_step(Cx(1.0), 1, Cx(1.0), tau);
  CHECK(max_abs_diff(g, exp_scaling_squaring(tau_q(Cx(1.0), 1, Cx(1.0), tau))) < 1e-14);
  CHECK(max_abs_diff(g, exp_traceless(tau_q(Cx(1.0), 1, Cx(1.0), tau))) < 1e-15);
}

TEST_CASE("tes4_step reductions") {
  const double tau = 0.05;
  const Cx q(0.8, -0.4), zeta(1.7, 0.0);

  // constant window: derivatives vanish, so tes4 = bo
  const Mat2 t = tes4_step(make_window(q, q, q, tau, 1), zeta);
  CHECK(max_abs_diff(t, bo_step(q, 1, zeta, tau)) < 1e-15);

  const Mat2 f = tes4_step(make_window(0.0, 0.0, 0.0, tau, 1), zeta);
  CHECK(std::abs(f.a11 - std::exp(Cx(0, -1) * zeta * tau)) < 1e-15);
  CHECK(std::abs(f.a21) == 0.0);
}

TEST_CASE("tes4sb_step degenerate reductions") {
  const double tau = 0.1;

  // B = 0: all B-factors are the identity, the A-product telescopes
  const Cx zeta(0.9, 0.0);
  const Mat2 f = tes4sb_step(make_window(0.0, 0.0, 0.0, tau, 1), zeta);
  CHECK(std::abs(f.a11 - std::exp(Cx(0, -1) * zeta * tau)) < 1e-13);
  CHECK(std::abs(f.a22 - std::exp(Cx(0, 1) * zeta * tau)) < 1e-13);
  CHECK(std::abs(f.a12) < 1e-15);
  CHECK(std::abs(f.a21) < 1e-15);

  // A = 0 (zeta = 0): B-weights sum to 1, so a constant window gives exp(tau B)
  for (int sigma : {1, -1}) {
    const Cx q(1.2, 0.7);
    const Mat2 z = tes4sb_step(make_window(q, q, q, tau, sigma), 0.0);
    const Mat2 ref = exp_offdiag(tau * q, -double(sigma) * tau * std::conj(q));
    CHECK(max_abs_diff(z, ref) < 1e-13);
  }
}

TEST_CASE("tes4sb_step has 5th-order local error") {
  // constant window: tes4 is the exact exponential, so the difference is the
  // Suzuki factorization error ~ C tau^5.
  const Cx q(1.0), zeta(1.0);
  auto err = [&](double tau) {
    const StepWindow w = make_window(q, q, q, tau, 1);
    return max_abs_diff(tes4sb_step(w, zeta), exp_traceless(tau_q(q, 1, zeta, tau)));
  };
  const double e1 = err(0.1);
  const double e2 = err(0.05);
  const double e3 = err(0.025);
  CHECK(e1 / e2 > 25.6);  // 2^5 * 0.8
  CHECK(e2 / e3 > 25.6);
  CHECK(e1 < 1e-6);
}

TEST_CASE("step determinants and (D-)unitarity for real xi") {
  std::mt19937_64 rng(17);
  const double tau = 0.21;
  const Mat2 dmat = Mat2::diag(1.0, -1.0);
  for (int sigma : {1, -1}) {
    for (int i = 0; i < 25; ++i) {
      const StepWindow w = random_window(rng, tau, sigma);
      const Cx xi(std::uniform_real_distribution<double>(-20, 20)(rng), 0.0);
      const Mat2 steps[3] = {bo_step(w.q_curr, sigma, xi, tau), tes4_step(w, xi),
                             tes4sb_step(w, xi)};
      for (const Mat2& t : steps) {
        CHECK(std::abs(t.det() - 1.0) < 1e-13);
        if (sigma == 1) {
          CHECK(max_abs_diff(t.adjoint() * t, Mat2::identity()) < 1e-13);
        } else {
          CHECK(max_abs_diff(t.adjoint() * (dmat * t), dmat) < 1e-13);
        }
      }
    }
  }
}

TEST_CASE("step_polynomial") {
  const double tau = 0.15;

  SUBCASE("zero window gives diag(W^5, W^2)") {
    const StepPoly p = step_polynomial(make_window(0.0, 0.0, 0.0, tau, 1));
    CHECK(p.denom_z_exp == 7);
    for (int m = 0; m < 8; ++m) {
      const Mat2& c = p.coeffs[m];
      if (m == 5) {
        CHECK(std::abs(c.a11 - 1.0) < 1e-15);
        CHECK(std::abs(c.a22) == 0.0);
      } else if (m == 2) {
        CHECK(std::abs(c.a22 - 1.0) < 1e-15);
        CHECK(std::abs(c.a11) == 0.0);
      } else {
        CHECK(c.max_abs() == 0.0);
      }
    }
  }

  SUBCASE("W = 1 collapse equals the step at zeta = 0") {
    std::mt19937_64 rng(3);
    const StepWindow w = random_window(rng, tau, -1);
    const StepPoly p = step_polynomial(w);
    Mat2 sum{};
    for (const Mat2& c : p.coeffs) sum = sum + c;
    CHECK(max_abs_diff(sum, tes4sb_step(w, 0.0)) < 1e-14);
  }

  SUBCASE("Horner at W = Z^2 over Z^7 reproduces the step (20 random pairs)") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 20; ++i) {
      const int sigma = (i % 2) ? 1 : -1;
      const StepWindow w = random_window(rng, tau, sigma);
      const StepPoly p = step_polynomial(w);
      const double xi = std::uniform_real_distribution<double>(-20, 20)(rng);
      const Cx z = std::exp(Cx(0, -1) * Cx(xi) * (tau / 3.0));
      const Cx wv = z * z;
      Mat2 acc = p.coeffs[7];
      for (int m = 7; m-- > 0;) acc = wv * acc + p.coeffs[m];
      const Mat2 eval = std::pow(z, -7) * acc;
      CHECK(max_abs_diff(eval, tes4sb_step(w, Cx(xi, 0.0))) < 1e-13);
    }
  }

  SUBCASE("coefficients match interpolation through 8 unit-circle points") {
    // Independent oracle: evaluate the 13-factor product directly at the 8th
    // roots of unity in W and recover the coefficients by inverse DFT.
    std::mt19937_64 rng(43);
    const StepWindow w = random_window(rng, tau, 1);
    const auto [ep, em] = edge_matrices(central_derivatives(w), tau, w.sigma);
    auto bexp = [&](double c) {
      return exp_offdiag(c * tau * w.q_curr, -tau * c * std::conj(w.q_curr));
    };
    const Mat2 b7 = bexp(suzuki::b_edge), b38 = bexp(suzuki::b_mid), bm = bexp(suzuki::b_neg);

    std::array<Mat2, 8> values;
    for (int j = 0; j < 8; ++j) {
      const Cx wv = std::polar(1.0, 2.0 * M_PI * j / 8.0);
      Mat2 t = ep * b7;
      t = t * Mat2::diag(wv, 1.0) * b38;
      t = t * Mat2::diag(1.0, wv) * bm;
      t = t * Mat2::diag(wv * wv * wv, 1.0) * bm;
      t = t * Mat2::diag(1.0, wv) * b38;
      t = t * Mat2::diag(wv, 1.0) * (b7 * em);
      values[j] = t;
    }
    const StepPoly p = step_polynomial(w);
    for (int m = 0; m < 8; ++m) {
      Mat2 c{};
      for (int j = 0; j < 8; ++j) {
        const Cx ph = std::polar(1.0 / 8.0, -2.0 * M_PI * j * m / 8.0);
        c = c + ph * values[j];
      }
      CHECK(max_abs_diff(c, p.coeffs[m]) < 1e-14);
    }
  }
}

TEST_CASE("window_at pads the boundary with zeros") {
  Signal s;
  s.L = 1.0;
  s.sigma = 1;
  s.samples = {Cx(1, 0), Cx(2, 0), Cx(3, 0)};
  CHECK(window_at(s, 0).q_prev == Cx(0.0));
  CHECK(window_at(s, 0).q_next == Cx(2.0));
  CHECK(window_at(s, 2).q_next == Cx(0.0));
  CHECK(window_at(s, 1).q_prev == Cx(1.0));
}
