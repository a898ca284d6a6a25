#include "zsnft/schemes.hpp"

#include <stdexcept>

namespace zsnft {

namespace {

Mat2 b_exponential(double weight, const StepWindow& w) {
  const Cx x = weight * w.tau * w.q_curr;
  const Cx y = -static_cast<double>(w.sigma) * weight * w.tau * std::conj(w.q_curr);
  return exp_offdiag(x, y);
}

Mat2 a_exponential(double weight, Cx zeta, double tau) {
  const Cx e = std::exp(Cx(0.0, -1.0) * zeta * (weight * tau));
  return Mat2::diag(e, 1.0 / e);
}

}  // namespace

DerivPair central_derivatives(const StepWindow& w) {
  if (!(w.tau > 0.0)) throw std::invalid_argument("central_derivatives: tau must be positive");
  DerivPair d;
  d.q1 = (w.q_next - w.q_prev) / (2.0 * w.tau);
  d.q2 = (w.q_next - 2.0 * w.q_curr + w.q_prev) / (w.tau * w.tau);
  return d;
}

std::pair<Mat2, Mat2> edge_matrices(const DerivPair& d, double tau, int sigma) {
  if (!(tau > 0.0)) throw std::invalid_argument("edge_matrices: tau must be positive");
  const double t2 = tau * tau / 12.0;
  const double t3 = tau * tau * tau / 48.0;
  const Cx xp = t2 * d.q1 + t3 * d.q2;
  const Cx xm = -t2 * d.q1 + t3 * d.q2;
  const double s = static_cast<double>(sigma);
  return {exp_offdiag(xp, -s * std::conj(xp)), exp_offdiag(xm, -s * std::conj(xm))};
}

Mat2 bo_step(Cx q, int sigma, Cx zeta, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("bo_step: tau must be positive");
  const Cx d = Cx(0.0, -1.0) * zeta * tau;
  const Cx x = tau * q;
  const Cx y = -static_cast<double>(sigma) * tau * std::conj(q);
  return exp_traceless(Mat2::traceless(d, x, y));
}

Mat2 tes4_step(const StepWindow& w, Cx zeta) {
  const auto [ep, em] = edge_matrices(central_derivatives(w), w.tau, w.sigma);
  return ep * bo_step(w.q_curr, w.sigma, zeta, w.tau) * em;
}

Mat2 tes4sb_step(const StepWindow& w, Cx zeta) {
  const auto [ep, em] = edge_matrices(central_derivatives(w), w.tau, w.sigma);
  const Mat2 b7 = b_exponential(suzuki::b_edge, w);
  const Mat2 b38 = b_exponential(suzuki::b_mid, w);
  const Mat2 bm = b_exponential(suzuki::b_neg, w);
  const Mat2 a13 = a_exponential(1.0 / 3.0, zeta, w.tau);
  const Mat2 am13 = a_exponential(-1.0 / 3.0, zeta, w.tau);
  const Mat2 a1 = a_exponential(1.0, zeta, w.tau);

  Mat2 r = ep * b7;
  r = r * a13;
  r = r * b38;
  r = r * am13;
  r = r * bm;
  r = r * a1;
  r = r * bm;
  r = r * am13;
  r = r * b38;
  r = r * a13;
  r = r * b7;
  r = r * em;
  return r;
}

namespace {

// Right-multiply a degree-bounded polynomial by diag(W^p, W^r): the first
// column shifts up by p, the second by r.
void shift_columns(std::array<Mat2, 8>& c, int& deg, int p, int r) {
  std::array<Mat2, 8> out{};
  for (int m = 0; m <= deg; ++m) {
    out[m + p].a11 += c[m].a11;
    out[m + p].a21 += c[m].a21;
    out[m + r].a12 += c[m].a12;
    out[m + r].a22 += c[m].a22;
  }
  deg += std::max(p, r);
  c = out;
}

void right_multiply(std::array<Mat2, 8>& c, int deg, const Mat2& k) {
  for (int m = 0; m <= deg; ++m) c[m] = c[m] * k;
}

}  // namespace

StepPoly step_polynomial(const StepWindow& w) {
  const auto [ep, em] = edge_matrices(central_derivatives(w), w.tau, w.sigma);
  const Mat2 b7 = b_exponential(suzuki::b_edge, w);
  const Mat2 b38 = b_exponential(suzuki::b_mid, w);
  const Mat2 bm = b_exponential(suzuki::b_neg, w);

  StepPoly p;
  p.denom_z_exp = 7;
  p.coeffs[0] = ep * b7;
  int deg = 0;
  // Monomials diag(W,1), diag(1,W), diag(W^3,1), diag(1,W), diag(W,1)
  // interleaved with the remaining constant factors.
  shift_columns(p.coeffs, deg, 1, 0);
  right_multiply(p.coeffs, deg, b38);
  shift_columns(p.coeffs, deg, 0, 1);
  right_multiply(p.coeffs, deg, bm);
  shift_columns(p.coeffs, deg, 3, 0);
  right_multiply(p.coeffs, deg, bm);
  shift_columns(p.coeffs, deg, 0, 1);
  right_multiply(p.coeffs, deg, b38);
  shift_columns(p.coeffs, deg, 1, 0);
  right_multiply(p.coeffs, deg, b7 * em);
  return p;
}

StepWindow window_at(const Signal& s, std::size_t n) {
  StepWindow w;
  const std::size_t M = s.M();
  w.q_prev = (n == 0) ? Cx(0.0) : s.samples[n - 1];
  w.q_curr = s.samples[n];
  w.q_next = (n == M) ? Cx(0.0) : s.samples[n + 1];
  w.tau = s.tau();
  w.sigma = s.sigma;
  return w;
}

}  // namespace zsnft
