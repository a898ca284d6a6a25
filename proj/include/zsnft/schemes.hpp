#pragma once

#include <array>
#include <utility>

#include "zsnft/mat2.hpp"
#include "zsnft/signal.hpp"

namespace zsnft {

/// Three consecutive potential samples around t_n plus the grid step and
/// dispersion sign — everything a one-step transfer matrix needs.
struct StepWindow {
  Cx q_prev{}, q_curr{}, q_next{};
  double tau{0.0};
  int sigma{+1};
};

/// Second-order central estimates of q' and q'' at the window center.
struct DerivPair {
  Cx q1{};  // (q_next - q_prev) / (2 tau)
  Cx q2{};  // (q_next - 2 q_curr + q_prev) / tau^2
};

/// One step of the factorized scheme written as a degree-<=7 polynomial in
/// W = Z^2, Z = exp(-i tau zeta / 3), with the common Z^7 denominator pulled
/// out: T = S(W) / Z^7.
struct StepPoly {
  std::array<Mat2, 8> coeffs{};  // W^0 .. W^7
  int denom_z_exp{7};
};

/// Suzuki weights of the 11-exponential 4th-order factorization of
/// exp(tau(A+B)); B-factors at the edges.
namespace suzuki {
inline constexpr double b_edge = 7.0 / 48.0;
inline constexpr double b_mid = 3.0 / 8.0;
inline constexpr double b_neg = -1.0 / 48.0;
}  // namespace suzuki

DerivPair central_derivatives(const StepWindow& w);

/// Edge factors of the triple-exponential step,
///   E± = exp(±(tau^2/12) Q' + (tau^3/48) Q''),
/// where only the off-diagonal (B) part of Q depends on t. Both factors are
/// zeta-independent and unimodular.
std::pair<Mat2, Mat2> edge_matrices(const DerivPair& d, double tau, int sigma);

/// Boffetta-Osborne one-step matrix exp(tau Q_n), Q_n = [[-i zeta, q], [-sigma q*, i zeta]].
Mat2 bo_step(Cx q, int sigma, Cx zeta, double tau);

/// Triple-exponential 4th-order step: E+ . exp(tau Q_n) . E-.
Mat2 tes4_step(const StepWindow& w, Cx zeta);

/// Suzuki-factorized variant: E+ and E- around the 11-exponential product of
/// A- and B-factors (13 exponentials in total).
Mat2 tes4sb_step(const StepWindow& w, Cx zeta);

/// Expand the factorized step into S(W)/Z^7 form by multiplying the
/// zeta-independent constant factors through the monomial diagonals
/// diag(W,1), diag(1,W), diag(W^3,1), diag(1,W), diag(W,1).
StepPoly step_polynomial(const StepWindow& w);

/// Window around sample n with zero padding outside [0, M].
StepWindow window_at(const Signal& s, std::size_t n);

}  // namespace zsnft
