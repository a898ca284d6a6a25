#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "zsnft/mat2.hpp"
#include "zsnft/schemes.hpp"
#include "zsnft/signal.hpp"

namespace zsnft {

/// Polynomial in W with 2x2 complex matrix coefficients plus the total power
/// of Z = exp(-i tau zeta / 3) that was pulled out of the denominators. A
/// transfer operator is evaluated as coeffs(W = Z^2) * Z^{-denom_z_exp}.
struct MatPoly {
  std::vector<Mat2> coeffs;  // ascending powers of W
  long denom_z_exp{0};

  std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
};

MatPoly matpoly_from_step(const StepPoly& p);

/// Product of two matrix polynomials; p is the later-in-time factor and is
/// applied on the left: result_m = sum_k p_k q_{m-k}. Uses the FFT path when
/// the output degree is >= 32 and plain convolution below.
MatPoly matpoly_mul(const MatPoly& p, const MatPoly& q);

/// Multiply all per-step polynomials into the total transfer polynomial
/// T_M ... T_0 with deterministic bottom-up adjacent pairing. Independent
/// pairs may run in parallel; the pairing (and hence the floating-point
/// result) is independent of the thread count.
MatPoly tree_product(const std::vector<StepPoly>& steps);

/// Evaluate at one spectral point: W = Z^2, Horner sum, times Z^{-denom}.
/// For Im(zeta) != 0 the accumulation is rescaled and the denominator is
/// applied in log space so that large grids do not overflow.
Mat2 evaluate_horner(const MatPoly& p, Cx zeta, double tau);

/// Evaluate at every grid point. Uniform grids take the chirp-Z path,
/// O((deg+N) log(deg+N)) per matrix entry; otherwise Horner per point.
std::vector<Mat2> evaluate_grid(const MatPoly& p, const EvalGrid& grid);

/// Evaluate an ordered factor list (time order; later factors multiply on the
/// left) at every grid point and return the per-point products. Pointwise
/// equal to evaluate_grid(tree_product of the factors) up to roundoff, but
/// shares one chirp context across factors instead of forming the full-degree
/// polynomial.
std::vector<Mat2> evaluate_grid_product(const std::vector<MatPoly>& factors,
                                        const EvalGrid& grid);

/// Streaming form: factor(c) materializes the c-th factor (degree <= deg_max)
/// on demand; each factor is evaluated and dropped, so the peak working set
/// is one factor per worker thread. factor must be safe to call concurrently
/// for distinct c.
std::vector<Mat2> evaluate_grid_product_fn(std::size_t n_factors, std::size_t deg_max,
                                           const EvalGrid& grid,
                                           const std::function<MatPoly(std::size_t)>& factor);

}  // namespace zsnft
