#pragma once

#include <cmath>
#include <complex>

namespace zsnft {

using Cx = std::complex<double>;

/// Dense 2x2 complex matrix, the working element of every transfer-matrix
/// scheme. Row-major: [[a11, a12], [a21, a22]].
struct Mat2 {
  Cx a11{}, a12{}, a21{}, a22{};

  static Mat2 identity() { return {Cx(1.0), Cx(0.0), Cx(0.0), Cx(1.0)}; }
  static Mat2 diag(Cx d1, Cx d2) { return {d1, Cx(0.0), Cx(0.0), d2}; }
  /// Traceless matrix [[d, x], [y, -d]].
  static Mat2 traceless(Cx d, Cx x, Cx y) { return {d, x, y, -d}; }

  Cx det() const { return a11 * a22 - a12 * a21; }
  Cx trace() const { return a11 + a22; }
  Mat2 adjoint() const {
    return {std::conj(a11), std::conj(a21), std::conj(a12), std::conj(a22)};
  }
  double max_abs() const {
    return std::max(std::max(std::abs(a11), std::abs(a12)),
                    std::max(std::abs(a21), std::abs(a22)));
  }
  bool finite() const;
};

Mat2 operator*(const Mat2& x, const Mat2& y);
Mat2 operator+(const Mat2& x, const Mat2& y);
Mat2 operator-(const Mat2& x, const Mat2& y);
Mat2 operator*(Cx s, const Mat2& m);

/// max entrywise |x - y|
double max_abs_diff(const Mat2& x, const Mat2& y);

namespace detail {
/// sinh(k)/k, switching to the Taylor series 1 + k^2/6 + k^4/120 for
/// |k| < 1e-4 so that k -> 0 stays finite.
Cx sinhc(Cx k);
/// Closed form without the small-k series, exposed for the continuity test.
Cx sinhc_closed(Cx k);
}  // namespace detail

/// Exponential of a traceless 2x2 matrix in closed form: with
/// m = [[d, x], [y, -d]] and k = sqrt(d^2 + x y),
///   exp(m) = cosh(k) I + sinh(k)/k * m.
/// The result is unimodular (det = 1). Throws std::invalid_argument when the
/// input has a nonzero trace or non-finite entries.
Mat2 exp_traceless(const Mat2& m);

/// exp([[0, x], [y, 0]]) — the off-diagonal specialization used for every
/// B-type factor. For y = -conj(x) the result is unitary.
Mat2 exp_offdiag(Cx x, Cx y);

}  // namespace zsnft
