#include "zsnft/mat2.hpp"

#include <stdexcept>

namespace zsnft {

bool Mat2::finite() const {
  auto ok = [](Cx c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); };
  return ok(a11) && ok(a12) && ok(a21) && ok(a22);
}

Mat2 operator*(const Mat2& x, const Mat2& y) {
  return {x.a11 * y.a11 + x.a12 * y.a21, x.a11 * y.a12 + x.a12 * y.a22,
          x.a21 * y.a11 + x.a22 * y.a21, x.a21 * y.a12 + x.a22 * y.a22};
}

Mat2 operator+(const Mat2& x, const Mat2& y) {
  return {x.a11 + y.a11, x.a12 + y.a12, x.a21 + y.a21, x.a22 + y.a22};
}

Mat2 operator-(const Mat2& x, const Mat2& y) {
  return {x.a11 - y.a11, x.a12 - y.a12, x.a21 - y.a21, x.a22 - y.a22};
}

Mat2 operator*(Cx s, const Mat2& m) {
  return {s * m.a11, s * m.a12, s * m.a21, s * m.a22};
}

double max_abs_diff(const Mat2& x, const Mat2& y) { return (x - y).max_abs(); }

namespace detail {

Cx sinhc_closed(Cx k) { return std::sinh(k) / k; }

Cx sinhc(Cx k) {
  const double a = std::abs(k);
  if (a < 1e-4) {
    const Cx k2 = k * k;
    return 1.0 + k2 / 6.0 + k2 * k2 / 120.0;
  }
  return sinhc_closed(k);
}

}  // namespace detail

Mat2 exp_traceless(const Mat2& m) {
  if (!m.finite()) throw std::invalid_argument("exp_traceless: non-finite entries");
  const double scale = m.max_abs();
  if (std::abs(m.trace()) > 64.0 * 2.220446049250313e-16 * (1.0 + scale))
    throw std::invalid_argument("exp_traceless: matrix is not traceless");

  // k is defined up to sign; cosh and sinh(k)/k are even, so the sqrt branch
  // does not matter.
  const Cx k = std::sqrt(m.a11 * m.a11 + m.a12 * m.a21);
  const Cx ch = std::cosh(k);
  const Cx sc = detail::sinhc(k);
  return {ch + sc * m.a11, sc * m.a12, sc * m.a21, ch - sc * m.a11};
}

Mat2 exp_offdiag(Cx x, Cx y) {
  // y = -+conj(x) covers every B-type factor; k^2 = x y is then real and the
  // closed form needs only real trig.
  if (y.real() == -x.real() && y.imag() == x.imag()) {  // y = -conj(x)
    const double t = std::abs(x);
    if (t < 1e-4) {
      const double t2 = -t * t;
      const Cx sc(1.0 + t2 * (1.0 / 6.0 + t2 / 120.0));
      return {Cx(1.0 + t2 * (0.5 + t2 / 24.0)), sc * x, sc * y, Cx(1.0 + t2 * (0.5 + t2 / 24.0))};
    }
    const Cx ch(std::cos(t));
    const Cx sc(std::sin(t) / t);
    return {ch, sc * x, sc * y, ch};
  }
  if (y.real() == x.real() && y.imag() == -x.imag()) {  // y = conj(x)
    const double t = std::abs(x);
    if (t < 1e-4) {
      const double t2 = t * t;
      const Cx sc(1.0 + t2 * (1.0 / 6.0 + t2 / 120.0));
      return {Cx(1.0 + t2 * (0.5 + t2 / 24.0)), sc * x, sc * y, Cx(1.0 + t2 * (0.5 + t2 / 24.0))};
    }
    const Cx ch(std::cosh(t));
    const Cx sc(std::sinh(t) / t);
    return {ch, sc * x, sc * y, ch};
  }
  const Cx k = std::sqrt(x * y);
  const Cx ch = std::cosh(k);
  const Cx sc = detail::sinhc(k);
  return {ch, sc * x, sc * y, ch};
}

}  // namespace zsnft
