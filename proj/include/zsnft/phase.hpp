#pragma once

#include <cmath>
#include <complex>

namespace zsnft {

/// Double-double phase accumulation. Chirp factors need angles like
/// theta * k^2 with k up to ~1e6; at those magnitudes a plain double product
/// keeps only ~1e-10 of the reduced phase, which is not enough for the
/// evaluation-path tolerances. Splitting the product into hi/lo parts and
/// reducing mod 2*pi in the split representation keeps the reduced angle
/// accurate to a few ulp.
struct DD {
  double hi{0.0}, lo{0.0};
};

namespace ddmath {

inline DD two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

inline DD two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline DD add(DD a, DD b) {
  DD s = two_sum(a.hi, b.hi);
  s.lo += a.lo + b.lo;
  const DD r = two_sum(s.hi, s.lo);
  return r;
}

inline DD mul_d(DD a, double b) {
  DD p = two_prod(a.hi, b);
  p.lo += a.lo * b;
  return two_sum(p.hi, p.lo);
}

/// Exact product of two doubles as a DD.
inline DD prod(double a, double b) { return two_prod(a, b); }

// 2*pi split into two doubles (hi + lo covers ~32 digits).
inline constexpr double two_pi_hi = 6.283185307179586476925286766559;
inline constexpr double two_pi_lo = 2.4492935982947063545442338073e-16;

/// Reduce a DD angle mod 2*pi into roughly [-pi, pi].
inline double reduce_2pi(DD x) {
  const double n = std::nearbyint(x.hi / two_pi_hi);
  DD r = add(x, two_prod(-n, two_pi_hi));
  r = add(r, two_prod(-n, two_pi_lo));
  return r.hi + r.lo;
}

}  // namespace ddmath

/// e^{i * theta * k} with the product carried in double-double precision.
inline std::complex<double> unit_phase(DD theta, double k) {
  DD p = ddmath::two_prod(theta.hi, k);
  p.lo += theta.lo * k;
  const double r = ddmath::reduce_2pi(p);
  return {std::cos(r), std::sin(r)};
}

inline std::complex<double> unit_phase(double theta, double k) {
  return unit_phase(DD{theta, 0.0}, k);
}

}  // namespace zsnft
