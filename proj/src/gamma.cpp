#include "zsnft/gamma.hpp"

#include <cmath>

namespace zsnft {

Cx log_sin_pi(Cx z) {
  const Cx ipi(0.0, M_PI);
  const Cx log_2i = Cx(std::log(2.0), M_PI / 2.0);
  if (z.imag() > 8.0) {
    // sin(pi z) = -e^{-i pi z} (1 - e^{2 i pi z}) / (2i)
    return Cx(0.0, M_PI) - ipi * z - log_2i + std::log(1.0 - std::exp(2.0 * ipi * z));
  }
  if (z.imag() < -8.0) {
    return ipi * z - log_2i + std::log(1.0 - std::exp(-2.0 * ipi * z));
  }
  return std::log(std::sin(M_PI * z));
}

Cx log_gamma(Cx z) {
  // Lanczos, g = 7, 9 terms.
  static const double c[9] = {0.99999999999980993,
                              676.5203681218851,
                              -1259.1392167224028,
                              771.32342877765313,
                              -176.61502916214059,
                              12.507343278686905,
                              -0.13857109526572012,
                              9.9843695780195716e-6,
                              1.5056327351493116e-7};
  if (z.real() < 0.5) {
    // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z).
    return std::log(M_PI) - log_sin_pi(z) - log_gamma(1.0 - z);
  }
  z -= 1.0;
  Cx x = c[0];
  for (int i = 1; i < 9; ++i) x += c[i] / (z + static_cast<double>(i));
  const Cx t = z + 7.5;
  return 0.5 * std::log(2.0 * M_PI) + (z + 0.5) * std::log(t) - t + std::log(x);
}

}  // namespace zsnft
