#include "zsnft/signal.hpp"

#include <stdexcept>

namespace zsnft {

void validate(const Signal& s) {
  if (s.samples.size() < 3) throw std::invalid_argument("Signal: need M >= 2 (at least 3 samples)");
  if (!(s.L > 0.0)) throw std::invalid_argument("Signal: L must be positive");
  if (s.sigma != 1 && s.sigma != -1) throw std::invalid_argument("Signal: sigma must be +1 or -1");
  for (const Cx& q : s.samples)
    if (!std::isfinite(q.real()) || !std::isfinite(q.imag()))
      throw std::invalid_argument("Signal: non-finite sample");
}

EvalGrid make_uniform_grid(double xi_min, double xi_max, std::size_t n, double tau) {
  if (n == 0) throw std::invalid_argument("EvalGrid: need at least one point");
  if (n > 1 && !(xi_min < xi_max)) throw std::invalid_argument("EvalGrid: xi_min < xi_max required");
  EvalGrid g;
  g.xi.resize(n);
  const double delta = (n > 1) ? (xi_max - xi_min) / static_cast<double>(n - 1) : 0.0;
  for (std::size_t j = 0; j < n; ++j) g.xi[j] = xi_min + delta * static_cast<double>(j);
  g.uniform = true;
  g.tau = tau;
  return g;
}

}  // namespace zsnft
