#pragma once

#include <cstddef>
#include <vector>

#include "zsnft/mat2.hpp"

namespace zsnft {

/// Uniformly sampled potential q(t_n) on [-L, L], t_n = -L + tau*n,
/// n = 0..M, tau = 2L/M. Carries the dispersion sign.
struct Signal {
  std::vector<Cx> samples;  // M+1 values
  double L{0.0};
  int sigma{+1};

  std::size_t M() const { return samples.size() - 1; }
  double tau() const { return 2.0 * L / static_cast<double>(M()); }
  double t(std::size_t n) const { return -L + tau() * static_cast<double>(n); }
};

/// Throws std::invalid_argument unless M >= 2, L > 0, sigma in {+1,-1} and
/// all samples are finite.
void validate(const Signal& s);

/// Real spectral points xi_j. When `uniform` is set, xi_j = xi.front() +
/// j*delta exactly as stored, which enables the chirp-Z evaluation path.
/// `tau` is the grid step of the signal the polynomial was built from; the
/// evaluation variable is W = exp(-2i*tau*xi/3).
struct EvalGrid {
  std::vector<double> xi;
  bool uniform{false};
  double tau{0.0};

  std::size_t size() const { return xi.size(); }
};

EvalGrid make_uniform_grid(double xi_min, double xi_max, std::size_t n, double tau);

}  // namespace zsnft
