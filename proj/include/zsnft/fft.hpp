#pragma once

#include <cstddef>
#include <vector>

#include "zsnft/mat2.hpp"
#include "zsnft/phase.hpp"

namespace zsnft {

std::size_t next_pow2(std::size_t n);

/// Iterative radix-2 complex FFT plan for a fixed power-of-two size.
/// Butterfly stages run through the dispatched SIMD kernel table.
class Fft {
 public:
  explicit Fft(std::size_t n);  // n must be a power of two >= 1

  std::size_t size() const { return n_; }
  void forward(Cx* data) const;  // in place, e^{-2pi i jk/n} convention
  void inverse(Cx* data) const;  // in place, includes the 1/n scale

  /// Unordered transform pair for convolution: forward_conv leaves the
  /// spectrum in a permuted order (radix-4 DIF, no reordering pass); any
  /// pointwise combination of such spectra fed to inverse_conv comes back in
  /// natural order with the 1/n scale applied.
  void forward_conv(Cx* data) const;
  void inverse_conv(Cx* data) const;

 private:
  void permute(Cx* data) const;

  struct Radix4Tw {
    std::vector<Cx> w1, w2, w3;
  };

  std::size_t n_{1};
  unsigned log2n_{0};
  std::vector<std::uint32_t> rev_;
  std::vector<std::vector<Cx>> fwd_tw_;  // per-stage twiddles, m = 2,4,...,n
  std::vector<std::vector<Cx>> inv_tw_;
  std::vector<Radix4Tw> conv_fwd_;  // radix-4 stages, largest m first
  std::vector<Radix4Tw> conv_inv_;  // conjugated, same order
};

/// Shared per-size plan cache (plans are immutable once built).
const Fft& fft_plan(std::size_t n);

/// Chirp-Z transform on the unit circle: given polynomial coefficients c_k
/// (ascending, k = 0..deg), return X_j = sum_k c_k e^{i(theta0 + j*dtheta)k}
/// for j = 0..n_points-1. Bluestein factorization, O((deg+n) log(deg+n)).
std::vector<Cx> czt_unit_circle(const std::vector<Cx>& coeffs, std::size_t n_points,
                                DD theta0, DD dtheta);

}  // namespace zsnft
