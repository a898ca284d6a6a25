#pragma once

#include <complex>
#include <cstddef>
#include <string>

namespace zsnft::simd {

using Cx = std::complex<double>;

/// Per-step zeta-independent factors of the factorized step, flattened for
/// the sweep kernels. Entry layout per matrix: re11, im11, re12, im12,
/// re21, im21, re22, im22. Matrix order: c_in = B(7/48).E-, b_mid = B(3/8),
/// b_neg = B(-1/48), c_out = E+.B(7/48).
struct StepConsts {
  double c_in[8];
  double b_mid[8];
  double b_neg[8];
  double c_out[8];
};

/// Apply `n_steps` factorized steps to the Jost column for each real spectral
/// point in [0, n_xi): the per-point state starts at (1, 0) and the final
/// (psi1, psi2) = (T11, T21) of the accumulated transfer matrix. z/z3 hold
/// Z = exp(-i tau xi / 3) and Z^3 per point; for real xi, Z^{-1} = conj(Z).
using Tes4sbSweepFn = void (*)(const StepConsts* steps, std::size_t n_steps,
                               const double* z_re, const double* z_im,
                               const double* z3_re, const double* z3_im,
                               std::size_t n_xi,
                               double* out11_re, double* out11_im,
                               double* out21_re, double* out21_im);

/// One radix-2 DIT butterfly stage of size `m` over an array of `n` complex
/// values; `tw` holds the m/2 stage twiddles.
using FftPassFn = void (*)(Cx* data, std::size_t n, std::size_t m, const Cx* tw);

/// Radix-4 stages of the unordered convolution transforms. The DIF variant
/// applies the butterfly then the stage twiddles w^j, w^{2j}, w^{3j}; the DIT
/// variant multiplies by the (pre-conjugated) twiddles first and inverts the
/// butterfly. m/4 twiddles per table.
using FftRadix4Fn = void (*)(Cx* data, std::size_t n, std::size_t m, const Cx* w1,
                             const Cx* w2, const Cx* w3);

/// Pointwise 2x2 matrix product per frequency bin: r = p . q, where p, q, r
/// are each four parallel arrays (entries 11, 12, 21, 22) of length n.
/// r must not alias p or q.
using PointwiseMat2MulFn = void (*)(const Cx* const p[4], const Cx* const q[4],
                                    Cx* const r[4], std::size_t n);

struct KernelTable {
  Tes4sbSweepFn tes4sb_sweep;
  FftPassFn fft_pass;
  FftRadix4Fn fft_dif4_pass;
  FftRadix4Fn fft_dit4_pass;
  PointwiseMat2MulFn pointwise_mat2_mul;
  const char* name;
};

enum class IsaLevel { scalar, avx2 };

/// Active kernel table. Resolved once: honors ZSNFT_SIMD={auto,scalar,avx2}
/// and falls back to scalar when the CPU lacks AVX2+FMA.
const KernelTable& kernels();

/// Specific table; throws std::runtime_error for an unavailable level.
const KernelTable& kernels(IsaLevel level);

IsaLevel active_level();
/// Override the active table (tests, diagnostics). Throws when unsupported.
void force_level(IsaLevel level);
bool cpu_has_avx2();
std::string active_name();

const KernelTable& scalar_table();
const KernelTable* avx2_table();  // nullptr when not compiled in / unsupported

}  // namespace zsnft::simd
