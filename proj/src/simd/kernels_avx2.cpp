#include "zsnft/simd/kernels.hpp"

// AVX2+FMA variants. This translation unit is compiled with -mavx2 -mfma when
// the toolchain supports it; callers reach it only through the dispatch table
// after a runtime CPU check.

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

namespace zsnft::simd {

namespace {

// ---- tes4sb sweep: 4 spectral points per vector, SoA layout ----

struct Vec2c {
  __m256d p1r, p1i, p2r, p2i;
};

inline void matvec(const double m[8], Vec2c& v) {
  const __m256d m11r = _mm256_set1_pd(m[0]), m11i = _mm256_set1_pd(m[1]);
  const __m256d m12r = _mm256_set1_pd(m[2]), m12i = _mm256_set1_pd(m[3]);
  const __m256d m21r = _mm256_set1_pd(m[4]), m21i = _mm256_set1_pd(m[5]);
  const __m256d m22r = _mm256_set1_pd(m[6]), m22i = _mm256_set1_pd(m[7]);

  __m256d t1r = _mm256_fmsub_pd(m11r, v.p1r, _mm256_mul_pd(m11i, v.p1i));
  t1r = _mm256_add_pd(t1r, _mm256_fmsub_pd(m12r, v.p2r, _mm256_mul_pd(m12i, v.p2i)));
  __m256d t1i = _mm256_fmadd_pd(m11r, v.p1i, _mm256_mul_pd(m11i, v.p1r));
  t1i = _mm256_add_pd(t1i, _mm256_fmadd_pd(m12r, v.p2i, _mm256_mul_pd(m12i, v.p2r)));
  __m256d t2r = _mm256_fmsub_pd(m21r, v.p1r, _mm256_mul_pd(m21i, v.p1i));
  t2r = _mm256_add_pd(t2r, _mm256_fmsub_pd(m22r, v.p2r, _mm256_mul_pd(m22i, v.p2i)));
  __m256d t2i = _mm256_fmadd_pd(m21r, v.p1i, _mm256_mul_pd(m21i, v.p1r));
  t2i = _mm256_add_pd(t2i, _mm256_fmadd_pd(m22r, v.p2i, _mm256_mul_pd(m22i, v.p2r)));
  v.p1r = t1r;
  v.p1i = t1i;
  v.p2r = t2r;
  v.p2i = t2i;
}

template <bool ConjFirst>
inline void diag_phase(__m256d zr, __m256d zi, Vec2c& v) {
  __m256d t1r, t1i, t2r, t2i;
  if constexpr (!ConjFirst) {
    t1r = _mm256_fmsub_pd(zr, v.p1r, _mm256_mul_pd(zi, v.p1i));
    t1i = _mm256_fmadd_pd(zr, v.p1i, _mm256_mul_pd(zi, v.p1r));
    t2r = _mm256_fmadd_pd(zr, v.p2r, _mm256_mul_pd(zi, v.p2i));
    t2i = _mm256_fmsub_pd(zr, v.p2i, _mm256_mul_pd(zi, v.p2r));
  } else {
    t1r = _mm256_fmadd_pd(zr, v.p1r, _mm256_mul_pd(zi, v.p1i));
    t1i = _mm256_fmsub_pd(zr, v.p1i, _mm256_mul_pd(zi, v.p1r));
    t2r = _mm256_fmsub_pd(zr, v.p2r, _mm256_mul_pd(zi, v.p2i));
    t2i = _mm256_fmadd_pd(zr, v.p2i, _mm256_mul_pd(zi, v.p2r));
  }
  v.p1r = t1r;
  v.p1i = t1i;
  v.p2r = t2r;
  v.p2i = t2i;
}

void tes4sb_sweep_avx2(const StepConsts* steps, std::size_t n_steps,
                       const double* z_re, const double* z_im,
                       const double* z3_re, const double* z3_im,
                       std::size_t n_xi,
                       double* out11_re, double* out11_im,
                       double* out21_re, double* out21_im) {
  std::size_t j = 0;
  for (; j + 4 <= n_xi; j += 4) {
    const __m256d zr = _mm256_loadu_pd(z_re + j);
    const __m256d zi = _mm256_loadu_pd(z_im + j);
    const __m256d wr = _mm256_loadu_pd(z3_re + j);
    const __m256d wi = _mm256_loadu_pd(z3_im + j);
    Vec2c v{_mm256_set1_pd(1.0), _mm256_setzero_pd(),
            _mm256_setzero_pd(), _mm256_setzero_pd()};
    for (std::size_t n = 0; n < n_steps; ++n) {
      const StepConsts& s = steps[n];
      matvec(s.c_in, v);
      diag_phase<false>(zr, zi, v);
      matvec(s.b_mid, v);
      diag_phase<true>(zr, zi, v);
      matvec(s.b_neg, v);
      diag_phase<false>(wr, wi, v);
      matvec(s.b_neg, v);
      diag_phase<true>(zr, zi, v);
      matvec(s.b_mid, v);
      diag_phase<false>(zr, zi, v);
      matvec(s.c_out, v);
    }
    _mm256_storeu_pd(out11_re + j, v.p1r);
    _mm256_storeu_pd(out11_im + j, v.p1i);
    _mm256_storeu_pd(out21_re + j, v.p2r);
    _mm256_storeu_pd(out21_im + j, v.p2i);
  }
  if (j < n_xi)
    scalar_table().tes4sb_sweep(steps, n_steps, z_re + j, z_im + j, z3_re + j,
                                z3_im + j, n_xi - j, out11_re + j, out11_im + j,
                                out21_re + j, out21_im + j);
}

// ---- interleaved complex helpers (2 complex doubles per __m256d) ----

// t = a * b elementwise on complex pairs.
inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d ar = _mm256_movedup_pd(a);           // [ar0 ar0 ar1 ar1]
  const __m256d ai = _mm256_permute_pd(a, 0xF);      // [ai0 ai0 ai1 ai1]
  const __m256d bs = _mm256_permute_pd(b, 0x5);      // [bi0 br0 bi1 br1]
  return _mm256_fmaddsub_pd(ar, b, _mm256_mul_pd(ai, bs));
}

void fft_pass_avx2(Cx* data, std::size_t n, std::size_t m, const Cx* tw) {
  const std::size_t half = m >> 1;
  if (half < 2) {
    scalar_table().fft_pass(data, n, m, tw);
    return;
  }
  auto* d = reinterpret_cast<double*>(data);
  const auto* w = reinterpret_cast<const double*>(tw);
  for (std::size_t k = 0; k < n; k += m) {
    double* a = d + 2 * k;
    double* b = d + 2 * (k + half);
    for (std::size_t j = 0; j < half; j += 2) {
      const __m256d tv = cmul(_mm256_loadu_pd(w + 2 * j), _mm256_loadu_pd(b + 2 * j));
      const __m256d uv = _mm256_loadu_pd(a + 2 * j);
      _mm256_storeu_pd(a + 2 * j, _mm256_add_pd(uv, tv));
      _mm256_storeu_pd(b + 2 * j, _mm256_sub_pd(uv, tv));
    }
  }
}

// -i*x and i*x on interleaved complex pairs.
inline __m256d cneg_i(__m256d x) {  // -i * x
  const __m256d sw = _mm256_permute_pd(x, 0x5);
  return _mm256_xor_pd(sw, _mm256_set_pd(-0.0, 0.0, -0.0, 0.0));
}
inline __m256d cpos_i(__m256d x) {  // i * x
  const __m256d sw = _mm256_permute_pd(x, 0x5);
  return _mm256_xor_pd(sw, _mm256_set_pd(0.0, -0.0, 0.0, -0.0));
}

void fft_dif4_pass_avx2(Cx* data, std::size_t n, std::size_t m, const Cx* w1,
                        const Cx* w2, const Cx* w3) {
  const std::size_t q = m >> 2;
  if (q < 2) {
    scalar_table().fft_dif4_pass(data, n, m, w1, w2, w3);
    return;
  }
  auto* d = reinterpret_cast<double*>(data);
  const auto* t1 = reinterpret_cast<const double*>(w1);
  const auto* t2 = reinterpret_cast<const double*>(w2);
  const auto* t3 = reinterpret_cast<const double*>(w3);
  for (std::size_t k = 0; k < n; k += m) {
    double* x0 = d + 2 * k;
    double* x1 = x0 + 2 * q;
    double* x2 = x1 + 2 * q;
    double* x3 = x2 + 2 * q;
    for (std::size_t j = 0; j < q; j += 2) {
      const std::size_t o = 2 * j;
      const __m256d a = _mm256_loadu_pd(x0 + o);
      const __m256d b = _mm256_loadu_pd(x1 + o);
      const __m256d c = _mm256_loadu_pd(x2 + o);
      const __m256d e = _mm256_loadu_pd(x3 + o);
      const __m256d t0v = _mm256_add_pd(a, c);
      const __m256d t1v = _mm256_sub_pd(a, c);
      const __m256d t2v = _mm256_add_pd(b, e);
      const __m256d t3v = cneg_i(_mm256_sub_pd(b, e));
      _mm256_storeu_pd(x0 + o, _mm256_add_pd(t0v, t2v));
      _mm256_storeu_pd(x1 + o, cmul(_mm256_add_pd(t1v, t3v), _mm256_loadu_pd(t1 + o)));
      _mm256_storeu_pd(x2 + o, cmul(_mm256_sub_pd(t0v, t2v), _mm256_loadu_pd(t2 + o)));
      _mm256_storeu_pd(x3 + o, cmul(_mm256_sub_pd(t1v, t3v), _mm256_loadu_pd(t3 + o)));
    }
  }
}

void fft_dit4_pass_avx2(Cx* data, std::size_t n, std::size_t m, const Cx* w1,
                        const Cx* w2, const Cx* w3) {
  const std::size_t q = m >> 2;
  if (q < 2) {
    scalar_table().fft_dit4_pass(data, n, m, w1, w2, w3);
    return;
  }
  auto* d = reinterpret_cast<double*>(data);
  const auto* t1 = reinterpret_cast<const double*>(w1);
  const auto* t2 = reinterpret_cast<const double*>(w2);
  const auto* t3 = reinterpret_cast<const double*>(w3);
  for (std::size_t k = 0; k < n; k += m) {
    double* x0 = d + 2 * k;
    double* x1 = x0 + 2 * q;
    double* x2 = x1 + 2 * q;
    double* x3 = x2 + 2 * q;
    for (std::size_t j = 0; j < q; j += 2) {
      const std::size_t o = 2 * j;
      const __m256d u0 = _mm256_loadu_pd(x0 + o);
      const __m256d u1 = cmul(_mm256_loadu_pd(x1 + o), _mm256_loadu_pd(t1 + o));
      const __m256d u2 = cmul(_mm256_loadu_pd(x2 + o), _mm256_loadu_pd(t2 + o));
      const __m256d u3 = cmul(_mm256_loadu_pd(x3 + o), _mm256_loadu_pd(t3 + o));
      const __m256d s02 = _mm256_add_pd(u0, u2);
      const __m256d d02 = _mm256_sub_pd(u0, u2);
      const __m256d s13 = _mm256_add_pd(u1, u3);
      const __m256d id13 = cpos_i(_mm256_sub_pd(u1, u3));
      _mm256_storeu_pd(x0 + o, _mm256_add_pd(s02, s13));
      _mm256_storeu_pd(x1 + o, _mm256_add_pd(d02, id13));
      _mm256_storeu_pd(x2 + o, _mm256_sub_pd(s02, s13));
      _mm256_storeu_pd(x3 + o, _mm256_sub_pd(d02, id13));
    }
  }
}

void pointwise_mat2_mul_avx2(const Cx* const p[4], const Cx* const q[4],
                             Cx* const r[4], std::size_t n) {
  const auto* p11 = reinterpret_cast<const double*>(p[0]);
  const auto* p12 = reinterpret_cast<const double*>(p[1]);
  const auto* p21 = reinterpret_cast<const double*>(p[2]);
  const auto* p22 = reinterpret_cast<const double*>(p[3]);
  const auto* q11 = reinterpret_cast<const double*>(q[0]);
  const auto* q12 = reinterpret_cast<const double*>(q[1]);
  const auto* q21 = reinterpret_cast<const double*>(q[2]);
  const auto* q22 = reinterpret_cast<const double*>(q[3]);
  auto* r11 = reinterpret_cast<double*>(r[0]);
  auto* r12 = reinterpret_cast<double*>(r[1]);
  auto* r21 = reinterpret_cast<double*>(r[2]);
  auto* r22 = reinterpret_cast<double*>(r[3]);

  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const std::size_t o = 2 * i;
    const __m256d a11 = _mm256_loadu_pd(p11 + o), a12 = _mm256_loadu_pd(p12 + o);
    const __m256d a21 = _mm256_loadu_pd(p21 + o), a22 = _mm256_loadu_pd(p22 + o);
    const __m256d b11 = _mm256_loadu_pd(q11 + o), b12 = _mm256_loadu_pd(q12 + o);
    const __m256d b21 = _mm256_loadu_pd(q21 + o), b22 = _mm256_loadu_pd(q22 + o);
    _mm256_storeu_pd(r11 + o, _mm256_add_pd(cmul(a11, b11), cmul(a12, b21)));
    _mm256_storeu_pd(r12 + o, _mm256_add_pd(cmul(a11, b12), cmul(a12, b22)));
    _mm256_storeu_pd(r21 + o, _mm256_add_pd(cmul(a21, b11), cmul(a22, b21)));
    _mm256_storeu_pd(r22 + o, _mm256_add_pd(cmul(a21, b12), cmul(a22, b22)));
  }
  if (i < n) {
    const Cx* pt[4] = {p[0] + i, p[1] + i, p[2] + i, p[3] + i};
    const Cx* qt[4] = {q[0] + i, q[1] + i, q[2] + i, q[3] + i};
    Cx* rt[4] = {r[0] + i, r[1] + i, r[2] + i, r[3] + i};
    scalar_table().pointwise_mat2_mul(pt, qt, rt, n - i);
  }
}

}  // namespace

const KernelTable* avx2_table() {
  static const KernelTable t{tes4sb_sweep_avx2,   fft_pass_avx2,
                             fft_dif4_pass_avx2,  fft_dit4_pass_avx2,
                             pointwise_mat2_mul_avx2, "avx2"};
  return &t;
}

}  // namespace zsnft::simd

#else  // no AVX2 in this build

namespace zsnft::simd {
const KernelTable* avx2_table() { return nullptr; }
}  // namespace zsnft::simd

#endif
