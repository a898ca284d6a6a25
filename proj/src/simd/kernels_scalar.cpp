#include "zsnft/simd/kernels.hpp"

// Reference kernels. These define the semantics the vector variants are
// equivalence-tested against; keep them straightforward.

namespace zsnft::simd {

namespace {

inline void matvec(const double m[8], double& p1r, double& p1i, double& p2r, double& p2i) {
  const double t1r = m[0] * p1r - m[1] * p1i + m[2] * p2r - m[3] * p2i;
  const double t1i = m[0] * p1i + m[1] * p1r + m[2] * p2i + m[3] * p2r;
  const double t2r = m[4] * p1r - m[5] * p1i + m[6] * p2r - m[7] * p2i;
  const double t2i = m[4] * p1i + m[5] * p1r + m[6] * p2i + m[7] * p2r;
  p1r = t1r;
  p1i = t1i;
  p2r = t2r;
  p2i = t2i;
}

// diag(Z, conj(Z)) when conj_first is false, diag(conj(Z), Z) when true.
inline void diag_phase(double zr, double zi, bool conj_first,
                       double& p1r, double& p1i, double& p2r, double& p2i) {
  const double s = conj_first ? -1.0 : 1.0;
  const double t1r = zr * p1r - s * zi * p1i;
  const double t1i = zr * p1i + s * zi * p1r;
  const double t2r = zr * p2r + s * zi * p2i;
  const double t2i = zr * p2i - s * zi * p2r;
  p1r = t1r;
  p1i = t1i;
  p2r = t2r;
  p2i = t2i;
}

void tes4sb_sweep_scalar(const StepConsts* steps, std::size_t n_steps,
                         const double* z_re, const double* z_im,
                         const double* z3_re, const double* z3_im,
                         std::size_t n_xi,
                         double* out11_re, double* out11_im,
                         double* out21_re, double* out21_im) {
  for (std::size_t j = 0; j < n_xi; ++j) {
    const double zr = z_re[j], zi = z_im[j];
    const double wr = z3_re[j], wi = z3_im[j];
    double p1r = 1.0, p1i = 0.0, p2r = 0.0, p2i = 0.0;
    for (std::size_t n = 0; n < n_steps; ++n) {
      const StepConsts& s = steps[n];
      matvec(s.c_in, p1r, p1i, p2r, p2i);          // B(7/48) . E-
      diag_phase(zr, zi, false, p1r, p1i, p2r, p2i);  // A(1/3)
      matvec(s.b_mid, p1r, p1i, p2r, p2i);
      diag_phase(zr, zi, true, p1r, p1i, p2r, p2i);   // A(-1/3)
      matvec(s.b_neg, p1r, p1i, p2r, p2i);
      diag_phase(wr, wi, false, p1r, p1i, p2r, p2i);  // A(1)
      matvec(s.b_neg, p1r, p1i, p2r, p2i);
      diag_phase(zr, zi, true, p1r, p1i, p2r, p2i);
      matvec(s.b_mid, p1r, p1i, p2r, p2i);
      diag_phase(zr, zi, false, p1r, p1i, p2r, p2i);
      matvec(s.c_out, p1r, p1i, p2r, p2i);         // E+ . B(7/48)
    }
    out11_re[j] = p1r;
    out11_im[j] = p1i;
    out21_re[j] = p2r;
    out21_im[j] = p2i;
  }
}

void fft_pass_scalar(Cx* data, std::size_t n, std::size_t m, const Cx* tw) {
  const std::size_t half = m >> 1;
  for (std::size_t k = 0; k < n; k += m) {
    Cx* a = data + k;
    Cx* b = data + k + half;
    for (std::size_t j = 0; j < half; ++j) {
      const Cx t(tw[j].real() * b[j].real() - tw[j].imag() * b[j].imag(),
                 tw[j].real() * b[j].imag() + tw[j].imag() * b[j].real());
      const Cx u = a[j];
      a[j] = u + t;
      b[j] = u - t;
    }
  }
}

inline Cx cmul_s(Cx a, Cx b) {
  return {a.real() * b.real() - a.imag() * b.imag(),
          a.real() * b.imag() + a.imag() * b.real()};
}

void fft_dif4_pass_scalar(Cx* data, std::size_t n, std::size_t m, const Cx* w1,
                          const Cx* w2, const Cx* w3) {
  const std::size_t q = m >> 2;
  for (std::size_t k = 0; k < n; k += m) {
    Cx* x0 = data + k;
    Cx* x1 = x0 + q;
    Cx* x2 = x1 + q;
    Cx* x3 = x2 + q;
    for (std::size_t j = 0; j < q; ++j) {
      const Cx a = x0[j], b = x1[j], c = x2[j], d = x3[j];
      const Cx t0 = a + c, t1 = a - c, t2 = b + d;
      const Cx bd = b - d;
      const Cx t3(bd.imag(), -bd.real());  // -i (b - d)
      x0[j] = t0 + t2;
      x1[j] = cmul_s(t1 + t3, w1[j]);
      x2[j] = cmul_s(t0 - t2, w2[j]);
      x3[j] = cmul_s(t1 - t3, w3[j]);
    }
  }
}

void fft_dit4_pass_scalar(Cx* data, std::size_t n, std::size_t m, const Cx* w1,
                          const Cx* w2, const Cx* w3) {
  const std::size_t q = m >> 2;
  for (std::size_t k = 0; k < n; k += m) {
    Cx* x0 = data + k;
    Cx* x1 = x0 + q;
    Cx* x2 = x1 + q;
    Cx* x3 = x2 + q;
    for (std::size_t j = 0; j < q; ++j) {
      const Cx u0 = x0[j];
      const Cx u1 = cmul_s(x1[j], w1[j]);
      const Cx u2 = cmul_s(x2[j], w2[j]);
      const Cx u3 = cmul_s(x3[j], w3[j]);
      const Cx s02 = u0 + u2, d02 = u0 - u2;
      const Cx s13 = u1 + u3;
      const Cx d13 = u1 - u3;
      const Cx id13(-d13.imag(), d13.real());  // i (u1 - u3)
      x0[j] = s02 + s13;
      x1[j] = d02 + id13;
      x2[j] = s02 - s13;
      x3[j] = d02 - id13;
    }
  }
}

void pointwise_mat2_mul_scalar(const Cx* const p[4], const Cx* const q[4],
                               Cx* const r[4], std::size_t n) {
  auto cmul = [](Cx a, Cx b) {
    return Cx(a.real() * b.real() - a.imag() * b.imag(),
              a.real() * b.imag() + a.imag() * b.real());
  };
  for (std::size_t i = 0; i < n; ++i) {
    r[0][i] = cmul(p[0][i], q[0][i]) + cmul(p[1][i], q[2][i]);
    r[1][i] = cmul(p[0][i], q[1][i]) + cmul(p[1][i], q[3][i]);
    r[2][i] = cmul(p[2][i], q[0][i]) + cmul(p[3][i], q[2][i]);
    r[3][i] = cmul(p[2][i], q[1][i]) + cmul(p[3][i], q[3][i]);
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable t{tes4sb_sweep_scalar,   fft_pass_scalar,
                             fft_dif4_pass_scalar,  fft_dit4_pass_scalar,
                             pointwise_mat2_mul_scalar, "scalar"};
  return t;
}

}  // namespace zsnft::simd
