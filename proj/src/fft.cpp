#include "zsnft/fft.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "zsnft/simd/kernels.hpp"

namespace zsnft {

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

Fft::Fft(std::size_t n) : n_(n) {
  if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("Fft: size must be a power of two");
  while ((std::size_t{1} << log2n_) < n_) ++log2n_;

  rev_.resize(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    std::size_t r = 0;
    for (unsigned b = 0; b < log2n_; ++b) r |= ((i >> b) & 1u) << (log2n_ - 1 - b);
    rev_[i] = static_cast<std::uint32_t>(r);
  }

  fwd_tw_.resize(log2n_);
  inv_tw_.resize(log2n_);
  for (unsigned s = 0; s < log2n_; ++s) {
    const std::size_t m = std::size_t{2} << s;
    const std::size_t half = m >> 1;
    fwd_tw_[s].resize(half);
    inv_tw_[s].resize(half);
    for (std::size_t j = 0; j < half; ++j) {
      const double ang = -2.0 * M_PI * static_cast<double>(j) / static_cast<double>(m);
      fwd_tw_[s][j] = {std::cos(ang), std::sin(ang)};
      inv_tw_[s][j] = std::conj(fwd_tw_[s][j]);
    }
  }

  // Radix-4 stage twiddles for the unordered convolution path.
  for (std::size_t m = n_; m >= 4; m >>= 2) {
    const std::size_t q = m >> 2;
    Radix4Tw fwd, inv;
    fwd.w1.resize(q);
    fwd.w2.resize(q);
    fwd.w3.resize(q);
    inv.w1.resize(q);
    inv.w2.resize(q);
    inv.w3.resize(q);
    for (std::size_t j = 0; j < q; ++j) {
      const double ang = -2.0 * M_PI * static_cast<double>(j) / static_cast<double>(m);
      const Cx w1{std::cos(ang), std::sin(ang)};
      const Cx w2{std::cos(2 * ang), std::sin(2 * ang)};
      const Cx w3{std::cos(3 * ang), std::sin(3 * ang)};
      fwd.w1[j] = w1;
      fwd.w2[j] = w2;
      fwd.w3[j] = w3;
      inv.w1[j] = std::conj(w1);
      inv.w2[j] = std::conj(w2);
      inv.w3[j] = std::conj(w3);
    }
    conv_fwd_.push_back(std::move(fwd));
    conv_inv_.push_back(std::move(inv));
  }
}

void Fft::permute(Cx* data) const {
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t r = rev_[i];
    if (i < r) std::swap(data[i], data[r]);
  }
}

void Fft::forward(Cx* data) const {
  permute(data);
  const auto pass = simd::kernels().fft_pass;
  for (unsigned s = 0; s < log2n_; ++s)
    pass(data, n_, std::size_t{2} << s, fwd_tw_[s].data());
}

void Fft::inverse(Cx* data) const {
  permute(data);
  const auto pass = simd::kernels().fft_pass;
  for (unsigned s = 0; s < log2n_; ++s)
    pass(data, n_, std::size_t{2} << s, inv_tw_[s].data());
  const double scale = 1.0 / static_cast<double>(n_);
  for (std::size_t i = 0; i < n_; ++i) data[i] *= scale;
}

void Fft::forward_conv(Cx* data) const {
  const auto pass = simd::kernels().fft_dif4_pass;
  std::size_t m = n_;
  for (const Radix4Tw& tw : conv_fwd_) {
    pass(data, n_, m, tw.w1.data(), tw.w2.data(), tw.w3.data());
    m >>= 2;
  }
  if (m == 2) {
    for (std::size_t k = 0; k < n_; k += 2) {
      const Cx u = data[k], v = data[k + 1];
      data[k] = u + v;
      data[k + 1] = u - v;
    }
  }
}

void Fft::inverse_conv(Cx* data) const {
  // Mirror of forward_conv: undo the radix-2 tail first, then the radix-4
  // stages from the smallest m up.
  std::size_t m_small = n_;
  for (std::size_t i = 0; i < conv_fwd_.size(); ++i) m_small >>= 2;
  if (m_small == 2) {
    for (std::size_t k = 0; k < n_; k += 2) {
      const Cx u = data[k], v = data[k + 1];
      data[k] = u + v;
      data[k + 1] = u - v;
    }
  }
  const auto pass = simd::kernels().fft_dit4_pass;
  for (std::size_t i = conv_inv_.size(); i-- > 0;) {
    const Radix4Tw& tw = conv_inv_[i];
    const std::size_t m = n_ >> (2 * i);
    pass(data, n_, m, tw.w1.data(), tw.w2.data(), tw.w3.data());
  }
  const double scale = 1.0 / static_cast<double>(n_);
  for (std::size_t i = 0; i < n_; ++i) data[i] *= scale;
}

const Fft& fft_plan(std::size_t n) {
  static std::mutex mtx;
  static std::map<std::size_t, Fft> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, Fft(n)).first;
  return it->second;
}

std::vector<Cx> czt_unit_circle(const std::vector<Cx>& coeffs, std::size_t n_points,
                                DD theta0, DD dtheta) {
  if (coeffs.empty() || n_points == 0) throw std::invalid_argument("czt_unit_circle: empty input");
  const std::size_t deg = coeffs.size() - 1;
  const std::size_t f = next_pow2(deg + n_points);
  const Fft& plan = fft_plan(f);

  const DD half = ddmath::mul_d(dtheta, 0.5);
  const DD neg_half = ddmath::mul_d(dtheta, -0.5);

  // u_k = c_k e^{i theta0 k} e^{i dtheta k^2 / 2}
  std::vector<Cx> u(f, Cx(0.0));
  for (std::size_t k = 0; k <= deg; ++k) {
    const double kd = static_cast<double>(k);
    u[k] = coeffs[k] * unit_phase(theta0, kd) * unit_phase(half, kd * kd);
  }

  // v_m = e^{-i dtheta m^2 / 2}, m in [-deg, n_points-1], wrapped mod f
  std::vector<Cx> v(f, Cx(0.0));
  const std::size_t m_max = std::max(deg, n_points - 1);
  for (std::size_t m = 0; m <= m_max; ++m) {
    const double md = static_cast<double>(m);
    const Cx val = unit_phase(neg_half, md * md);
    if (m < n_points) v[m] = val;
    if (m > 0 && m <= deg) v[f - m] = val;
  }

  plan.forward_conv(u.data());
  plan.forward_conv(v.data());
  for (std::size_t i = 0; i < f; ++i) u[i] *= v[i];
  plan.inverse_conv(u.data());

  std::vector<Cx> out(n_points);
  for (std::size_t j = 0; j < n_points; ++j) {
    const double jd = static_cast<double>(j);
    out[j] = u[j] * unit_phase(half, jd * jd);
  }
  return out;
}

}  // namespace zsnft
