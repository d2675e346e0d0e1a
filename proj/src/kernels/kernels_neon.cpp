#if defined(__aarch64__)

#include <arm_neon.h>

#include <cmath>
#include <cstddef>

namespace qpert::kernels {

// Phases stay on libm here; the arithmetic reductions use the f64x2 lanes.

void phases_neon(const double* x, double t, double* re, double* im, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    re[j] = std::cos(t * x[j]);
    im[j] = std::sin(t * x[j]);
  }
}

void pole_sum_neon(const double* w, const double* re, const double* im, const double* x,
                   std::size_t n, double pole, double eps, double* out_re, double* out_im) {
  const float64x2_t pv = vdupq_n_f64(pole);
  const float64x2_t ev = vdupq_n_f64(eps);
  const float64x2_t e2 = vdupq_n_f64(eps * eps);
  float64x2_t accr = vdupq_n_f64(0.0);
  float64x2_t acci = vdupq_n_f64(0.0);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const float64x2_t d = vsubq_f64(vld1q_f64(x + j), pv);
    const float64x2_t inv = vdivq_f64(vdupq_n_f64(1.0), vfmaq_f64(e2, d, d));
    const float64x2_t wv = vld1q_f64(w + j);
    const float64x2_t nr = vmulq_f64(wv, vld1q_f64(re + j));
    const float64x2_t ni = vmulq_f64(wv, vld1q_f64(im + j));
    accr = vaddq_f64(accr, vmulq_f64(vfmsq_f64(vmulq_f64(nr, d), ni, ev), inv));
    acci = vaddq_f64(acci, vmulq_f64(vfmaq_f64(vmulq_f64(ni, d), nr, ev), inv));
  }
  double sr = vaddvq_f64(accr), si = vaddvq_f64(acci);
  for (; j < n; ++j) {
    const double d = x[j] - pole;
    const double inv = 1.0 / (d * d + eps * eps);
    const double nr = w[j] * re[j];
    const double ni = w[j] * im[j];
    sr += (nr * d - ni * eps) * inv;
    si += (nr * eps + ni * d) * inv;
  }
  *out_re = sr;
  *out_im = si;
}

void weighted_sum_neon(const double* w, const double* re, const double* im, std::size_t n,
                       double* out_re, double* out_im) {
  float64x2_t accr = vdupq_n_f64(0.0);
  float64x2_t acci = vdupq_n_f64(0.0);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const float64x2_t wv = vld1q_f64(w + j);
    accr = vfmaq_f64(accr, wv, vld1q_f64(re + j));
    acci = vfmaq_f64(acci, wv, vld1q_f64(im + j));
  }
  double sr = vaddvq_f64(accr), si = vaddvq_f64(acci);
  for (; j < n; ++j) {
    sr += w[j] * re[j];
    si += w[j] * im[j];
  }
  *out_re = sr;
  *out_im = si;
}

}  // namespace qpert::kernels

#endif  // aarch64
