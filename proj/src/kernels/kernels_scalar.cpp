#include <cmath>
#include <cstddef>

namespace qpert::kernels {

void phases_scalar(const double* x, double t, double* re, double* im, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    re[j] = std::cos(t * x[j]);
    im[j] = std::sin(t * x[j]);
  }
}

void pole_sum_scalar(const double* w, const double* re, const double* im, const double* x,
                     std::size_t n, double pole, double eps, double* out_re, double* out_im) {
  double sr = 0.0, si = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double d = x[j] - pole;
    const double inv = 1.0 / (d * d + eps * eps);
    // (re + i im)/(d - i eps) = (re + i im)(d + i eps) inv
    const double nr = w[j] * re[j];
    const double ni = w[j] * im[j];
    sr += (nr * d - ni * eps) * inv;
    si += (nr * eps + ni * d) * inv;
  }
  *out_re = sr;
  *out_im = si;
}

void weighted_sum_scalar(const double* w, const double* re, const double* im, std::size_t n,
                         double* out_re, double* out_im) {
  double sr = 0.0, si = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    sr += w[j] * re[j];
    si += w[j] * im[j];
  }
  *out_re = sr;
  *out_im = si;
}

}  // namespace qpert::kernels
