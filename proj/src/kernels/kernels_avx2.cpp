#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>
#include <cstddef>

namespace qpert::kernels {

namespace {

// Cody-Waite split of pi/2 for two-step range reduction.
constexpr double kPio2Hi = 1.57079632679489655800e+00;
constexpr double kPio2Lo = 6.12323399573676603587e-17;
constexpr double kTwoOverPi = 6.36619772367581382433e-01;

// fdlibm kernel polynomial coefficients on |r| <= pi/4.
constexpr double S1 = -1.66666666666666324348e-01;
constexpr double S2 = 8.33333333332248946124e-03;
constexpr double S3 = -1.98412698298579493134e-04;
constexpr double S4 = 2.75573137070700676789e-06;
constexpr double S5 = -2.50507602534068634195e-08;
constexpr double S6 = 1.58969099521155010221e-10;
constexpr double C1 = 4.16666666666666019037e-02;
constexpr double C2 = -1.38888888888741095749e-03;
constexpr double C3 = 2.48015872894767294178e-05;
constexpr double C4 = -2.75573143513906633035e-07;
constexpr double C5 = 2.08757232129817482790e-09;
constexpr double C6 = -1.13596475577881948265e-11;

inline __m256d poly_sin(__m256d r, __m256d r2) {
  __m256d p = _mm256_set1_pd(S6);
  p = _mm256_fmadd_pd(p, r2, _mm256_set1_pd(S5));
  p = _mm256_fmadd_pd(p, r2, _mm256_set1_pd(S4));
  p = _mm256_fmadd_pd(p, r2, _mm256_set1_pd(S3));
  p = _mm256_fmadd_pd(p, r2, _mm256_set1_pd(S2));
  p = _mm256_fmadd_pd(p, r2, _mm256_set1_pd(S1));
  return _mm256_fmadd_pd(_mm256_mul_pd(p, r2), r, r);  // r + r^3 * poly
}

inline __m256d poly_cos(__m256d r2) {
  __m256d p = _mm256_set1_pd(C6);
  p = _mm256_fmadd_pd(p, r2, _mm256_set1_pd(C5));
  p = _mm256_fmadd_pd(p, r2, _mm256_set1_pd(C4));
  p = _mm256_fmadd_pd(p, r2, _mm256_set1_pd(C3));
  p = _mm256_fmadd_pd(p, r2, _mm256_set1_pd(C2));
  p = _mm256_fmadd_pd(p, r2, _mm256_set1_pd(C1));
  __m256d r4 = _mm256_mul_pd(r2, r2);
  __m256d c = _mm256_fmadd_pd(p, r4, _mm256_set1_pd(1.0));
  return _mm256_fnmadd_pd(_mm256_set1_pd(0.5), r2, c);  // 1 - r^2/2 + r^4 poly
}

// Quadrant-folded sincos for the 4 lanes of y.
inline void sincos4(__m256d y, __m256d* s_out, __m256d* c_out) {
  const __m256d q = _mm256_round_pd(_mm256_mul_pd(y, _mm256_set1_pd(kTwoOverPi)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(q, _mm256_set1_pd(kPio2Hi), y);
  r = _mm256_fnmadd_pd(q, _mm256_set1_pd(kPio2Lo), r);
  const __m256d r2 = _mm256_mul_pd(r, r);
  const __m256d sr = poly_sin(r, r2);
  const __m256d cr = poly_cos(r2);

  // q mod 4 decides the quadrant swap/sign.
  const __m128i qi = _mm256_cvtpd_epi32(q);
  alignas(16) int qbits[4];
  _mm_store_si128(reinterpret_cast<__m128i*>(qbits), qi);
  alignas(32) double srs[4], crs[4], s[4], c[4];
  _mm256_store_pd(srs, sr);
  _mm256_store_pd(crs, cr);
  for (int lane = 0; lane < 4; ++lane) {
    switch (qbits[lane] & 3) {
      case 0: s[lane] = srs[lane]; c[lane] = crs[lane]; break;
      case 1: s[lane] = crs[lane]; c[lane] = -srs[lane]; break;
      case 2: s[lane] = -srs[lane]; c[lane] = -crs[lane]; break;
      default: s[lane] = -crs[lane]; c[lane] = srs[lane]; break;
    }
  }
  *s_out = _mm256_load_pd(s);
  *c_out = _mm256_load_pd(c);
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

void phases_avx2(const double* x, double t, double* re, double* im, std::size_t n) {
  const __m256d tv = _mm256_set1_pd(t);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d y = _mm256_mul_pd(tv, _mm256_loadu_pd(x + j));
    __m256d s, c;
    sincos4(y, &s, &c);
    _mm256_storeu_pd(re + j, c);
    _mm256_storeu_pd(im + j, s);
  }
  for (; j < n; ++j) {
    re[j] = std::cos(t * x[j]);
    im[j] = std::sin(t * x[j]);
  }
}

void pole_sum_avx2(const double* w, const double* re, const double* im, const double* x,
                   std::size_t n, double pole, double eps, double* out_re, double* out_im) {
  const __m256d pv = _mm256_set1_pd(pole);
  const __m256d ev = _mm256_set1_pd(eps);
  const __m256d e2 = _mm256_set1_pd(eps * eps);
  __m256d accr = _mm256_setzero_pd();
  __m256d acci = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + j), pv);
    const __m256d inv = _mm256_div_pd(_mm256_set1_pd(1.0), _mm256_fmadd_pd(d, d, e2));
    const __m256d wv = _mm256_loadu_pd(w + j);
    const __m256d nr = _mm256_mul_pd(wv, _mm256_loadu_pd(re + j));
    const __m256d ni = _mm256_mul_pd(wv, _mm256_loadu_pd(im + j));
    accr = _mm256_add_pd(accr,
                         _mm256_mul_pd(_mm256_fnmadd_pd(ni, ev, _mm256_mul_pd(nr, d)), inv));
    acci = _mm256_add_pd(acci,
                         _mm256_mul_pd(_mm256_fmadd_pd(nr, ev, _mm256_mul_pd(ni, d)), inv));
  }
  double sr = hsum(accr), si = hsum(acci);
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

void weighted_sum_avx2(const double* w, const double* re, const double* im, std::size_t n,
                       double* out_re, double* out_im) {
  __m256d accr = _mm256_setzero_pd();
  __m256d acci = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d wv = _mm256_loadu_pd(w + j);
    accr = _mm256_fmadd_pd(wv, _mm256_loadu_pd(re + j), accr);
    acci = _mm256_fmadd_pd(wv, _mm256_loadu_pd(im + j), acci);
  }
  double sr = hsum(accr), si = hsum(acci);
  for (; j < n; ++j) {
    sr += w[j] * re[j];
    si += w[j] * im[j];
  }
  *out_re = sr;
  *out_im = si;
}

}  // namespace qpert::kernels

#endif  // x86-64
