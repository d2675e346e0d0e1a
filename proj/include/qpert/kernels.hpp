#ifndef QPERT_KERNELS_HPP_
#define QPERT_KERNELS_HPP_

#include <cstddef>
#include <string>
#include <vector>

namespace qpert::kernels {

//! Data-parallel inner loops of the verification quadratures. Every entry
//! has a scalar reference implementation; AVX2 (x86-64) and NEON (aarch64)
//! variants are selected at runtime and equivalence-tested against it.
struct Backend {
  const char* name;
  //! re[j] + i im[j] = e^{i t x[j]}
  void (*phases)(const double* x, double t, double* re, double* im, std::size_t n);
  //! sum_j w[j] (re[j] + i im[j]) / (x[j] - pole - i eps)
  void (*pole_sum)(const double* w, const double* re, const double* im, const double* x,
                   std::size_t n, double pole, double eps, double* out_re, double* out_im);
  //! sum_j w[j] (re[j] + i im[j])
  void (*weighted_sum)(const double* w, const double* re, const double* im, std::size_t n,
                       double* out_re, double* out_im);
};

const Backend& active();
//! "auto" (cpu detection, honoring QPERT_KERNEL), "scalar", "avx2", "neon".
void select(const std::string& name);
std::string active_name();
std::vector<std::string> available();

const Backend& scalar_backend();

}  // namespace qpert::kernels

#endif  // QPERT_KERNELS_HPP_
