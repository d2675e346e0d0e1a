#include "qpert/kernels.hpp"

#include <cstdlib>
#include <stdexcept>

namespace qpert::kernels {

void phases_scalar(const double*, double, double*, double*, std::size_t);
void pole_sum_scalar(const double*, const double*, const double*, const double*, std::size_t,
                     double, double, double*, double*);
void weighted_sum_scalar(const double*, const double*, const double*, std::size_t, double*,
                         double*);

#if defined(__x86_64__) || defined(_M_X64)
void phases_avx2(const double*, double, double*, double*, std::size_t);
void pole_sum_avx2(const double*, const double*, const double*, const double*, std::size_t,
                   double, double, double*, double*);
void weighted_sum_avx2(const double*, const double*, const double*, std::size_t, double*,
                       double*);
#endif
#if defined(__aarch64__)
void phases_neon(const double*, double, double*, double*, std::size_t);
void pole_sum_neon(const double*, const double*, const double*, const double*, std::size_t,
                   double, double, double*, double*);
void weighted_sum_neon(const double*, const double*, const double*, std::size_t, double*,
                       double*);
#endif

namespace {

const Backend kScalar{"scalar", phases_scalar, pole_sum_scalar, weighted_sum_scalar};
#if defined(__x86_64__) || defined(_M_X64)
const Backend kAvx2{"avx2", phases_avx2, pole_sum_avx2, weighted_sum_avx2};
#endif
#if defined(__aarch64__)
const Backend kNeon{"neon", phases_neon, pole_sum_neon, weighted_sum_neon};
#endif

const Backend* pick_auto() {
#if defined(__x86_64__) || defined(_M_X64)
  if (__builtin_cpu_supports("avx2")) return &kAvx2;
#endif
#if defined(__aarch64__)
  return &kNeon;
#endif
  return &kScalar;
}

const Backend* resolve(const std::string& name) {
  if (name == "scalar") return &kScalar;
#if defined(__x86_64__) || defined(_M_X64)
  if (name == "avx2") {
    if (!__builtin_cpu_supports("avx2"))
      throw std::runtime_error("kernels: avx2 not supported on this cpu");
    return &kAvx2;
  }
#endif
#if defined(__aarch64__)
  if (name == "neon") return &kNeon;
#endif
  if (name == "auto") {
    if (const char* env = std::getenv("QPERT_KERNEL"); env && *env && std::string(env) != "auto")
      return resolve(env);
    return pick_auto();
  }
  throw std::runtime_error("kernels: unknown backend '" + name + "'");
}

const Backend*& current() {
  static const Backend* b = resolve("auto");
  return b;
}

}  // namespace

const Backend& active() { return *current(); }

void select(const std::string& name) { current() = resolve(name); }

std::string active_name() { return current()->name; }

std::vector<std::string> available() {
  std::vector<std::string> out{"scalar"};
#if defined(__x86_64__) || defined(_M_X64)
  if (__builtin_cpu_supports("avx2")) out.push_back("avx2");
#endif
#if defined(__aarch64__)
  out.push_back("neon");
#endif
  return out;
}

const Backend& scalar_backend() { return kScalar; }

}  // namespace qpert::kernels
