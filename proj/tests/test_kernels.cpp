#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "qpert/kernels.hpp"

using namespace qpert;

namespace {

struct BackendGuard {
  std::string saved = kernels::active_name();
  ~BackendGuard() { kernels::select(saved); }
};

}  // namespace

TEST_CASE("backend listing always includes the scalar reference") {
  const auto names = kernels::available();
  CHECK(std::find(names.begin(), names.end(), "scalar") != names.end());
  CHECK(!kernels::active_name().empty());
  CHECK_THROWS(kernels::select("no-such-backend"));
}

TEST_CASE("phases kernel agrees with libm on every backend") {
  BackendGuard guard;
  std::mt19937_64 rng(81);
  std::uniform_real_distribution<double> u(-40.0, 40.0);
  const std::size_t n = 1537;  // odd size exercises the scalar remainder
  std::vector<double> x(n);
  for (auto& v : x) v = u(rng);

  for (const double t : {0.5, 1.0, 2.0, 37.0, -3.0}) {
    std::vector<double> ref_re(n), ref_im(n);
    kernels::scalar_backend().phases(x.data(), t, ref_re.data(), ref_im.data(), n);
    for (std::size_t j = 0; j < n; ++j) {
      CHECK(std::abs(ref_re[j] - std::cos(t * x[j])) == 0.0);
      CHECK(std::abs(ref_im[j] - std::sin(t * x[j])) == 0.0);
    }
    for (const auto& name : kernels::available()) {
      kernels::select(name);
      std::vector<double> re(n), im(n);
      kernels::active().phases(x.data(), t, re.data(), im.data(), n);
      double worst = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        worst = std::max({worst, std::abs(re[j] - ref_re[j]), std::abs(im[j] - ref_im[j])});
      INFO("backend ", name, " t ", t);
      CHECK(worst <= 5e-13);
    }
  }
}

TEST_CASE("pole-sum kernel equivalence across backends") {
  BackendGuard guard;
  std::mt19937_64 rng(82);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  const std::size_t n = 1023;
  std::vector<double> w(n), re(n), im(n), x(n);
  for (std::size_t j = 0; j < n; ++j) {
    w[j] = u(rng);
    re[j] = u(rng);
    im[j] = u(rng);
    x[j] = u(rng);
  }
  for (const double pole : {0.7, -1.3})
    for (const double eps : {1e-1, 1e-3}) {
      double rr, ri;
      kernels::scalar_backend().pole_sum(w.data(), re.data(), im.data(), x.data(), n, pole, eps,
                                         &rr, &ri);
      const std::complex<double> ref(rr, ri);
      for (const auto& name : kernels::available()) {
        kernels::select(name);
        double ar, ai;
        kernels::active().pole_sum(w.data(), re.data(), im.data(), x.data(), n, pole, eps, &ar,
                                   &ai);
        INFO("backend ", name);
        CHECK(std::abs(std::complex<double>(ar, ai) - ref) <= 1e-9 * std::abs(ref) + 1e-12);
      }
    }
}

TEST_CASE("weighted-sum kernel equivalence across backends") {
  BackendGuard guard;
  std::mt19937_64 rng(83);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const std::size_t n = 997;
  std::vector<double> w(n), re(n), im(n);
  for (std::size_t j = 0; j < n; ++j) {
    w[j] = u(rng);
    re[j] = u(rng);
    im[j] = u(rng);
  }
  double rr, ri;
  kernels::scalar_backend().weighted_sum(w.data(), re.data(), im.data(), n, &rr, &ri);
  for (const auto& name : kernels::available()) {
    kernels::select(name);
    double ar, ai;
    kernels::active().weighted_sum(w.data(), re.data(), im.data(), n, &ar, &ai);
    INFO("backend ", name);
    CHECK(std::abs(ar - rr) <= 1e-12 * std::max(1.0, std::abs(rr)));
    CHECK(std::abs(ai - ri) <= 1e-12 * std::max(1.0, std::abs(ri)));
  }
}
