#include "qpert/quadrature.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace qpert {

namespace {

struct GLTable {
  std::vector<double> x, w;
};

GLTable compute_gl(int n) {
  GLTable t;
  t.x.resize(n);
  t.w.resize(n);
  for (int i = 0; i < n; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    const double dp = n * (x * p1 - p0) / (x * x - 1.0);
    t.x[n - 1 - i] = x;
    t.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return t;
}

const GLTable& gl_table(int n) {
  static std::map<int, GLTable> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gl(n)).first;
  return it->second;
}

}  // namespace

const std::vector<double>& GaussLegendre::nodes(int order) { return gl_table(order).x; }
const std::vector<double>& GaussLegendre::weights(int order) { return gl_table(order).w; }

void CompositeRule::append_interval(double a, double b, int panels, int order) {
  if (b <= a || panels < 1) return;
  const auto& xn = GaussLegendre::nodes(order);
  const auto& wn = GaussLegendre::weights(order);
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    const double mid = lo + 0.5 * h;
    for (std::size_t i = 0; i < xn.size(); ++i) {
      x.push_back(mid + 0.5 * h * xn[i]);
      w.push_back(0.5 * h * wn[i]);
    }
  }
}

void CompositeRule::append_refined(double a, double b, double toward, double min_len, int order) {
  if (b <= a) return;
  // Geometric bisection toward one endpoint.
  if (toward <= a + 1e-300) {
    double hi = b;
    while (hi - a > min_len) {
      const double mid = a + 0.5 * (hi - a);
      append_interval(mid, hi, 1, order);
      hi = mid;
    }
    append_interval(a, hi, 1, order);
  } else if (toward >= b - 1e-300) {
    double lo = a;
    while (b - lo > min_len) {
      const double mid = lo + 0.5 * (b - lo);
      append_interval(lo, mid, 1, order);
      lo = mid;
    }
    append_interval(lo, b, 1, order);
  } else {
    append_refined(a, toward, toward, min_len, order);
    append_refined(toward, b, toward, min_len, order);
  }
}

void EpsSchedule::validate() const {
  if (eps.empty()) throw std::runtime_error("numerics: empty epsilon schedule");
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (eps[i] <= 0.0) throw std::runtime_error("numerics: epsilon values must be positive");
    if (i > 0 && eps[i] >= eps[i - 1])
      throw std::runtime_error("numerics: epsilon schedule must decrease strictly");
  }
  if (order < 1) throw std::runtime_error("numerics: extrapolation order must be >= 1");
}

Extrapolation richardson_extrapolate(const std::vector<double>& eps, const std::vector<cplx>& f,
                                     int order) {
  if (eps.size() != f.size() || eps.empty())
    throw std::runtime_error("numerics: extrapolation input size mismatch");
  const int use = std::min<int>(order + 1, static_cast<int>(eps.size()));
  const int off = static_cast<int>(eps.size()) - use;
  std::vector<cplx> tab(f.begin() + off, f.end());
  std::vector<double> e(eps.begin() + off, eps.end());
  cplx prev = tab.back();
  double corr = 0.0;
  for (int level = 1; level < use; ++level) {
    for (int i = use - 1; i >= level; --i)
      tab[i] = tab[i] + (tab[i] - tab[i - 1]) * (e[i] / (e[i - level] - e[i]));
    corr = std::abs(tab[use - 1] - prev);
    prev = tab[use - 1];
  }
  return {tab[use - 1], corr};
}

double TestFunction::operator()(const Vec3& k) const {
  const Vec3 d = k - center;
  const double u2 = dot3(d, d) / (width * width);
  if (family == Family::gaussian) return std::exp(-0.5 * u2);
  if (u2 >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - u2));
}

double TestFunction::box_halfwidth() const {
  // gaussian: exp(-u^2/2) < 1e-14 for u > 8.03
  return family == Family::gaussian ? 8.1 * width : width;
}

cplx integrate_box3(const TestFunction& phi, int n,
                    const std::function<cplx(const Vec3&, double)>& f_times_phi) {
  const auto& xn = GaussLegendre::nodes(n);
  const auto& wn = GaussLegendre::weights(n);
  const double hw = phi.box_halfwidth();
  cplx acc(0.0, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        const Vec3 k{phi.center[0] + hw * xn[i], phi.center[1] + hw * xn[j],
                     phi.center[2] + hw * xn[l]};
        const double wgt = hw * hw * hw * wn[i] * wn[j] * wn[l];
        const double pv = phi(k);
        if (pv == 0.0) continue;
        acc += wgt * f_times_phi(k, pv);
      }
  return acc;
}

}  // namespace qpert
