#include "qpert/metric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qpert {

namespace {

Mat4 minkowski_eval(const Vec4&) {
  Mat4 g{};
  g[0][0] = 1.0;
  g[1][1] = -1.0;
  g[2][2] = -1.0;
  g[3][3] = -1.0;
  return g;
}

Mat4 schwarzschild_diagonal_eval(double M, const Vec4& x) {
  const double r = x[1];
  const double th = x[2];
  if (r <= 2.0 * M)
    throw std::runtime_error("geometry: schwarzschild-diagonal chart requires r > 2M");
  const double f = 1.0 - 2.0 * M / r;
  Mat4 g{};
  g[0][0] = f;
  g[1][1] = -1.0 / f;
  g[2][2] = -r * r;
  g[3][3] = -r * r * std::sin(th) * std::sin(th);
  return g;
}

}  // namespace

MetricField MetricField::from_catalog(const std::string& id,
                                      const std::map<std::string, double>& params) {
  if (id == "minkowski") return MetricField(id, minkowski_eval);
  if (id == "schwarzschild-diagonal") {
    double M = 1.0;
    if (auto it = params.find("M"); it != params.end()) M = it->second;
    if (M <= 0.0) throw std::runtime_error("geometry: schwarzschild mass must be positive");
    return MetricField(id, [M](const Vec4& x) { return schwarzschild_diagonal_eval(M, x); });
  }
  throw std::runtime_error("geometry: unknown metric catalog id '" + id + "'");
}

MetricField MetricField::custom(std::string name, EvalFn fn) {
  return MetricField(std::move(name), std::move(fn));
}

Mat4 MetricField::eval(const Vec4& x) const {
  Mat4 g = fn_(x);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      const double s = std::max({1.0, std::abs(g[i][j]), std::abs(g[j][i])});
      if (std::abs(g[i][j] - g[j][i]) > 1e-12 * s)
        throw std::runtime_error("geometry: metric not symmetric at sampled point");
      const double sym = 0.5 * (g[i][j] + g[j][i]);
      g[i][j] = g[j][i] = sym;
    }
  return g;
}

Mat4 MetricField::inverse_at(const Vec4& x) const {
  const Mat4 g = eval(x);
  if (std::abs(mat4_det(g)) < 1e-14)
    throw std::runtime_error("geometry: metric degenerate at point");
  return mat4_inverse(g);
}

std::array<double, 4> symmetric_eigenvalues(const Mat4& m) {
  Mat4 a = m;
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) off += a[i][j] * a[i][j];
    if (off < 1e-28) break;
    for (int p = 0; p < 4; ++p)
      for (int q = p + 1; q < 4; ++q) {
        if (std::abs(a[p][q]) < 1e-16) continue;
        const double theta = 0.5 * (a[q][q] - a[p][p]) / a[p][q];
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < 4; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < 4; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
  }
  std::array<double, 4> ev{a[0][0], a[1][1], a[2][2], a[3][3]};
  std::sort(ev.begin(), ev.end(), std::greater<double>());
  return ev;
}

}  // namespace qpert
