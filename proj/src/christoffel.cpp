#include "qpert/christoffel.hpp"

#include <cmath>
#include <stdexcept>

namespace qpert {

double Christoffel::max_abs() const {
  double m = 0.0;
  for (int l = 0; l < 4; ++l)
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) m = std::max(m, std::abs(coeffs[l][a][b]));
  return m;
}

double Christoffel::symmetrization_residual() const {
  double m = 0.0;
  for (int l = 0; l < 4; ++l)
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) m = std::max(m, std::abs(coeffs[l][a][b] - coeffs[l][b][a]));
  return m;
}

Christoffel christoffel_at(const MetricField& metric, const Vec4& x, double h) {
  if (h < 0.0) throw std::runtime_error("geometry: finite-difference step must be positive");
  if (h == 0.0) {
    double scale = 0.0;
    for (int i = 0; i < 4; ++i) scale = std::max(scale, std::abs(x[i]));
    h = 1e-5 * std::max(1.0, scale);
  }

  const Mat4 ginv = metric.inverse_at(x);  // throws if degenerate

  // dg[c][a][b] = d_c g_{ab} by central differences.
  double dg[4][4][4];
  for (int c = 0; c < 4; ++c) {
    Vec4 xp = x, xm = x;
    xp[c] += h;
    xm[c] -= h;
    const Mat4 gp = metric.eval(xp);
    const Mat4 gm = metric.eval(xm);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) dg[c][a][b] = (gp[a][b] - gm[a][b]) / (2.0 * h);
  }

  Christoffel out;
  out.point = x;
  out.step = h;
  for (int l = 0; l < 4; ++l)
    for (int a = 0; a < 4; ++a)
      for (int b = a; b < 4; ++b) {
        double s = 0.0;
        for (int r = 0; r < 4; ++r)
          s += 0.5 * ginv[l][r] * (dg[a][r][b] + dg[b][r][a] - dg[r][a][b]);
        out.coeffs[l][a][b] = s;
        out.coeffs[l][b][a] = s;  // exact symmetrization
      }
  return out;
}

std::array<std::array<double, 3>, 4> phase_connection_coeffs(const Christoffel& gamma,
                                                             const FourMomentum& p) {
  if (!p.on_shell || !p.shell_residual_ok(1e-9))
    throw std::runtime_error("geometry: phase connection requires on-shell momentum");
  return phase_connection_coeffs_free(gamma, p.components());
}

std::array<std::array<double, 3>, 4> phase_connection_coeffs_free(const Christoffel& gamma,
                                                                  const Vec4& pc) {
  std::array<std::array<double, 3>, 4> out{};
  for (int a = 0; a < 4; ++a)
    for (int i = 1; i <= 3; ++i) {
      double s = -gamma.coeffs[0][a][i] * pc[0];
      for (int j = 1; j <= 3; ++j) s -= gamma.coeffs[j][a][i] * pc[j];
      out[a][i - 1] = s;
    }
  return out;
}

Vec4 halfdensity_connection_coeff(const Christoffel& gamma, const Mat4& ginv,
                                  const FourMomentum& p) {
  if (!p.on_shell || !p.shell_residual_ok(1e-9))
    throw std::runtime_error("geometry: phase connection requires on-shell momentum");
  if (p.energy <= 0.0)
    throw std::runtime_error("geometry: null momentum in massive half-density connection");
  const Vec4 pc = p.components();
  Vec4 out{};
  for (int a = 0; a < 4; ++a) {
    double first = 0.0;
    for (int i = 1; i <= 3; ++i)
      for (int j = 1; j <= 3; ++j) first += gamma.coeffs[0][a][i] * ginv[i][j] * pc[j];
    double second = 0.0;
    for (int i = 1; i <= 3; ++i) second += gamma.coeffs[i][a][i];
    out[a] = -first / pc[0] + 0.5 * second;
  }
  return out;
}

}  // namespace qpert
