#include "qpert/transport.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace qpert {

double metric_dot(const MetricField& metric, const Vec4& x, const Vec4& u, const Vec4& w) {
  const Mat4 g = metric.eval(x);
  double s = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) s += g[i][j] * u[i] * w[j];
  return s;
}

Vec4 covariant_acceleration(const MetricField& metric, const Worldline& wl, double t,
                            double fd_step) {
  const Vec4 x = wl.position(t);
  const Vec4 u = wl.velocity(t);
  const Vec4 udot = wl.coordinate_accel(t);
  const Christoffel gam = christoffel_at(metric, x, fd_step);
  Vec4 a = udot;
  for (int l = 0; l < 4; ++l)
    for (int m = 0; m < 4; ++m)
      for (int n = 0; n < 4; ++n) a[l] += gam.coeffs[l][m][n] * u[m] * u[n];
  return a;
}

namespace {

using Rhs = std::function<Vec4(double, const Vec4&)>;

// Dormand-Prince 5(4) with adaptive step control.
TransportPath integrate(const Rhs& rhs, const Vec4& v0, double t_begin, double t_end,
                        const TransportOptions& opt) {
  static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static const double a21 = 1.0 / 5;
  static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                      a54 = -212.0 / 729;
  static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                      a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                      b6 = 11.0 / 84;
  static const double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                      e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                      e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

  const double span = t_end - t_begin;
  if (span == 0.0) throw std::runtime_error("transport: empty parameter span");
  const double dir = span > 0 ? 1.0 : -1.0;

  TransportPath path;
  const int n_out = std::max(2, opt.n_output);
  path.t.reserve(n_out);
  path.v.reserve(n_out);
  path.t.push_back(t_begin);
  path.v.push_back(v0);
  int next_out = 1;

  double t = t_begin;
  Vec4 v = v0;
  double h = dir * std::abs(span) / 64.0;
  Vec4 k1 = rhs(t, v);

  const double h_min = 1e-14 * std::abs(span);
  int rejects_in_a_row = 0;

  while (dir * (t_end - t) > 0.0) {
    const double t_out = t_begin + span * next_out / (n_out - 1);
    if (dir * (t + h - t_out) > 0.0) h = t_out - t;
    if (dir * (t + h - t_end) > 0.0) h = t_end - t;

    auto stage = [&](double frac, const std::initializer_list<std::pair<double, const Vec4*>>& ks) {
      Vec4 y = v;
      for (const auto& [coef, k] : ks)
        for (int i = 0; i < 4; ++i) y[i] += h * coef * (*k)[i];
      return rhs(t + frac * h, y);
    };

    const Vec4 k2 = stage(c2, {{a21, &k1}});
    const Vec4 k3 = stage(c3, {{a31, &k1}, {a32, &k2}});
    const Vec4 k4 = stage(c4, {{a41, &k1}, {a42, &k2}, {a43, &k3}});
    const Vec4 k5 = stage(c5, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}});
    const Vec4 k6 = stage(1.0, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}});

    Vec4 v5 = v;
    for (int i = 0; i < 4; ++i)
      v5[i] += h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    const Vec4 k7 = rhs(t + h, v5);

    double err = 0.0;
    for (int i = 0; i < 4; ++i) {
      const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                             e7 * k7[i]);
      const double sc = opt.atol + opt.rtol * std::max(std::abs(v[i]), std::abs(v5[i]));
      err = std::max(err, std::abs(ei) / sc);
    }

    if (err <= 1.0) {
      t += h;
      v = v5;
      k1 = k7;  // FSAL
      rejects_in_a_row = 0;
      if (std::abs(t - t_out) < 1e-12 * std::abs(span) && next_out < n_out) {
        path.t.push_back(t);
        path.v.push_back(v);
        ++next_out;
      }
    } else {
      ++rejects_in_a_row;
      if (rejects_in_a_row > 50)
        throw std::runtime_error("transport: ODE step failure at parameter t = " +
                                 std::to_string(t));
    }
    const double fac = std::clamp(0.9 * std::pow(std::max(err, 1e-16), -0.2), 0.2, 5.0);
    h *= fac;
    if (std::abs(h) < h_min)
      throw std::runtime_error("transport: ODE step underflow at parameter t = " +
                               std::to_string(t));
  }

  if (static_cast<int>(path.t.size()) < n_out) {
    path.t.push_back(t);
    path.v.push_back(v);
  }
  return path;
}

}  // namespace

TransportPath parallel_transport(const MetricField& metric, const Worldline& wl, const Vec4& v0,
                                 double t_begin, double t_end, const TransportOptions& opt) {
  auto rhs = [&](double t, const Vec4& v) {
    const Vec4 x = wl.position(t);
    const Vec4 u = wl.velocity(t);
    const Christoffel gam = christoffel_at(metric, x, opt.fd_step);
    Vec4 dv{};
    for (int l = 0; l < 4; ++l)
      for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) dv[l] -= gam.coeffs[l][m][n] * u[m] * v[n];
    return dv;
  };
  return integrate(rhs, v0, t_begin, t_end, opt);
}

TransportPath fermi_transport(const MetricField& metric, const Worldline& wl, const Vec4& v0,
                              double t_begin, double t_end, const TransportOptions& opt) {
  auto rhs = [&](double t, const Vec4& v) {
    const Vec4 x = wl.position(t);
    const Vec4 u = wl.velocity(t);
    const Christoffel gam = christoffel_at(metric, x, opt.fd_step);
    const Vec4 a = covariant_acceleration(metric, wl, t, opt.fd_step);
    const Mat4 g = metric.eval(x);
    double gva = 0.0, gvu = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        gva += g[i][j] * v[i] * a[j];
        gvu += g[i][j] * v[i] * u[j];
      }
    Vec4 dv{};
    for (int l = 0; l < 4; ++l) {
      for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) dv[l] -= gam.coeffs[l][m][n] * u[m] * v[n];
      // (1,3)-signature Fermi-Walker term: preserves the tangent and all
      // pairwise inner products.
      dv[l] += gvu * a[l] - gva * u[l];
    }
    return dv;
  };
  return integrate(rhs, v0, t_begin, t_end, opt);
}

}  // namespace qpert
