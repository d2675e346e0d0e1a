#include "qpert/worldline.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace qpert {

CubicSpline::CubicSpline(std::vector<double> t, std::vector<double> y)
    : t_(std::move(t)), y_(std::move(y)) {
  const size_t n = t_.size();
  if (n < 3 || y_.size() != n) throw std::runtime_error("worldline: need at least 3 nodes");
  for (size_t i = 1; i < n; ++i)
    if (t_[i] <= t_[i - 1]) throw std::runtime_error("worldline: node parameters must increase");

  // Natural spline: tridiagonal solve for second derivatives.
  std::vector<double> a(n, 0.0), b(n, 0.0), c(n, 0.0), d(n, 0.0);
  b[0] = b[n - 1] = 1.0;
  for (size_t i = 1; i + 1 < n; ++i) {
    const double hp = t_[i] - t_[i - 1];
    const double hn = t_[i + 1] - t_[i];
    a[i] = hp / 6.0;
    b[i] = (hp + hn) / 3.0;
    c[i] = hn / 6.0;
    d[i] = (y_[i + 1] - y_[i]) / hn - (y_[i] - y_[i - 1]) / hp;
  }
  m_.assign(n, 0.0);
  std::vector<double> cp(n, 0.0), dp(n, 0.0);
  cp[0] = c[0] / b[0];
  dp[0] = d[0] / b[0];
  for (size_t i = 1; i < n; ++i) {
    const double den = b[i] - a[i] * cp[i - 1];
    cp[i] = c[i] / den;
    dp[i] = (d[i] - a[i] * dp[i - 1]) / den;
  }
  m_[n - 1] = dp[n - 1];
  for (size_t i = n - 1; i-- > 0;) m_[i] = dp[i] - cp[i] * m_[i + 1];
}

int CubicSpline::segment(double t) const {
  if (t <= t_.front()) return 0;
  if (t >= t_.back()) return static_cast<int>(t_.size()) - 2;
  int lo = 0, hi = static_cast<int>(t_.size()) - 1;
  while (hi - lo > 1) {
    const int mid = (lo + hi) / 2;
    (t_[mid] <= t ? lo : hi) = mid;
  }
  return lo;
}

double CubicSpline::value(double t) const {
  const int i = segment(t);
  const double h = t_[i + 1] - t_[i];
  const double A = (t_[i + 1] - t) / h, B = (t - t_[i]) / h;
  return A * y_[i] + B * y_[i + 1] +
         ((A * A * A - A) * m_[i] + (B * B * B - B) * m_[i + 1]) * h * h / 6.0;
}

double CubicSpline::deriv(double t) const {
  const int i = segment(t);
  const double h = t_[i + 1] - t_[i];
  const double A = (t_[i + 1] - t) / h, B = (t - t_[i]) / h;
  return (y_[i + 1] - y_[i]) / h +
         ((3.0 * B * B - 1.0) * m_[i + 1] - (3.0 * A * A - 1.0) * m_[i]) * h / 6.0;
}

double CubicSpline::deriv2(double t) const {
  const int i = segment(t);
  const double h = t_[i + 1] - t_[i];
  const double A = (t_[i + 1] - t) / h, B = (t - t_[i]) / h;
  return A * m_[i] + B * m_[i + 1];
}

Worldline Worldline::analytic(PosFn x, VelFn v, VelFn vdot, double t0, double t1, bool geodesic) {
  Worldline w;
  w.pos_ = std::move(x);
  w.vel_ = std::move(v);
  w.acc_ = std::move(vdot);
  w.t0_ = t0;
  w.t1_ = t1;
  w.geodesic_ = geodesic;
  return w;
}

Worldline Worldline::from_nodes(const std::vector<std::array<double, 5>>& nodes) {
  if (nodes.size() < 3) throw std::runtime_error("worldline: need at least 3 nodes");
  std::vector<double> t;
  std::array<std::vector<double>, 4> comp;
  for (const auto& n : nodes) {
    t.push_back(n[0]);
    for (int c = 0; c < 4; ++c) comp[c].push_back(n[c + 1]);
  }
  auto sx = std::make_shared<std::array<CubicSpline, 4>>();
  for (int c = 0; c < 4; ++c) (*sx)[c] = CubicSpline(t, comp[c]);

  Worldline w;
  w.t0_ = t.front();
  w.t1_ = t.back();
  w.geodesic_ = false;
  w.pos_ = [sx](double tau) {
    return Vec4{(*sx)[0].value(tau), (*sx)[1].value(tau), (*sx)[2].value(tau), (*sx)[3].value(tau)};
  };
  w.vel_ = [sx](double tau) {
    return Vec4{(*sx)[0].deriv(tau), (*sx)[1].deriv(tau), (*sx)[2].deriv(tau), (*sx)[3].deriv(tau)};
  };
  w.acc_ = [sx](double tau) {
    return Vec4{(*sx)[0].deriv2(tau), (*sx)[1].deriv2(tau), (*sx)[2].deriv2(tau),
                (*sx)[3].deriv2(tau)};
  };
  return w;
}

Worldline Worldline::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("worldline: cannot open '" + path + "'");
  nlohmann::json j;
  in >> j;
  if (!j.is_array()) throw std::runtime_error("worldline: expected a JSON array of nodes");
  std::vector<std::array<double, 5>> nodes;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != 5)
      throw std::runtime_error("worldline: each node must be [t, x0, x1, x2, x3]");
    std::array<double, 5> n{};
    for (int i = 0; i < 5; ++i) n[i] = row[i].get<double>();
    nodes.push_back(n);
  }
  return from_nodes(nodes);
}

Vec4 Worldline::position(double t) const { return pos_(t); }
Vec4 Worldline::velocity(double t) const { return vel_(t); }
Vec4 Worldline::coordinate_accel(double t) const { return acc_(t); }

double Worldline::unit_tangent_residual(const MetricField& metric, int n) const {
  double worst = 0.0;
  for (int k = 0; k < n; ++k) {
    const double t = t0_ + (t1_ - t0_) * (k + 0.5) / n;
    const Mat4 g = metric.eval(position(t));
    const Vec4 u = velocity(t);
    double s = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) s += g[i][j] * u[i] * u[j];
    worst = std::max(worst, std::abs(s - 1.0));
  }
  return worst;
}

Worldline minkowski_line(const Vec3& beta3, double t0, double t1) {
  const double b2 = dot3(beta3, beta3);
  if (b2 >= 1.0) throw std::runtime_error("worldline: spatial speed must be subluminal");
  const double gamma = 1.0 / std::sqrt(1.0 - b2);
  const Vec4 u{gamma, gamma * beta3[0], gamma * beta3[1], gamma * beta3[2]};
  return Worldline::analytic([u](double t) { return Vec4{u[0] * t, u[1] * t, u[2] * t, u[3] * t}; },
                             [u](double) { return u; }, [](double) { return Vec4{}; }, t0, t1,
                             true);
}

Worldline minkowski_uniform_acceleration(double alpha, double t0, double t1) {
  if (alpha <= 0.0) throw std::runtime_error("worldline: acceleration must be positive");
  return Worldline::analytic(
      [alpha](double tau) {
        return Vec4{std::sinh(alpha * tau) / alpha, std::cosh(alpha * tau) / alpha, 0.0, 0.0};
      },
      [alpha](double tau) {
        return Vec4{std::cosh(alpha * tau), std::sinh(alpha * tau), 0.0, 0.0};
      },
      [alpha](double tau) {
        return Vec4{alpha * std::sinh(alpha * tau), alpha * std::cosh(alpha * tau), 0.0, 0.0};
      },
      t0, t1, false);
}

Worldline schwarzschild_circular_orbit(double M, double R, double t0, double t1) {
  if (R <= 3.0 * M)
    throw std::runtime_error("worldline: circular orbit requires R > 3M");
  const double Omega = std::sqrt(M / (R * R * R));  // dphi/dt
  const double ut = 1.0 / std::sqrt(1.0 - 3.0 * M / R);
  const double uphi = Omega * ut;
  return Worldline::analytic(
      [=](double tau) {
        constexpr double half_pi = 1.5707963267948966;
        return Vec4{ut * tau, R, half_pi, uphi * tau};
      },
      [=](double) {
        return Vec4{ut, 0.0, 0.0, uphi};
      },
      [](double) { return Vec4{}; }, t0, t1, true);
}

Worldline schwarzschild_static_observer(double M, double R, double t0, double t1) {
  if (R <= 2.0 * M) throw std::runtime_error("worldline: static observer requires R > 2M");
  const double ut = 1.0 / std::sqrt(1.0 - 2.0 * M / R);
  return Worldline::analytic(
      [=](double tau) {
        constexpr double half_pi = 1.5707963267948966;
        return Vec4{ut * tau, R, half_pi, 0.0};
      },
      [=](double) {
        return Vec4{ut, 0.0, 0.0, 0.0};
      },
      [](double) { return Vec4{}; }, t0, t1, false);
}

}  // namespace qpert
