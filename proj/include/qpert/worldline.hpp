#ifndef QPERT_WORLDLINE_HPP_
#define QPERT_WORLDLINE_HPP_

#include <functional>
#include <string>
#include <vector>

#include "qpert/metric.hpp"

namespace qpert {

//! Natural cubic spline through (t_i, y_i), used per coordinate for
//! worldlines imported as sampled nodes.
class CubicSpline {
 public:
  CubicSpline() = default;
  CubicSpline(std::vector<double> t, std::vector<double> y);
  double value(double t) const;
  double deriv(double t) const;
  double deriv2(double t) const;
  double t_min() const { return t_.front(); }
  double t_max() const { return t_.back(); }

 private:
  int segment(double t) const;
  std::vector<double> t_, y_, m_;  // m_: second derivatives at nodes
};

//! Parametrized detector worldline with unit future-pointing tangent.
//! Analytic worldlines carry exact tangent/acceleration callbacks; sampled
//! ones differentiate a cubic spline.
class Worldline {
 public:
  using PosFn = std::function<Vec4(double)>;
  using VelFn = std::function<Vec4(double)>;

  static Worldline analytic(PosFn x, VelFn v, VelFn vdot, double t0, double t1, bool geodesic);
  //! Nodes as rows (t, x0, x1, x2, x3); derivatives from the spline.
  static Worldline from_nodes(const std::vector<std::array<double, 5>>& nodes);
  static Worldline from_json_file(const std::string& path);

  Vec4 position(double t) const;
  Vec4 velocity(double t) const;
  Vec4 coordinate_accel(double t) const;  // d^2 x / dt^2, not the covariant one
  double t0() const { return t0_; }
  double t1() const { return t1_; }
  bool geodesic() const { return geodesic_; }

  //! max |g(xdot,xdot) - 1| over n probe points.
  double unit_tangent_residual(const MetricField& metric, int n = 32) const;

 private:
  Worldline() = default;
  PosFn pos_;
  VelFn vel_;
  VelFn acc_;
  double t0_ = 0.0, t1_ = 1.0;
  bool geodesic_ = false;
};

//! Worldline generators used by the built-in suites.
Worldline minkowski_line(const Vec3& beta3, double t0, double t1);
Worldline minkowski_uniform_acceleration(double alpha, double t0, double t1);
//! Circular geodesic orbit of the schwarzschild-diagonal metric at radius R.
Worldline schwarzschild_circular_orbit(double M, double R, double t0, double t1);
//! Static (accelerated) observer at radius R in schwarzschild-diagonal.
Worldline schwarzschild_static_observer(double M, double R, double t0, double t1);

}  // namespace qpert

#endif  // QPERT_WORLDLINE_HPP_
