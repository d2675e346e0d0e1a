#ifndef QPERT_TRANSPORT_HPP_
#define QPERT_TRANSPORT_HPP_

#include <vector>

#include "qpert/christoffel.hpp"
#include "qpert/worldline.hpp"

namespace qpert {

struct TransportOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  int n_output = 33;       // sample count along the span, endpoints included
  double fd_step = 0.0;    // Christoffel step; 0 = automatic
};

struct TransportPath {
  std::vector<double> t;
  std::vector<Vec4> v;
  const Vec4& front() const { return v.front(); }
  const Vec4& back() const { return v.back(); }
};

//! Solves nabla_xdot v = 0 along the worldline with an adaptive embedded
//! Runge-Kutta pair; g(v,v) is conserved within tolerance.
TransportPath parallel_transport(const MetricField& metric, const Worldline& wl, const Vec4& v0,
                                 double t_begin, double t_end, const TransportOptions& opt = {});

//! Solves nabla_xdot v = g(v,xdot) a - g(v,a) xdot, with a = nabla_xdot xdot.
//! Sign conventions follow the (1,3) signature fixed project-wide: the
//! tangent is preserved and all g-inner products are conserved. Reduces to
//! parallel transport on geodesics.
TransportPath fermi_transport(const MetricField& metric, const Worldline& wl, const Vec4& v0,
                              double t_begin, double t_end, const TransportOptions& opt = {});

//! Covariant acceleration a = nabla_xdot xdot at parameter t.
Vec4 covariant_acceleration(const MetricField& metric, const Worldline& wl, double t,
                            double fd_step = 0.0);

//! g-inner product of two vectors at a point.
double metric_dot(const MetricField& metric, const Vec4& x, const Vec4& u, const Vec4& w);

}  // namespace qpert

#endif  // QPERT_TRANSPORT_HPP_
