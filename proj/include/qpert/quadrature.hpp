#ifndef QPERT_QUADRATURE_HPP_
#define QPERT_QUADRATURE_HPP_

#include <functional>
#include <vector>

#include "qpert/scaled.hpp"
#include "qpert/smallmat.hpp"

namespace qpert {

//! Gauss-Legendre nodes/weights on [-1, 1], cached per order (Newton on
//! the Legendre recurrence; deterministic node sets).
struct GaussLegendre {
  static const std::vector<double>& nodes(int order);
  static const std::vector<double>& weights(int order);
};

//! Composite rule: `panels` equal panels of the given order on [a, b].
struct CompositeRule {
  std::vector<double> x;
  std::vector<double> w;
  void append_interval(double a, double b, int panels, int order);
  //! Geometric refinement of [a,b] toward the endpoint `toward` until the
  //! panel adjacent to it is <= min_len.
  void append_refined(double a, double b, double toward, double min_len, int order);
  std::size_t size() const { return x.size(); }
};

//! Decreasing positive epsilon values for the i-eps limits.
struct EpsSchedule {
  std::vector<double> eps{1e-1, 3e-2, 1e-2, 3e-3, 1e-3};
  int order = 2;
  void validate() const;
};

//! Polynomial extrapolation of f(eps) to eps = 0 (Neville tableau over the
//! last `order`+1 points); errbar is the last correction magnitude.
struct Extrapolation {
  cplx value;
  double errbar;
};
Extrapolation richardson_extrapolate(const std::vector<double>& eps, const std::vector<cplx>& f,
                                     int order);

//! Smooth rapidly-decaying test functions on a shell fibre.
struct TestFunction {
  enum class Family { gaussian, compact_bump };
  Family family = Family::gaussian;
  Vec3 center{0.0, 0.0, 0.0};
  double width = 0.5;

  double operator()(const Vec3& k) const;
  //! Half-width of the box outside which the function is < 1e-14.
  double box_halfwidth() const;
};

//! Tensorized 3D integral of f over the test function's box.
cplx integrate_box3(const TestFunction& phi, int n_per_axis,
                    const std::function<cplx(const Vec3&, double)>& f_times_phi);

}  // namespace qpert

#endif  // QPERT_QUADRATURE_HPP_
