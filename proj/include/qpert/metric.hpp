#ifndef QPERT_METRIC_HPP_
#define QPERT_METRIC_HPP_

#include <functional>
#include <map>
#include <string>

#include "qpert/scaled.hpp"
#include "qpert/smallmat.hpp"

namespace qpert {

//! Spacetime metric field g_{mu nu}(x), signature (1,3), L-weight +2.
//! Built-ins are selected by catalog id; arbitrary user fields are wrapped
//! through the same eval interface.
class MetricField {
 public:
  using EvalFn = std::function<Mat4(const Vec4&)>;

  //! Catalog ids: "minkowski"; "schwarzschild-diagonal" with parameter M,
  //! coordinates (t, r, theta, phi).
  static MetricField from_catalog(const std::string& id,
                                  const std::map<std::string, double>& params = {});
  static MetricField custom(std::string name, EvalFn fn);

  //! g_{mu nu} at x; checks symmetry and (+,-,-,-) eigenvalue signs.
  Mat4 eval(const Vec4& x) const;
  //! Inverse metric at x; throws "metric degenerate at point" if singular.
  Mat4 inverse_at(const Vec4& x) const;

  const std::string& id() const { return id_; }
  bool is_minkowski() const { return id_ == "minkowski"; }
  static Weight weight() { return Weight::integer(2); }

 private:
  MetricField(std::string id, EvalFn fn) : id_(std::move(id)), fn_(std::move(fn)) {}
  std::string id_;
  EvalFn fn_;
};

//! Signature check helper: eigenvalue signs of a symmetric 4x4 matrix,
//! sorted descending (Jacobi rotations).
std::array<double, 4> symmetric_eigenvalues(const Mat4& m);

}  // namespace qpert

#endif  // QPERT_METRIC_HPP_
