#ifndef QPERT_CHRISTOFFEL_HPP_
#define QPERT_CHRISTOFFEL_HPP_

#include "qpert/metric.hpp"
#include "qpert/momentum.hpp"

namespace qpert {

//! Levi-Civita coefficients Gamma^lam_{mu nu} at a point, symmetrized
//! exactly in the lower pair. Weight 0 in unscaled coordinates.
struct Christoffel {
  Vec4 point{};
  double coeffs[4][4][4] = {};  // [lam][mu][nu]
  double step = 0.0;

  double max_abs() const;
  double symmetrization_residual() const;
};

//! Central-difference Levi-Civita coefficients from a metric field.
//! Default step 1e-5 times the coordinate scale at x.
Christoffel christoffel_at(const MetricField& metric, const Vec4& x, double h = 0.0);

//! (Gamma_m)_{ai} = -Gamma^0_{ai} p_0 - Gamma^j_{ai} p_j, the phase-bundle
//! connection coefficients; a = 0..3 rows, i = 1..3 columns. Weight -1.
//! Requires p on-shell.
std::array<std::array<double, 3>, 4> phase_connection_coeffs(const Christoffel& gamma,
                                                             const FourMomentum& p);

//! Same contraction for a free covector argument (the algebraic linearity
//! tests use this overload; no shell check).
std::array<std::array<double, 3>, 4> phase_connection_coeffs_free(const Christoffel& gamma,
                                                                  const Vec4& p_components);

//! (GammaHat_m)_a = -Gamma^0_{ai} g^{ij} p_j / p_0 + 1/2 Gamma^i_{ai},
//! the half-density connection coefficient. Weight 0. Requires p0 > 0.
Vec4 halfdensity_connection_coeff(const Christoffel& gamma, const Mat4& ginv,
                                  const FourMomentum& p);

}  // namespace qpert

#endif  // QPERT_CHRISTOFFEL_HPP_
