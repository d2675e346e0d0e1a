#ifndef QPERT_MOMENTUM_HPP_
#define QPERT_MOMENTUM_HPP_

#include <cmath>
#include <stdexcept>

#include "qpert/scaled.hpp"
#include "qpert/smallmat.hpp"

namespace qpert {

//! E_m(p) = sqrt(m^2 + |p|^2). The cone tip m = 0, p = 0 is excluded.
double on_shell_energy(double mass, const Vec3& p3);

//! Covariant four-momentum on (or off) a mass shell, signature (1,3).
//! Spatial components and mass carry L-weight -1.
struct FourMomentum {
  Vec3 spatial{0.0, 0.0, 0.0};
  double mass = 0.0;
  double energy = 0.0;
  bool on_shell = false;
  bool future_pointing = false;

  static FourMomentum on_shell_of(double mass, const Vec3& p3) {
    FourMomentum p;
    p.spatial = p3;
    p.mass = mass;
    p.energy = on_shell_energy(mass, p3);
    p.on_shell = true;
    p.future_pointing = true;
    return p;
  }

  static FourMomentum off_shell(double e, const Vec3& p3) {
    FourMomentum p;
    p.spatial = p3;
    p.energy = e;
    p.on_shell = false;
    p.future_pointing = e > 0.0;
    return p;
  }

  //! Covariant components (p_0, p_i) in an orthonormal frame.
  Vec4 components() const { return {energy, spatial[0], spatial[1], spatial[2]}; }

  //! g^#(p,p) = p0^2 - |p|^2.
  double minkowski_sq() const { return energy * energy - dot3(spatial, spatial); }

  bool shell_residual_ok(double tol = 1e-12) const {
    const double r = std::abs(minkowski_sq() - mass * mass);
    const double scale = std::max(1.0, energy * energy);
    return r <= tol * scale;
  }
};

//! Leray half-density coefficient 1/sqrt(2 E_m), the factor multiplying
//! sqrt(d^3 p); carries L-weight +1/2.
ScaledQuantity leray_halfdensity_weight(double mass, const Vec3& p3);

//! Coefficient 1/sqrt(2 l^3 p0) of the generalized frame element B_p.
//! The full B_p is unscaled, so the returned quantity carries weight 0.
ScaledQuantity frame_coefficient(double length_unit, double mass, const Vec3& p3);

}  // namespace qpert

#endif  // QPERT_MOMENTUM_HPP_
