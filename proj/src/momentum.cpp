#include "qpert/momentum.hpp"

namespace qpert {

double on_shell_energy(double mass, const Vec3& p3) {
  if (mass < 0.0) throw std::runtime_error("phase_space: negative mass");
  const double p2 = dot3(p3, p3);
  if (mass == 0.0 && p2 == 0.0)
    throw std::runtime_error("phase_space: tip of the null cone excluded");
  return std::sqrt(mass * mass + p2);
}

ScaledQuantity leray_halfdensity_weight(double mass, const Vec3& p3) {
  const double e = on_shell_energy(mass, p3);
  return {1.0 / std::sqrt(2.0 * e), Weight::halves(1)};
}

ScaledQuantity frame_coefficient(double length_unit, double mass, const Vec3& p3) {
  if (length_unit <= 0.0) throw std::runtime_error("phase_space: length unit must be positive");
  const double e = on_shell_energy(mass, p3);
  const double l3 = length_unit * length_unit * length_unit;
  return {1.0 / std::sqrt(2.0 * l3 * e), Weight::integer(0)};
}

}  // namespace qpert
