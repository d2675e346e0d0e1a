#include "qpert/lambda.hpp"

#include <cmath>
#include <stdexcept>

namespace qpert {

LambdaTensor lambda_unscaled(const std::array<int, 3>& signs,
                             const std::array<FourMomentum, 3>& momenta,
                             const std::array<std::string, 3>& symbols, double length_unit) {
  if (length_unit <= 0.0) throw std::runtime_error("phase_space: length unit must be positive");
  for (const auto& p : momenta) {
    if (!p.on_shell || !p.future_pointing)
      throw std::runtime_error("phase_space: lambda requires on-shell future-pointing momenta");
  }
  const double l9 = std::pow(length_unit, 9);
  const double coeff =
      1.0 / std::sqrt(8.0 * l9 * momenta[0].energy * momenta[1].energy * momenta[2].energy);

  std::vector<DeltaConstraint::Term> terms;
  for (int i = 0; i < 3; ++i) {
    if (signs[i] != 1 && signs[i] != -1)
      throw std::runtime_error("phase_space: lambda signs must be +1 or -1");
    terms.push_back({signs[i], symbols[i]});
  }

  LambdaTensor out;
  out.coefficient = {coeff, Weight::integer(-3)};
  out.delta = DeltaConstraint(terms, 3);
  return out;
}

}  // namespace qpert
