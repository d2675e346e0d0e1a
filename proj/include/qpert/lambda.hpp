#ifndef QPERT_LAMBDA_HPP_
#define QPERT_LAMBDA_HPP_

#include <array>
#include <string>

#include "qpert/delta.hpp"
#include "qpert/momentum.hpp"

namespace qpert {

struct LambdaTensor {
  ScaledQuantity coefficient;  // 1/sqrt(8 l^9 p0' p0'' p0'''), weight -3
  DeltaConstraint delta;       // signed delta^3, weight +3
};

//! The unscaled interaction half-density Lambda for one index type: the
//! signed spatial delta times 1/sqrt(8 l^9 p0' p0'' p0'''). Signs are +1 for
//! creation legs and -1 for absorption legs; contraction against test
//! elements is independent of the length unit l.
LambdaTensor lambda_unscaled(const std::array<int, 3>& signs,
                             const std::array<FourMomentum, 3>& momenta,
                             const std::array<std::string, 3>& symbols, double length_unit);

}  // namespace qpert

#endif  // QPERT_LAMBDA_HPP_
