#ifndef QPERT_DIVERGENCE_HPP_
#define QPERT_DIVERGENCE_HPP_

#include "qpert/diagram.hpp"

namespace qpert {

//! Conservative power count on the 3D-momentum x energy structure of the
//! time-ordered integrands: each free spatial loop momentum contributes 3
//! dimensions and each of the V-1 energy integrals one more; every boson
//! line falls off by one power (its 1/2E) and every energy denominator by
//! one; fermion numerator growth cancels the line's 1/2E. The net degree
//! is 3 * loops - (number of boson lines).
struct DivergenceReport {
  int loops = 0;
  int energy_integrals = 0;
  int dims = 0;
  int falloff = 0;
  int degree = 0;
  bool divergent = false;
  std::vector<std::string> free_momenta;
};

DivergenceReport superficial_divergence(const Diagram& d, const CouplingSpec& coupling);

}  // namespace qpert

#endif  // QPERT_DIVERGENCE_HPP_
