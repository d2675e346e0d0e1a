#ifndef QPERT_DELTA_HPP_
#define QPERT_DELTA_HPP_

#include <map>
#include <string>
#include <vector>

#include "qpert/scaled.hpp"

namespace qpert {

//! A signed linear combination of momentum symbols asserted zero: the
//! symbolic delta^3 (or delta^4, once a 2 pi delta(energy) factor has been
//! absorbed). Carries L-weight +3 or +4 accordingly.
struct DeltaConstraint {
  struct Term {
    int sign;  // +1 or -1, recorded exactly as constructed
    std::string symbol;
  };
  std::vector<Term> terms;
  int dimension = 3;

  DeltaConstraint() = default;
  DeltaConstraint(std::vector<Term> t, int dim = 3);

  Weight weight() const { return Weight::integer(dimension); }
  bool all_signs_equal() const;
  std::string str() const;

  //! Equality modulo an overall sign flip of the argument (delta is even).
  friend bool operator==(const DeltaConstraint& a, const DeltaConstraint& b);
};

//! A momentum symbol expressed as a linear combination of other symbols.
struct LinearCombo {
  std::vector<std::pair<double, std::string>> terms;  // coefficient, symbol
  std::string str(const std::string& lhs) const;
};

struct DeltaReduction {
  std::map<std::string, LinearCombo> solved;  // internal symbol -> externals
  std::vector<std::string> free_internals;    // unconstrained (loop) momenta
  std::vector<DeltaConstraint> residual;      // overall conservation
};

//! Gaussian elimination of the internal momentum symbols from a set of
//! linear delta constraints. Unconstrained internals are reported free;
//! an inconsistent system (a future-pointing symbol forced against itself)
//! throws "kinematically forbidden".
DeltaReduction reduce_deltas(const std::vector<DeltaConstraint>& constraints,
                             const std::vector<std::string>& internals);

}  // namespace qpert

#endif  // QPERT_DELTA_HPP_
