#ifndef QPERT_MULTI_INDEX_HPP_
#define QPERT_MULTI_INDEX_HPP_

#include <string>
#include <vector>

#include "qpert/momentum.hpp"

namespace qpert {

enum class Variance { covariant /*absorb*/, contravariant /*create*/ };

enum class Statistics { boson, fermion };

//! Label of a generalized frame element B_{pA}: momentum plus the classical
//! index of the species' bundle (spin, polarization, tetrad leg, or none).
struct FrameLabel {
  std::string species;
  FourMomentum momentum;
  int classical_index = 0;  // 0-based; species rank bounds it
  Variance variance = Variance::covariant;
};

//! Strict total order fixing the canonical label order used for fermion
//! reordering signs: lexicographic on (species, momentum, classical index).
bool frame_label_less(const FrameLabel& a, const FrameLabel& b);

//! Finite graphic of a generalized multi-index: (label, occupation) pairs.
struct MultiIndex {
  std::vector<std::pair<FrameLabel, int>> graphic;
  Statistics statistics = Statistics::boson;
};

struct FockNorm {
  double normalization = 1.0;  // bosons: 1/sqrt(prod I_k!), fermions: 1
  int sign = 1;                // fermions: permutation sign vs canonical order
};

//! Fock-frame normalization of B_I. Fermionic occupations above one (or
//! repeated labels) violate Pauli and throw.
FockNorm fock_normalization(const MultiIndex& mi);

}  // namespace qpert

#endif  // QPERT_MULTI_INDEX_HPP_
