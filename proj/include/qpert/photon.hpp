#ifndef QPERT_PHOTON_HPP_
#define QPERT_PHOTON_HPP_

#include "qpert/dirac.hpp"
#include "qpert/momentum.hpp"
#include "qpert/smallmat.hpp"

namespace qpert {

//! Orthonormal tetrad adapted to a null momentum: e0 is the observer and
//! k^# = kappa (e0 + e3) with kappa > 0.
struct NullTetrad {
  Tetrad e;
  double kappa = 0.0;
  FourMomentum k;

  double gram_residual() const { return tetrad_gram_residual(e, minkowski_metric()); }
};

//! Deterministic adapted tetrad from (k, observer); auxiliary axes are tried
//! in the fixed order x, y, z when completing the spatial legs.
NullTetrad null_tetrad(const FourMomentum& k, const Vec4& observer);

//! Transversal helicity representatives b+- = (e1 +- i e2)/sqrt(2) in the
//! radiation gauge of the tetrad's observer; -i *_B b+- = +- b+-.
struct HelicityBasis {
  CVec4 b_plus;
  CVec4 b_minus;
  const CVec4& mode(int Q) const;  // Q = 0 -> b+, Q = 1 -> b-
};

HelicityBasis helicity_basis(const NullTetrad& tet);

//! The optical Hodge *_B on transversal classes, computed from the 4D rule
//! *(k ^ beta) = -k ^ (*_B beta) with the orientation fixed project-wide
//! (eps^{0123} = +1). Input and output are radiation-gauge representatives
//! in span{e1, e2}; non-transversal input throws.
CVec4 hodge_B(const NullTetrad& tet, const CVec4& beta);

//! sum_Q b_Q (x) conj(b_Q), the transversal completeness tensor
//! T^{mu nu} = e1^mu e1^nu + e2^mu e2^nu (minus the g-projector onto the
//! transversal plane).
std::array<std::array<cplx, 4>, 4> transversal_completeness(const NullTetrad& tet);

//! Minkowski inner product of complex vectors, conjugating neither side.
cplx minkowski_bilinear(const CVec4& a, const CVec4& b);

}  // namespace qpert

#endif  // QPERT_PHOTON_HPP_
