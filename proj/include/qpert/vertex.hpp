#ifndef QPERT_VERTEX_HPP_
#define QPERT_VERTEX_HPP_

#include <array>
#include <vector>

#include "qpert/coupling.hpp"
#include "qpert/dirac.hpp"
#include "qpert/lambda.hpp"
#include "qpert/photon.hpp"

namespace qpert {

//! One slot of a 3-leg interaction vertex. The sign enters the spatial
//! delta and the detector-time phase identically: +1 create, -1 absorb.
struct VertexSlot {
  std::string species;
  Variance variance = Variance::covariant;
  int sign() const { return variance == Variance::contravariant ? +1 : -1; }
};

//! One of the eight index types of the interaction morphism term.
struct VertexTerm {
  std::array<VertexSlot, 3> slots;
  int ell_type = 0;  // 1..8, row in the QED ell-factor table; 0 for scalar

  std::array<int, 3> sign_pattern() const {
    return {slots[0].sign(), slots[1].sign(), slots[2].sign()};
  }
};

//! The eight vertex index types of a model, creation slots rightmost within
//! each species, ordered as the interaction-morphism expansion lists them.
std::vector<VertexTerm> enumerate_vertex_types(Model model);

//! The eight QED ell-factor contractions. `pol` is the polarization vector
//! to slot into the Dirac map; index raising (types with a contravariant
//! photon leg) must already be applied by the caller, e.g. via
//! raised_tetrad_leg.
cplx qed_ell_factor(int type, const SpinorBasis& pb, int A, const CVec4& pol,
                    const SpinorBasis& qb, int B, double e);

//! Convenience: tetrad-leg polarization with the type's raising applied.
cplx qed_ell_factor(int type, const SpinorBasis& pb, int A, const NullTetrad& tet, int lambda,
                    const SpinorBasis& qb, int B, double e);

//! Whether the photon leg of an ell-factor type carries a raised index.
bool ell_type_photon_raised(int type);

//! g^{lam lam} e_lam: the dual tetrad leg as a vector.
CVec4 raised_tetrad_leg(const NullTetrad& tet, int lambda);
//! g_B-dual of a helicity mode: b^Q = -conj(b_Q).
CVec4 raised_helicity_mode(const HelicityBasis& hb, int Q);

//! One term of the interaction morphism at detector time t: the product
//! -i lambda e^{i sum(s E) t} LambdaBar-coefficient (ell supplied by the
//! caller; 1 for the scalar model). Total weight is the declared L^-1 of
//! the morphism once the delta's +3 is counted.
struct InteractionTerm {
  cplx phase;                 // e^{i sum(s_j E_j) t}
  ScaledQuantity coefficient; // -i lambda / sqrt(8 l^9 E' E'' E'''), weight -4
  DeltaConstraint delta;      // signed delta^3, weight +3
  cplx ell;                   // classical contraction value

  cplx value() const { return phase * coefficient.value * ell; }
  Weight total_weight() const { return coefficient.weight + delta.weight(); }
};

InteractionTerm interaction_term(const VertexTerm& term,
                                 const std::array<FourMomentum, 3>& momenta,
                                 const std::array<std::string, 3>& symbols, double t,
                                 double length_unit, const CouplingSpec& coupling,
                                 cplx ell_value = cplx(1.0, 0.0));

}  // namespace qpert

#endif  // QPERT_VERTEX_HPP_
