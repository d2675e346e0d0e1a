#ifndef QPERT_ELEMENT_HPP_
#define QPERT_ELEMENT_HPP_

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qpert/diagram.hpp"

namespace qpert {

//! Closed-form propagator of a species; the eps -> 0+ limit is kept as a
//! formal tag in the core and only given a numeric value by the
//! verification quadratures.
struct Propagator {
  std::string species;
  double mass = 0.0;

  //! Denominator g(q,q) - m^2 (+ i eps formally); photon/scalar massless
  //! use m = 0.
  double denominator(const FourMomentum& q) const { return q.minkowski_sq() - mass * mass; }
  cplx denominator(const FourMomentum& q, double eps) const {
    return cplx(denominator(q), eps);
  }
  //! Fermion numerator of the paper's propagator distribution:
  //! electron -m - gamma^#[q], positron -m + gamma^#[q].
  CMat4 numerator(const FourMomentum& q) const;
  bool is_fermion() const { return species == "electron" || species == "positron"; }
};

Propagator propagator(const std::string& species, double mass);

//! Intermediate-state completeness factor m + E_m(q) gamma^0 + gamma^#[q3]
//! (the m-normalized shell projector; antiparticle flips the sign of the
//! momentum part).
CMat4 spin_sum_insertion(double mass, const Vec3& q3, bool antiparticle = false);

//! sum_lam g^{lam lam} L(gamma[e_lam]) R(gamma[e_lam]): the virtual-photon
//! polarization contraction; frame independent.
cplx polarization_sum_internal(const std::function<cplx(const CMat4&)>& chain_left,
                               const std::function<cplx(const CMat4&)>& chain_right,
                               const NullTetrad& tet);

enum class ChainKind { none, qed_first_order, qed_fermion_internal, qed_photon_internal };

struct PropagatorFactor {
  Propagator prop;
  LinearCombo internal_expr;    // internal 4-momentum as signed externals
  std::string numerator_form;   // "", "m+gamma#[q]", "m-gamma#[q]", "g_lam_mu"
};

//! Assembled matrix element: prefactor x residual deltas x chain x
//! propagators. The constant and the per-leg 1/sqrt(2E) roots are kept
//! separate so the weight audit stays structural.
struct MatrixElement {
  cplx constant{0.0, 0.0};
  Weight constant_weight{};
  std::vector<std::string> energy_root_symbols;  // one 1/sqrt(2E) each
  std::vector<DeltaConstraint> deltas;           // residual, 4-dimensional
  std::vector<PropagatorFactor> propagators;
  ChainKind chain = ChainKind::none;
  std::string chain_text;
  std::vector<std::string> chain_legs;
  int ell_type = 0;
  std::vector<ExternalLeg> externals;
  std::string family;
  bool empty_support = false;
  std::string description;

  Weight total_weight() const;
  //! coefficient weight (constant + roots + propagators), excluding deltas.
  Weight coefficient_weight() const;
};

//! Time integral of a single interaction term: 2 pi delta(sum s E) merges
//! with the spatial delta into the 4-dimensional residual.
MatrixElement first_order_element(const Diagram& d, double length_unit,
                                  const CouplingSpec& coupling);

//! Combines the two time orderings of a tree family through the Heaviside
//! identity into the closed iepsilon form, with the internal momentum
//! solved from the deltas and the species' propagator attached. The 1/2!
//! of the series cancels against the two identical time-ordered terms.
MatrixElement second_order_element(const std::vector<Diagram>& orderings, double length_unit,
                                   const CouplingSpec& coupling);

struct EvalOptions {
  double conservation_tol = 1e-9;
  double pole_tol = 1e-10;
};

//! Numeric complex coefficient of the residual delta at a conserving
//! external assignment (momenta and indices are read from the element's
//! stored legs). Conservation violations raise an error listing the
//! residual.
cplx evaluate_element(const MatrixElement& me, const EvalOptions& opt = {});

//! Back-solve 2->2 kinematics: conserving out-momenta for the requested
//! out masses and CM direction. Degenerate (collinear massless) output is
//! rejected at tolerance 1e-9.
std::pair<FourMomentum, FourMomentum> solve_two_body(const FourMomentum& in1,
                                                     const FourMomentum& in2, double m_out1,
                                                     double m_out2, const Vec3& cm_direction);

}  // namespace qpert

#endif  // QPERT_ELEMENT_HPP_
