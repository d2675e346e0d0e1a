#include "qpert/vertex.hpp"

#include <cmath>
#include <stdexcept>

namespace qpert {

namespace {

constexpr Variance kAbsorb = Variance::covariant;
constexpr Variance kCreate = Variance::contravariant;

}  // namespace

std::vector<VertexTerm> enumerate_vertex_types(Model model) {
  std::vector<VertexTerm> out;
  if (model == Model::scalar2) {
    // Slots (p massive, q massive, k massless); the eight sign patterns in
    // the order of the one-point-interaction table.
    const std::array<std::array<int, 3>, 8> patterns{{{-1, -1, -1},
                                                      {+1, -1, -1},
                                                      {-1, -1, +1},
                                                      {-1, +1, -1},
                                                      {+1, -1, +1},
                                                      {+1, +1, -1},
                                                      {-1, +1, +1},
                                                      {+1, +1, +1}}};
    for (const auto& pat : patterns) {
      VertexTerm t;
      t.slots[0] = {"massive", pat[0] > 0 ? kCreate : kAbsorb};
      t.slots[1] = {"massive", pat[1] > 0 ? kCreate : kAbsorb};
      t.slots[2] = {"massless", pat[2] > 0 ? kCreate : kAbsorb};
      t.ell_type = 0;
      out.push_back(t);
    }
    return out;
  }
  if (model == Model::qed) {
    // Slot 1 is the conjugate-fibre leg (absorb positron / create electron),
    // slot 2 the photon, slot 3 the plain fibre leg (absorb electron /
    // create positron); rows ordered as the morphism expansion.
    struct Row {
      VertexSlot s1, s2, s3;
      int type;
    };
    const std::array<Row, 8> rows{{
        {{"positron", kAbsorb}, {"photon", kAbsorb}, {"electron", kAbsorb}, 1},
        {{"electron", kCreate}, {"photon", kAbsorb}, {"electron", kAbsorb}, 2},
        {{"positron", kAbsorb}, {"photon", kCreate}, {"electron", kAbsorb}, 3},
        {{"positron", kCreate}, {"photon", kAbsorb}, {"positron", kAbsorb}, 4},
        {{"electron", kCreate}, {"photon", kCreate}, {"electron", kAbsorb}, 5},
        {{"electron", kCreate}, {"photon", kAbsorb}, {"positron", kCreate}, 6},
        {{"positron", kCreate}, {"photon", kCreate}, {"positron", kAbsorb}, 7},
        {{"electron", kCreate}, {"photon", kCreate}, {"positron", kCreate}, 8},
    }};
    for (const auto& r : rows) {
      VertexTerm t;
      t.slots = {r.s1, r.s2, r.s3};
      t.ell_type = r.type;
      out.push_back(t);
    }
    return out;
  }
  throw std::runtime_error("interaction: unknown model");
}

bool ell_type_photon_raised(int type) {
  return type == 3 || type == 5 || type == 7 || type == 8;
}

CVec4 raised_tetrad_leg(const NullTetrad& tet, int lambda) {
  if (lambda < 0 || lambda > 3) throw std::runtime_error("interaction: tetrad index out of range");
  const double glam = (lambda == 0) ? 1.0 : -1.0;
  CVec4 out;
  for (int i = 0; i < 4; ++i) out[i] = cplx(glam * tet.e[lambda][i]);
  return out;
}

CVec4 raised_helicity_mode(const HelicityBasis& hb, int Q) {
  const CVec4& b = hb.mode(Q);
  CVec4 out;
  for (int i = 0; i < 4; ++i) out[i] = -std::conj(b[i]);
  return out;
}

cplx qed_ell_factor(int type, const SpinorBasis& pb, int A, const CVec4& pol,
                    const SpinorBasis& qb, int B, double e) {
  if (A < 0 || A > 1 || B < 0 || B > 1)
    throw std::runtime_error("interaction: spin index out of species rank");
  const CMat4 g = gamma_of(pol);
  const std::vector<CMat4> mats{g};
  cplx chain;
  switch (type) {
    case 1:
    case 3:
      chain = spinor_chain(pb.vbar[A], mats, qb.u[B]);
      break;
    case 2:
    case 5:
      chain = spinor_chain(pb.ubar[A], mats, qb.u[B]);
      break;
    case 4:
    case 7:
      chain = spinor_chain(qb.vbar[B], mats, pb.v[A]);
      break;
    case 6:
    case 8:
      chain = spinor_chain(pb.ubar[A], mats, qb.v[B]);
      break;
    default:
      throw std::runtime_error("interaction: ell-factor type out of range");
  }
  return -e * chain;
}

cplx qed_ell_factor(int type, const SpinorBasis& pb, int A, const NullTetrad& tet, int lambda,
                    const SpinorBasis& qb, int B, double e) {
  CVec4 pol;
  if (ell_type_photon_raised(type)) {
    pol = raised_tetrad_leg(tet, lambda);
  } else {
    for (int i = 0; i < 4; ++i) pol[i] = cplx(tet.e[lambda][i]);
  }
  return qed_ell_factor(type, pb, A, pol, qb, B, e);
}

InteractionTerm interaction_term(const VertexTerm& term,
                                 const std::array<FourMomentum, 3>& momenta,
                                 const std::array<std::string, 3>& symbols, double t,
                                 double length_unit, const CouplingSpec& coupling,
                                 cplx ell_value) {
  for (int i = 0; i < 3; ++i) {
    const auto& sp = coupling.species(term.slots[i].species);
    if (std::abs(momenta[i].mass - sp.mass) > 1e-12)
      throw std::runtime_error("interaction: leg mass does not match species '" + sp.id + "'");
  }
  const auto signs = term.sign_pattern();
  const LambdaTensor lam = lambda_unscaled(signs, momenta, symbols, length_unit);

  double esum = 0.0;
  for (int i = 0; i < 3; ++i) esum += signs[i] * momenta[i].energy;

  InteractionTerm out;
  out.phase = std::exp(cplx(0.0, esum * t));
  out.coefficient = cplx(0.0, -1.0) * (coupling.lambda() * lam.coefficient);
  out.delta = lam.delta;
  out.ell = ell_value;

  if (out.total_weight() != Weight::integer(-1))
    throw std::runtime_error("interaction: weight audit failure in morphism term");
  return out;
}

}  // namespace qpert
