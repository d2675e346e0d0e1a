#include "qpert/element.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qpert {

CMat4 Propagator::numerator(const FourMomentum& q) const {
  if (!is_fermion()) throw std::runtime_error("smatrix: numerator is a fermion-propagator part");
  const CMat4 slash = momentum_slash(q);
  const cplx mm(-mass, 0.0);
  CMat4 m = mm * CMat4::identity();
  return species == "electron" ? (m - slash) : (m + slash);
}

Propagator propagator(const std::string& species, double mass) {
  if (species == "scalar" || species == "massive") return {"massive", mass};
  if (species == "massless") return {"massless", 0.0};
  if (species == "photon") return {"photon", 0.0};
  if (species == "electron") return {"electron", mass};
  if (species == "positron") return {"positron", mass};
  throw std::runtime_error("smatrix: unknown propagator species '" + species + "'");
}

CMat4 spin_sum_insertion(double mass, const Vec3& q3, bool antiparticle) {
  const double e = on_shell_energy(mass, q3);
  const cplx m(mass, 0.0);
  CMat4 out = m * CMat4::identity();
  CMat4 mom = cplx(e, 0.0) * gamma_matrix(0) + spatial_slash(q3);
  if (antiparticle) mom = cplx(-1.0, 0.0) * mom;
  return out + mom;
}

cplx polarization_sum_internal(const std::function<cplx(const CMat4&)>& chain_left,
                               const std::function<cplx(const CMat4&)>& chain_right,
                               const NullTetrad& tet) {
  cplx out(0.0, 0.0);
  for (int lam = 0; lam < 4; ++lam) {
    const double glam = (lam == 0) ? 1.0 : -1.0;
    CVec4 leg;
    for (int i = 0; i < 4; ++i) leg[i] = cplx(tet.e[lam][i]);
    const CMat4 g = gamma_of(leg);
    out += glam * chain_left(g) * chain_right(g);
  }
  return out;
}

Weight MatrixElement::total_weight() const {
  Weight w = coefficient_weight();
  for (const auto& d : deltas) w = w + d.weight();
  return w;
}

Weight MatrixElement::coefficient_weight() const {
  Weight w = constant_weight;
  w = w + Weight::halves(static_cast<int>(energy_root_symbols.size()));
  for (const auto& p : propagators) {
    // denominator 1/(g - m^2) carries +2; a fermion numerator carries -1.
    w = w + Weight::integer(2);
    if (p.prop.is_fermion()) w = w + Weight::integer(-1);
  }
  return w;
}

namespace {

constexpr double kPi = 3.14159265358979323846;

DeltaConstraint with_dimension(const DeltaConstraint& d3, int dim) {
  DeltaConstraint d = d3;
  d.dimension = dim;
  return d;
}

std::string slot_symbol(const Diagram& d, int v, int s) {
  const auto& ref = d.slots[v][s];
  return ref.is_internal ? d.internals[ref.index].symbol : d.externals[ref.index].symbol;
}

}  // namespace

MatrixElement first_order_element(const Diagram& d, double length_unit,
                                  const CouplingSpec& coupling) {
  if (d.vertices.size() != 1)
    throw std::runtime_error("smatrix: first-order element needs a single-vertex diagram");
  d.validate();

  MatrixElement me;
  me.externals = d.externals;
  me.family = d.family;

  const auto deltas3 = d.vertex_deltas();
  me.deltas = {with_dimension(deltas3.front(), 4)};
  me.empty_support = me.deltas.front().all_signs_equal();

  const ScaledQuantity lam = coupling.lambda();
  const double l92 = std::pow(length_unit, 4.5);
  me.constant = cplx(0.0, -2.0 * kPi) * lam.value / l92;
  me.constant_weight = lam.weight + Weight::halves(-9);
  for (int s = 0; s < 3; ++s) me.energy_root_symbols.push_back(slot_symbol(d, 0, s));

  if (coupling.model() == Model::qed) {
    me.chain = ChainKind::qed_first_order;
    me.ell_type = d.vertices[0].ell_type;
    me.chain_text = "ell-factor type " + std::to_string(me.ell_type);
    for (int s = 0; s < 3; ++s) me.chain_legs.push_back(slot_symbol(d, 0, s));
  }
  me.description = "first-order " + me.deltas.front().str();
  return me;
}

MatrixElement second_order_element(const std::vector<Diagram>& orderings, double length_unit,
                                   const CouplingSpec& coupling) {
  if (orderings.size() != 2)
    throw std::runtime_error("smatrix: second-order element combines both time orderings");
  const Diagram& dp = orderings[0].time_order == TimeOrder::primed ? orderings[0] : orderings[1];
  const Diagram& dd = orderings[0].time_order == TimeOrder::primed ? orderings[1] : orderings[0];
  if (dp.family != dd.family)
    throw std::runtime_error("smatrix: time orderings must belong to one family");
  if (dp.internals.size() != 1)
    throw std::runtime_error("smatrix: use divergence analysis for loops");
  dp.validate();
  dd.validate();

  // Solve the internal 4-momentum from the (now 4-dimensional) deltas.
  std::vector<DeltaConstraint> constraints;
  for (const auto& c : dp.vertex_deltas()) constraints.push_back(with_dimension(c, 4));
  const DeltaReduction red = reduce_deltas(constraints, dp.internal_symbols());
  if (!red.free_internals.empty())
    throw std::runtime_error("smatrix: use divergence analysis for loops");

  MatrixElement me;
  me.externals = dp.externals;
  me.family = dp.family;
  me.deltas = red.residual;

  const double l6 = std::pow(length_unit, 6);
  const std::string internal_species = dp.internals.front().species;
  const double internal_mass = coupling.species(internal_species).mass;

  PropagatorFactor pf;
  pf.internal_expr = red.solved.at(dp.internals.front().symbol);

  if (coupling.model() == Model::scalar2) {
    const double ell = coupling.ell();
    me.constant = cplx(0.0, -2.0 * kPi) * ell * ell / l6;
    me.constant_weight = Weight::integer(-8);
    pf.prop = propagator(internal_species, internal_mass);
    pf.numerator_form = "";
    me.chain = ChainKind::none;
  } else {
    const double e = coupling.charge();
    const double m = coupling.species("electron").mass;
    if (internal_species == "electron" || internal_species == "positron") {
      me.constant = cplx(0.0, -2.0 * kPi) * m * e * e / l6;
      me.constant_weight = Weight::integer(-7);
      pf.prop = propagator("electron", m);
      // Combined numerator from the two orderings; the antiparticle-first
      // family flips the sign of the momentum part.
      pf.numerator_form = internal_species == "electron" ? "m+gamma#[q]" : "m-gamma#[q]";
      me.chain = ChainKind::qed_fermion_internal;
    } else {
      me.constant = cplx(0.0, -2.0 * kPi) * m * m * e * e / l6;
      me.constant_weight = Weight::integer(-8);
      pf.prop = propagator("photon", 0.0);
      pf.numerator_form = "g_lam_mu";
      me.chain = ChainKind::qed_photon_internal;
    }
  }
  me.propagators = {pf};
  for (const auto& leg : dp.externals) me.energy_root_symbols.push_back(leg.symbol);

  if (me.chain == ChainKind::qed_fermion_internal) {
    // ubar(e out) gamma^(pol out, raised) N(q) gamma_(pol in) u(e in)
    std::string e_in, e_out, ph_in, ph_out;
    for (const auto& leg : dp.externals) {
      if (leg.species == "photon")
        (leg.incoming ? ph_in : ph_out) = leg.symbol;
      else
        (leg.incoming ? e_in : e_out) = leg.symbol;
    }
    me.chain_legs = {e_out, ph_out, ph_in, e_in};
    me.chain_text = "u^(" + e_out + ") gamma^(" + ph_out + ") [" + me.propagators[0].numerator_form +
                    "] gamma_(" + ph_in + ") u_(" + e_in + ")";
  } else if (me.chain == ChainKind::qed_photon_internal) {
    // Per-vertex currents of the primed diagram.
    for (int v = 0; v < 2; ++v) {
      std::string fin, fout;
      for (int s = 0; s < 3; ++s) {
        if (dp.slots[v][s].is_internal) continue;
        const auto& leg = dp.externals[dp.slots[v][s].index];
        (leg.incoming ? fin : fout) = leg.symbol;
      }
      me.chain_legs.push_back(fout);
      me.chain_legs.push_back(fin);
    }
    me.chain_text = "(u^(" + me.chain_legs[0] + ") gamma^lam u_(" + me.chain_legs[1] +
                    ")) g_lam_mu (u^(" + me.chain_legs[2] + ") gamma^mu u_(" + me.chain_legs[3] +
                    "))";
  }

  std::ostringstream desc;
  desc << "family " << me.family << ": propagator over "
       << pf.internal_expr.str(dp.internals.front().symbol);
  me.description = desc.str();
  return me;
}

namespace {

Vec4 four_vector_of(const FourMomentum& p) {
  return {p.energy, p.spatial[0], p.spatial[1], p.spatial[2]};
}

FourMomentum combo_momentum(const LinearCombo& expr,
                            const std::map<std::string, FourMomentum>& ext) {
  Vec4 acc{};
  for (const auto& [c, sym] : expr.terms) {
    auto it = ext.find(sym);
    if (it == ext.end()) throw std::runtime_error("smatrix: unresolved symbol '" + sym + "'");
    const Vec4 v = four_vector_of(it->second);
    for (int i = 0; i < 4; ++i) acc[i] += c * v[i];
  }
  return FourMomentum::off_shell(acc[0], {acc[1], acc[2], acc[3]});
}

struct QedEvalContext {
  std::map<std::string, SpinorBasis> spinors;
  std::map<std::string, NullTetrad> tetrads;
  std::map<std::string, HelicityBasis> helicities;
  std::map<std::string, int> indices;
};

QedEvalContext build_qed_context(const std::vector<ExternalLeg>& legs, double electron_mass) {
  QedEvalContext ctx;
  const Tetrad tet = standard_tetrad();
  const Vec4 observer{1, 0, 0, 0};
  for (const auto& leg : legs) {
    ctx.indices[leg.symbol] = leg.classical_index;
    if (leg.species == "photon") {
      const NullTetrad nt = null_tetrad(leg.momentum, observer);
      ctx.tetrads.emplace(leg.symbol, nt);
      ctx.helicities.emplace(leg.symbol, helicity_basis(nt));
    } else {
      ctx.spinors.emplace(leg.symbol, spinor_basis(electron_mass, leg.momentum, tet));
    }
  }
  return ctx;
}

}  // namespace

cplx evaluate_element(const MatrixElement& me, const EvalOptions& opt) {
  std::map<std::string, FourMomentum> ext;
  for (const auto& leg : me.externals) ext[leg.symbol] = leg.momentum;

  // Residual conservation.
  for (const auto& d : me.deltas) {
    Vec4 r{};
    double scale = 0.0;
    for (const auto& t : d.terms) {
      const Vec4 v = four_vector_of(ext.at(t.symbol));
      for (int i = 0; i < 4; ++i) r[i] += t.sign * v[i];
      scale = std::max(scale, std::abs(v[0]));
    }
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) worst = std::max(worst, std::abs(r[i]));
    if (worst > opt.conservation_tol * std::max(1.0, scale)) {
      std::ostringstream msg;
      msg << "smatrix: externals violate " << d.str() << " (residual " << worst << ")";
      throw std::runtime_error(msg.str());
    }
  }

  if (me.empty_support) return {0.0, 0.0};

  cplx value = me.constant;
  for (const auto& sym : me.energy_root_symbols)
    value /= std::sqrt(2.0 * ext.at(sym).energy);

  // Propagator denominators at the solved internal momenta (eps -> 0 off
  // the pole; exact poles are rejected).
  std::vector<FourMomentum> solved;
  for (const auto& pf : me.propagators) {
    const FourMomentum q = combo_momentum(pf.internal_expr, ext);
    const double den = pf.prop.denominator(q);
    if (std::abs(den) < opt.pole_tol)
      throw std::runtime_error("smatrix: internal momentum on shell; iepsilon limit singular");
    value /= den;
    solved.push_back(q);
  }

  switch (me.chain) {
    case ChainKind::none:
      break;
    case ChainKind::qed_first_order:
      throw std::runtime_error(
          "smatrix: first-order QED numeric evaluation goes through qed_ell_factor");
    case ChainKind::qed_fermion_internal: {
      const double m = me.propagators[0].prop.mass;
      QedEvalContext ctx = build_qed_context(me.externals, m);
      const auto& e_out = me.chain_legs[0];
      const auto& ph_out = me.chain_legs[1];
      const auto& ph_in = me.chain_legs[2];
      const auto& e_in = me.chain_legs[3];
      const CVec4 pol_out = raised_helicity_mode(ctx.helicities.at(ph_out), ctx.indices.at(ph_out));
      const CVec4 pol_in = ctx.helicities.at(ph_in).mode(ctx.indices.at(ph_in));
      const FourMomentum& q = solved[0];
      const cplx sign = me.propagators[0].numerator_form == "m+gamma#[q]" ? 1.0 : -1.0;
      const CMat4 numerator = cplx(m, 0.0) * CMat4::identity() + sign * momentum_slash(q);
      const cplx chain = spinor_chain(
          ctx.spinors.at(e_out).ubar[ctx.indices.at(e_out)],
          {gamma_of(pol_out), numerator, gamma_of(pol_in)},
          ctx.spinors.at(e_in).u[ctx.indices.at(e_in)]);
      value *= chain;
      break;
    }
    case ChainKind::qed_photon_internal: {
      const double m = [&] {
        for (const auto& leg : me.externals)
          if (leg.species != "photon") return ext.at(leg.symbol).mass;
        throw std::runtime_error("smatrix: photon-internal chain without fermion legs");
      }();
      QedEvalContext ctx = build_qed_context(me.externals, m);
      const NullTetrad frame =
          null_tetrad(FourMomentum::on_shell_of(0.0, {0, 0, 1}), Vec4{1, 0, 0, 0});
      auto current = [&](const std::string& fout, const std::string& fin) {
        return [&, fout, fin](const CMat4& g) {
          return spinor_chain(ctx.spinors.at(fout).ubar[ctx.indices.at(fout)], {g},
                              ctx.spinors.at(fin).u[ctx.indices.at(fin)]);
        };
      };
      value *= polarization_sum_internal(current(me.chain_legs[0], me.chain_legs[1]),
                                         current(me.chain_legs[2], me.chain_legs[3]), frame);
      break;
    }
  }
  return value;
}

std::pair<FourMomentum, FourMomentum> solve_two_body(const FourMomentum& in1,
                                                     const FourMomentum& in2, double m_out1,
                                                     double m_out2, const Vec3& cm_direction) {
  const Vec4 P = four_vector_of(in1) + four_vector_of(in2);
  const double s = P[0] * P[0] - (P[1] * P[1] + P[2] * P[2] + P[3] * P[3]);
  const double sqrt_s = std::sqrt(s);
  if (!(s > 0.0) || sqrt_s <= m_out1 + m_out2 + 1e-12)
    throw std::runtime_error("smatrix: no phase space for requested final state");

  const double nd = norm3(cm_direction);
  if (nd < 1e-12) throw std::runtime_error("smatrix: CM direction must be nonzero");
  const Vec3 n = (1.0 / nd) * cm_direction;

  const double kstar = std::sqrt((s - (m_out1 + m_out2) * (m_out1 + m_out2)) *
                                 (s - (m_out1 - m_out2) * (m_out1 - m_out2))) /
                       (2.0 * sqrt_s);
  const double e1 = (s + m_out1 * m_out1 - m_out2 * m_out2) / (2.0 * sqrt_s);
  const double e2 = sqrt_s - e1;

  const Vec3 beta{P[1] / P[0], P[2] / P[0], P[3] / P[0]};
  const double b2 = dot3(beta, beta);
  const double gamma = 1.0 / std::sqrt(1.0 - b2);
  auto boost_back = [&](double e_cm, const Vec3& p_cm) {
    const double bp = dot3(beta, p_cm);
    const double coef = (b2 > 0.0 ? (gamma - 1.0) / b2 : 0.0) * bp + gamma * e_cm;
    return Vec3{p_cm[0] + coef * beta[0], p_cm[1] + coef * beta[1], p_cm[2] + coef * beta[2]};
  };

  const Vec3 k1 = boost_back(e1, kstar * n);
  const Vec3 k2 = boost_back(e2, -1.0 * (kstar * n));
  if ((m_out1 == 0.0 && norm3(k1) < 1e-9) || (m_out2 == 0.0 && norm3(k2) < 1e-9))
    throw std::runtime_error("smatrix: degenerate collinear massless final state");
  return {FourMomentum::on_shell_of(m_out1, k1), FourMomentum::on_shell_of(m_out2, k2)};
}

}  // namespace qpert
