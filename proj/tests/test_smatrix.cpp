#include <doctest.h>

#include <cmath>
#include <random>

#include "qpert/divergence.hpp"
#include "qpert/element.hpp"

using namespace qpert;

namespace {

constexpr double kPi = 3.14159265358979323846;

ExternalLeg leg(const std::string& sp, bool in, const std::string& sym, const FourMomentum& p,
                int idx = 0) {
  ExternalLeg l;
  l.species = sp;
  l.incoming = in;
  l.symbol = sym;
  l.momentum = p;
  l.classical_index = idx;
  return l;
}

}  // namespace

TEST_CASE("scalar 2->2 enumerates the four time-ordered diagrams") {
  const CouplingSpec coupling = CouplingSpec::scalar2(0.3, 1.0);
  const auto p = FourMomentum::on_shell_of(1.0, {1.05, 0, 0});
  const auto q = FourMomentum::on_shell_of(1.0, {-1.05, 0, 0});
  const auto pp = FourMomentum::on_shell_of(1.0, {0, 1.05, 0});
  const auto qp = FourMomentum::on_shell_of(1.0, {0, -1.05, 0});
  const std::vector<ExternalLeg> legs{leg("massive", true, "p", p), leg("massive", true, "q", q),
                                      leg("massive", false, "p'", pp),
                                      leg("massive", false, "q'", qp)};
  const auto diagrams = enumerate_diagrams(legs, 2, coupling);
  REQUIRE(diagrams.size() == 4);
  int fam_i = 0, fam_ii = 0, primed = 0;
  for (const auto& d : diagrams) {
    if (d.family == "I") ++fam_i;
    if (d.family == "II") ++fam_ii;
    if (d.time_order == TimeOrder::primed) ++primed;
    CHECK(d.internals.size() == 1);
    CHECK(d.internals.front().species == "massless");
  }
  CHECK(fam_i == 2);
  CHECK(fam_ii == 2);
  CHECK(primed == 2);
}

TEST_CASE("scalar fusion process has one first-order diagram") {
  const CouplingSpec coupling = CouplingSpec::scalar2(0.3, 1.0);
  const auto p = FourMomentum::on_shell_of(1.0, {0.4, 0, 0});
  const auto q = FourMomentum::on_shell_of(1.0, {-0.1, 0.2, 0});
  const auto k = FourMomentum::on_shell_of(0.0, {0.3, 0.2, 0});
  const std::vector<ExternalLeg> legs{leg("massive", true, "p", p), leg("massive", true, "q", q),
                                      leg("massless", false, "k", k)};
  const auto diagrams = enumerate_diagrams(legs, 1, coupling);
  REQUIRE(diagrams.size() == 1);
  CHECK(diagrams.front().vertices.size() == 1);
}

TEST_CASE("first-order scalar element matches the closed form") {
  const double ell = 0.37, l = 1.21;
  const CouplingSpec coupling = CouplingSpec::scalar2(ell, 1.0);
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(-1.2, 1.2);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec3 p3{u(rng), u(rng), u(rng)};
    const Vec3 q3{u(rng), u(rng), u(rng)};
    const auto p = FourMomentum::on_shell_of(1.0, p3);
    const auto q = FourMomentum::on_shell_of(1.0, q3);
    const Vec3 k3 = p3 + q3;
    const auto k = FourMomentum::on_shell_of(0.0, k3);  // spatial conservation exact

    // Absorb p and q, create k; the energy delta is symbolic, so the
    // coefficient is defined for any on-shell externals.
    const std::vector<ExternalLeg> legs{leg("massive", true, "p", p), leg("massive", true, "q", q),
                                        leg("massless", false, "k", k)};
    const auto diagrams = enumerate_diagrams(legs, 1, coupling);
    REQUIRE(diagrams.size() == 1);
    const MatrixElement me = first_order_element(diagrams.front(), l, coupling);
    CHECK(!me.empty_support);
    REQUIRE(me.deltas.size() == 1);
    CHECK(me.deltas.front().dimension == 4);

    cplx value = me.constant;
    for (const auto& s : me.energy_root_symbols) {
      const double E = s == "p" ? p.energy : (s == "q" ? q.energy : k.energy);
      value /= std::sqrt(2.0 * E);
    }
    const cplx closed = cplx(0.0, -2.0 * kPi) * ell /
                        std::sqrt(8.0 * std::pow(l, 9) * k.energy * p.energy * q.energy);
    CHECK(std::abs(value - closed) <= 1e-14 * std::abs(closed));
    CHECK(me.coefficient_weight() == Weight::integer(-4));
    CHECK(me.total_weight() == Weight::integer(0));
  }
}

TEST_CASE("all eight first-order types carry the table's sign patterns") {
  const CouplingSpec coupling = CouplingSpec::scalar2(0.3, 1.0);
  const auto types = enumerate_vertex_types(Model::scalar2);
  REQUIRE(types.size() == 8);
  for (const auto& type : types) {
    Diagram d;
    d.model = Model::scalar2;
    d.vertices = {type};
    d.slots.resize(1);
    for (int s = 0; s < 3; ++s) {
      const bool in = type.slots[s].variance == Variance::covariant;
      const double m = coupling.species(type.slots[s].species).mass;
      const Vec3 p3{0.1 + 0.2 * s, -0.1, 0.3};
      d.externals.push_back(
          leg(type.slots[s].species, in, "x" + std::to_string(s), FourMomentum::on_shell_of(m, p3)));
      d.slots[0][s] = {false, s};
    }
    const MatrixElement me = first_order_element(d, 1.0, coupling);
    REQUIRE(me.deltas.size() == 1);
    for (int s = 0; s < 3; ++s)
      CHECK(me.deltas.front().terms[s].sign == type.slots[s].sign());
    // All-absorb and all-create have empty support (positive energies).
    const auto pattern = type.sign_pattern();
    const bool all_same = pattern[0] == pattern[1] && pattern[1] == pattern[2];
    CHECK(me.empty_support == all_same);
  }
}

TEST_CASE("second-order scalar: case I and case II assemble the same closed form") {
  const double ell = 0.3, l = 1.0;
  const CouplingSpec coupling = CouplingSpec::scalar2(ell, 1.0);
  const auto p = FourMomentum::on_shell_of(1.0, {1.05, 0, 0});
  const auto q = FourMomentum::on_shell_of(1.0, {-1.05, 0, 0});
  const auto [pp, qp] = solve_two_body(p, q, 1.0, 1.0, {0, 1, 0});
  const std::vector<ExternalLeg> legs{leg("massive", true, "p", p), leg("massive", true, "q", q),
                                      leg("massive", false, "p'", pp),
                                      leg("massive", false, "q'", qp)};
  const auto diagrams = enumerate_diagrams(legs, 2, coupling);
  REQUIRE(diagrams.size() == 4);
  std::vector<Diagram> fam_i, fam_ii;
  for (const auto& d : diagrams) (d.family == "I" ? fam_i : fam_ii).push_back(d);
  const MatrixElement a = second_order_element(fam_i, l, coupling);
  const MatrixElement b = second_order_element(fam_ii, l, coupling);

  // Structural equality: prefactor, propagator form, residual delta.
  CHECK(a.constant == b.constant);
  CHECK(a.constant_weight == b.constant_weight);
  REQUIRE(a.propagators.size() == 1);
  REQUIRE(b.propagators.size() == 1);
  CHECK(a.propagators.front().prop.species == b.propagators.front().prop.species);
  CHECK(a.propagators.front().prop.mass == b.propagators.front().prop.mass);
  CHECK(a.propagators.front().numerator_form == b.propagators.front().numerator_form);
  REQUIRE(a.deltas.size() == 1);
  REQUIRE(b.deltas.size() == 1);
  CHECK(a.deltas.front() == b.deltas.front());

  // ... while the internal momenta are the two delta solutions.
  const cplx expect_const = cplx(0.0, -2.0 * kPi) * ell * ell;
  CHECK(a.constant == expect_const);  // l = 1
  CHECK(a.coefficient_weight() == Weight::integer(-4));
  CHECK(a.total_weight() == Weight::integer(0));

  // Numeric evaluation at the conserving kinematics, against the closed
  // form assembled by hand: k = p + q in case I.
  const cplx va = evaluate_element(a);
  const double s_mandelstam = (p.energy + q.energy) * (p.energy + q.energy);
  const cplx closed = expect_const / std::sqrt(16.0 * p.energy * q.energy * pp.energy * qp.energy) /
                      s_mandelstam;
  CHECK(std::abs(va - closed) <= 1e-12 * std::abs(closed));

  // Quadratic coupling dependence.
  const CouplingSpec doubled = CouplingSpec::scalar2(2.0 * ell, 1.0);
  const MatrixElement a2 = second_order_element(fam_i, l, doubled);
  CHECK(std::abs(evaluate_element(a2) - 4.0 * va) <= 1e-12 * std::abs(va));
}

TEST_CASE("massive internal line shifts the propagator pole") {
  const CouplingSpec coupling = CouplingSpec::scalar2(0.3, 1.0);
  // massive + massless in and out: the internal line is the massive species.
  const auto p = FourMomentum::on_shell_of(1.0, {0.7, 0, 0});
  const auto k = FourMomentum::on_shell_of(0.0, {-0.4, 0.2, 0});
  const auto [pp, kp] = solve_two_body(p, k, 1.0, 0.0, {0.3, 0.9, 0.1});
  const std::vector<ExternalLeg> legs{leg("massive", true, "p", p), leg("massless", true, "k", k),
                                      leg("massive", false, "p'", pp),
                                      leg("massless", false, "k'", kp)};
  const auto diagrams = enumerate_diagrams(legs, 2, coupling);
  REQUIRE(!diagrams.empty());
  std::map<std::string, std::vector<Diagram>> fams;
  for (const auto& d : diagrams) fams[d.family].push_back(d);
  bool saw_massive_internal = false;
  for (const auto& [fam, pair] : fams) {
    if (pair.size() != 2) continue;
    const MatrixElement me = second_order_element(pair, 1.0, coupling);
    if (me.propagators.front().prop.species == "massive") {
      saw_massive_internal = true;
      CHECK(me.propagators.front().prop.mass == 1.0);
      // denominator g(q,q) - m^2 at the solved internal momentum
      const auto& expr = me.propagators.front().internal_expr;
      Vec4 acc{};
      std::map<std::string, FourMomentum> ext{
          {"p", p}, {"k", k}, {"p'", pp}, {"k'", kp}};
      for (const auto& [c, s] : expr.terms) {
        const auto v = ext.at(s);
        acc[0] += c * v.energy;
        for (int i = 0; i < 3; ++i) acc[i + 1] += c * v.spatial[i];
      }
      const double g = acc[0] * acc[0] - acc[1] * acc[1] - acc[2] * acc[2] - acc[3] * acc[3];
      const double den = me.propagators.front().prop.denominator(
          FourMomentum::off_shell(acc[0], {acc[1], acc[2], acc[3]}));
      CHECK(den == doctest::Approx(g - 1.0).epsilon(1e-13));
    }
  }
  CHECK(saw_massive_internal);
}

TEST_CASE("evaluate rejects non-conserving externals, listing the residual") {
  const CouplingSpec coupling = CouplingSpec::scalar2(0.3, 1.0);
  const auto p = FourMomentum::on_shell_of(1.0, {0.4, 0, 0});
  const auto q = FourMomentum::on_shell_of(1.0, {-0.1, 0.2, 0});
  const auto k = FourMomentum::on_shell_of(0.0, {0.9, 0.9, 0.9});  // violates conservation
  const std::vector<ExternalLeg> legs{leg("massive", true, "p", p), leg("massive", true, "q", q),
                                      leg("massless", false, "k", k)};
  const auto diagrams = enumerate_diagrams(legs, 1, coupling);
  REQUIRE(diagrams.size() == 1);
  const MatrixElement me = first_order_element(diagrams.front(), 1.0, coupling);
  CHECK_THROWS_WITH(evaluate_element(me), doctest::Contains("violate"));
}

TEST_CASE("spin-sum insertion factors") {
  const CMat4 rest = spin_sum_insertion(1.0, {0, 0, 0});
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const double expect = (i == j && i < 2) ? 2.0 : 0.0;
      CHECK(rest(i, j) == cplx(expect, 0.0));
    }

  const Vec3 q3{0.6, -0.2, 0.9};
  const double m = 1.0, E = on_shell_energy(m, q3);
  const CMat4 n_particle = spin_sum_insertion(m, q3);
  const CMat4 n_anti = spin_sum_insertion(m, q3, true);
  // The two ordering numerators sum to 2m exactly.
  CHECK((n_particle + n_anti - cplx(2.0 * m, 0.0) * CMat4::identity()).max_abs() == 0.0);
  // Idempotency of (1 + gamma^#[q]/m)/2 on shell.
  const CMat4 proj = cplx(1.0 / (2.0 * m), 0.0) * n_particle;
  CHECK((proj * proj - proj).max_abs() <= 1e-13);
  CHECK(std::abs(E - on_shell_energy(m, q3)) == 0.0);
}

TEST_CASE("propagator closed forms") {
  const Propagator el = propagator("electron", 1.0);
  const Vec3 q3{0.5, 0.1, -0.3};
  // off-shell point with g(q,q) = 2 m^2: denominator is m^2.
  const double E = std::sqrt(2.0 + dot3(q3, q3));
  const auto q = FourMomentum::off_shell(E, q3);
  CHECK(el.denominator(q) == doctest::Approx(1.0).epsilon(1e-12));
  const CMat4 num = el.numerator(q);
  const CMat4 expect = cplx(-1.0, 0.0) * CMat4::identity() - momentum_slash(q);
  CHECK((num - expect).max_abs() == 0.0);

  const Propagator pos = propagator("positron", 1.0);
  const CMat4 pnum = pos.numerator(q);
  const CMat4 pexpect = cplx(-1.0, 0.0) * CMat4::identity() + momentum_slash(q);
  CHECK((pnum - pexpect).max_abs() == 0.0);

  // Photon: scalar massless denominator, tensorialized by the metric; the
  // transversal contraction gives -g_B(b, conj b') at g(k,k) = -1.
  const Propagator ph = propagator("photon", 0.0);
  const auto koff = FourMomentum::off_shell(0.0, {1, 0, 0});  // g = -1
  CHECK(ph.denominator(koff) == doctest::Approx(-1.0).epsilon(1e-14));

  const Propagator ml = propagator("massless", 0.0);
  const auto k2 = FourMomentum::off_shell(std::sqrt(3.0), {1, 0, 0});  // g = 2
  CHECK(1.0 / ml.denominator(k2) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("qed compton: diagrams, structural propagator, numeric oracle") {
  const double e = 0.5, m = 1.0;
  const CouplingSpec coupling = CouplingSpec::qed(e, m);
  const auto pe = FourMomentum::on_shell_of(m, {0.2, 0.1, 0.3});
  const auto kin = FourMomentum::on_shell_of(0.0, {0.0, 0.0, 0.8});
  const auto [pout, kout] = solve_two_body(pe, kin, m, 0.0, {0.4, 0.7, 0.2});

  const std::vector<ExternalLeg> legs{leg("electron", true, "p", pe, 0),
                                      leg("photon", true, "k", kin, 0),
                                      leg("electron", false, "p'", pout, 1),
                                      leg("photon", false, "k'", kout, 0)};
  const auto diagrams = enumerate_diagrams(legs, 2, coupling);
  REQUIRE(diagrams.size() == 4);

  std::map<std::string, std::vector<Diagram>> fams;
  for (const auto& d : diagrams) fams[d.family].push_back(d);
  REQUIRE(fams.count("I") == 1);
  REQUIRE(fams.at("I").size() == 2);

  // The primed ordering runs over an electron intermediate, the double
  // primed over a positron.
  for (const auto& d : fams.at("I")) {
    if (d.time_order == TimeOrder::primed) CHECK(d.internals.front().species == "electron");
    if (d.time_order == TimeOrder::double_primed)
      CHECK(d.internals.front().species == "positron");
  }

  const MatrixElement me = second_order_element(fams.at("I"), 1.0, coupling);
  CHECK(me.propagators.front().numerator_form == "m+gamma#[q]");
  CHECK(me.propagators.front().prop.mass == m);
  CHECK(me.constant == cplx(0.0, -2.0 * kPi) * m * e * e);
  CHECK(me.coefficient_weight() == Weight::integer(-4));
  CHECK(me.total_weight() == Weight::integer(0));

  // Factor-by-factor oracle for the numeric value.
  const cplx engine = evaluate_element(me);
  {
    const Tetrad tet = standard_tetrad();
    const SpinorBasis bin = spinor_basis(m, pe, tet);
    const SpinorBasis bout = spinor_basis(m, pout, tet);
    const HelicityBasis hin = helicity_basis(null_tetrad(kin, {1, 0, 0, 0}));
    const HelicityBasis hout = helicity_basis(null_tetrad(kout, {1, 0, 0, 0}));
    const Vec4 qsum{pe.energy + kin.energy, pe.spatial[0] + kin.spatial[0],
                    pe.spatial[1] + kin.spatial[1], pe.spatial[2] + kin.spatial[2]};
    const auto q = FourMomentum::off_shell(qsum[0], {qsum[1], qsum[2], qsum[3]});
    CVec4 pol_out;
    for (int i = 0; i < 4; ++i) pol_out[i] = -std::conj(hout.b_plus[i]);
    const CMat4 numerator = cplx(m, 0.0) * CMat4::identity() + momentum_slash(q);
    const cplx chain = spinor_chain(bout.ubar[1], {gamma_of(pol_out), numerator,
                                                   gamma_of(hin.b_plus)},
                                    bin.u[0]);
    const cplx oracle = cplx(0.0, -2.0 * kPi) * m * e * e /
                        std::sqrt(16.0 * pe.energy * kin.energy * pout.energy * kout.energy) *
                        chain / (q.minkowski_sq() - m * m);
    CHECK(std::abs(engine - oracle) <= 1e-12 * std::max(1.0, std::abs(oracle)));
  }
}

TEST_CASE("polarization sum over internal photon states is frame independent") {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double m = 1.0;
  const Tetrad tet = standard_tetrad();
  const SpinorBasis b1 = spinor_basis(m, FourMomentum::on_shell_of(m, {0.3, -0.2, 0.5}), tet);
  const SpinorBasis b2 = spinor_basis(m, FourMomentum::on_shell_of(m, {-0.1, 0.4, 0.2}), tet);
  auto chainL = [&](const CMat4& g) { return spinor_chain(b1.ubar[0], {g}, b1.u[1]); };
  auto chainR = [&](const CMat4& g) { return spinor_chain(b2.ubar[1], {g}, b2.u[0]); };

  cplx ref(0.0, 0.0);
  bool have_ref = false;
  for (int trial = 0; trial < 20; ++trial) {
    Vec3 k3{u(rng), u(rng), u(rng)};
    if (norm3(k3) < 1e-2) k3 = {0.2, 0.4, 1.0};
    Vec3 b{0.5 * u(rng), 0.5 * u(rng), 0.5 * u(rng)};
    const double g = 1.0 / std::sqrt(1.0 - dot3(b, b));
    const NullTetrad nt =
        null_tetrad(FourMomentum::on_shell_of(0.0, k3), {g, g * b[0], g * b[1], g * b[2]});
    const cplx v = polarization_sum_internal(chainL, chainR, nt);
    if (!have_ref) {
      ref = v;
      have_ref = true;
    } else {
      CHECK(std::abs(v - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
    }
  }

  // Brute force oracle at the rest kinematics: the standard tetrad sum.
  cplx brute(0.0, 0.0);
  for (int lam = 0; lam < 4; ++lam) {
    const double glam = lam == 0 ? 1.0 : -1.0;
    Vec4 leg4{};
    leg4[lam] = 1.0;
    const CMat4 g = gamma_of(leg4);
    brute += glam * chainL(g) * chainR(g);
  }
  CHECK(std::abs(ref - brute) <= 1e-12 * std::max(1.0, std::abs(brute)));
}

TEST_CASE("loop catalog: power counting flags all four figures") {
  const CouplingSpec coupling = CouplingSpec::scalar2(0.3, 1.0);
  const auto figures = scalar_loop_figures(coupling);
  REQUIRE(figures.size() == 4);
  const std::map<std::string, std::pair<int, int>> expect{
      {"self_energy_massive", {1, 1}},
      {"self_energy_massless", {1, 1}},
      {"vertex_correction", {1, 0}},
      {"ladder_two_loop", {2, 1}},
  };
  for (const auto& d : figures) {
    const DivergenceReport r = superficial_divergence(d, coupling);
    const auto [loops, degree] = expect.at(d.name);
    CHECK(r.loops == loops);
    CHECK(r.degree == degree);
    CHECK(r.divergent);

    // Independent falloff tally: 3 dims per free momentum, one power per
    // boson line.
    int boson_lines = 0;
    for (const auto& line : d.internals)
      if (coupling.species(line.species).statistics == Statistics::boson) ++boson_lines;
    CHECK(r.degree == 3 * r.loops - boson_lines);
  }
}

TEST_CASE("superficial divergence rejects trees") {
  const CouplingSpec coupling = CouplingSpec::scalar2(0.3, 1.0);
  const auto p = FourMomentum::on_shell_of(1.0, {1.05, 0, 0});
  const auto q = FourMomentum::on_shell_of(1.0, {-1.05, 0, 0});
  const auto [pp, qp] = solve_two_body(p, q, 1.0, 1.0, {0, 1, 0});
  const std::vector<ExternalLeg> legs{leg("massive", true, "p", p), leg("massive", true, "q", q),
                                      leg("massive", false, "p'", pp),
                                      leg("massive", false, "q'", qp)};
  const auto diagrams = enumerate_diagrams(legs, 2, coupling);
  CHECK_THROWS_WITH(superficial_divergence(diagrams.front(), coupling),
                    doctest::Contains("no loop"));
}

TEST_CASE("tree enumeration solves every internal; loop catalog leaves free momenta") {
  const CouplingSpec coupling = CouplingSpec::scalar2(0.3, 1.0);
  const auto p = FourMomentum::on_shell_of(1.0, {1.05, 0, 0});
  const auto q = FourMomentum::on_shell_of(1.0, {-1.05, 0, 0});
  const auto [pp, qp] = solve_two_body(p, q, 1.0, 1.0, {0.2, 0.9, 0.1});
  const std::vector<ExternalLeg> legs{leg("massive", true, "p", p), leg("massive", true, "q", q),
                                      leg("massive", false, "p'", pp),
                                      leg("massive", false, "q'", qp)};
  for (const auto& d : enumerate_diagrams(legs, 2, coupling)) {
    const auto red = reduce_deltas(d.vertex_deltas(), d.internal_symbols());
    CHECK(red.free_internals.empty());
    CHECK(red.solved.size() == 1);
  }
  for (const auto& d : scalar_loop_figures(coupling)) {
    const auto red = reduce_deltas(d.vertex_deltas(), d.internal_symbols());
    CHECK(!red.free_internals.empty());
  }
}

TEST_CASE("two-body kinematic helper") {
  const auto p = FourMomentum::on_shell_of(1.0, {0.4, 0.2, -0.1});
  const auto q = FourMomentum::on_shell_of(1.0, {-0.2, 0.3, 0.5});
  const auto [a, b] = solve_two_body(p, q, 1.0, 0.5, {1, 1, 0});
  const Vec3 lhs = p.spatial + q.spatial;
  const Vec3 rhs = a.spatial + b.spatial;
  for (int i = 0; i < 3; ++i) CHECK(std::abs(lhs[i] - rhs[i]) <= 1e-12);
  CHECK(p.energy + q.energy == doctest::Approx(a.energy + b.energy).epsilon(1e-12));
  CHECK_THROWS(solve_two_body(p, q, 5.0, 5.0, {1, 0, 0}));  // no phase space
  CHECK_THROWS(solve_two_body(p, q, 1.0, 0.5, {0, 0, 0}));  // no direction
}
