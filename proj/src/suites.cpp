#include "qpert/suites.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "qpert/christoffel.hpp"
#include "qpert/divergence.hpp"
#include "qpert/element.hpp"
#include "qpert/transport.hpp"

namespace qpert {

namespace {

double urand(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

Vec3 random_vec3(std::mt19937_64& rng, double scale) {
  return {urand(rng, -scale, scale), urand(rng, -scale, scale), urand(rng, -scale, scale)};
}

SuiteCheck check_of(const std::string& name, double measured, double threshold,
                    const std::string& detail = "") {
  SuiteCheck c;
  c.name = name;
  c.measured = measured;
  c.threshold = threshold;
  c.passed = measured <= threshold;
  c.detail = detail;
  return c;
}

double minkowski_dot4(const Vec4& a, const Vec4& b) {
  return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
}

SuiteResult identities_suite() {
  SuiteResult out;
  out.suite = "identities";
  std::mt19937_64 rng(0x51u);
  const double m = 1.0;
  const Tetrad tet = standard_tetrad();

  double worst_u = 0.0, worst_v = 0.0, worst_ker = 0.0;
  double gram_u_min = 1e300, gram_v_max = -1e300;
  for (int i = 0; i < 100; ++i) {
    const FourMomentum p = FourMomentum::on_shell_of(m, random_vec3(rng, 10.0 * m / 1.8));
    const SpinorBasis sb = spinor_basis(m, p, tet);
    const CMat4 slash = momentum_slash(p);
    const CMat4 plus =
        cplx(0.5, 0.0) * (CMat4::identity() + (1.0 / m) * slash);
    const CMat4 minus =
        cplx(0.5, 0.0) * (CMat4::identity() - (1.0 / m) * slash);
    worst_u = std::max(worst_u, (sb.spin_sum_u() - plus).max_abs());
    worst_v = std::max(worst_v, (sb.spin_sum_v() - minus).max_abs());
    for (int A = 0; A < 2; ++A) {
      const CVec4 r = slash * sb.u[A] - cplx(m, 0.0) * sb.u[A];
      worst_ker = std::max(worst_ker, cvec_norm(r));
    }
    // k restricted to span{u_A}: eigenvalue signs (+,+); span{v_A}: (-,-).
    const KMetric k;
    for (int A = 0; A < 2; ++A) {
      gram_u_min = std::min(gram_u_min, std::real(k.pair(sb.u[A], sb.u[A])));
      gram_v_max = std::max(gram_v_max, std::real(k.pair(sb.v[A], sb.v[A])));
    }
  }
  out.checks.push_back(check_of("spin_sum_u_projector", worst_u, 1e-12));
  out.checks.push_back(check_of("spin_sum_v_projector", worst_v, 1e-12));
  out.checks.push_back(check_of("boost_kernel_membership", worst_ker, 1e-11 * m));
  out.checks.push_back(check_of("k_signature_Wplus", gram_u_min > 0.5 ? 0.0 : 1.0, 0.5,
                                "min k(u,u) = " + std::to_string(gram_u_min)));
  out.checks.push_back(check_of("k_signature_Wminus", gram_v_max < -0.5 ? 0.0 : 1.0, 0.5,
                                "max k(v,v) = " + std::to_string(gram_v_max)));

  double worst_cliff = 0.0, worst_kcomp = 0.0;
  const KMetric km;
  for (int i = 0; i < 100; ++i) {
    const Vec4 v = {urand(rng, -2, 2), urand(rng, -2, 2), urand(rng, -2, 2), urand(rng, -2, 2)};
    const Vec4 w = {urand(rng, -2, 2), urand(rng, -2, 2), urand(rng, -2, 2), urand(rng, -2, 2)};
    const CMat4 gv = gamma_of(v), gw = gamma_of(w);
    const CMat4 anti = gv * gw + gw * gv;
    const CMat4 expect = cplx(2.0 * minkowski_dot4(v, w), 0.0) * CMat4::identity();
    worst_cliff = std::max(worst_cliff, (anti - expect).max_abs());

    CVec4 phi, psi;
    for (int c = 0; c < 4; ++c) {
      phi[c] = cplx(urand(rng, -1, 1), urand(rng, -1, 1));
      psi[c] = cplx(urand(rng, -1, 1), urand(rng, -1, 1));
    }
    const cplx lhs = km.pair(gv * phi, psi);
    const cplx rhs = km.pair(phi, gv * psi);
    worst_kcomp = std::max(worst_kcomp, std::abs(lhs - rhs));
  }
  out.checks.push_back(check_of("clifford_relation", worst_cliff, 1e-13));
  out.checks.push_back(check_of("k_metric_compatibility", worst_kcomp, 1e-13));

  double worst_gram = 0.0, worst_eig = 0.0, worst_trans = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Vec3 k3 = random_vec3(rng, 2.5);
    if (norm3(k3) < 1e-3) continue;
    Vec3 b = random_vec3(rng, 0.6);
    const double g = 1.0 / std::sqrt(1.0 - dot3(b, b));
    const Vec4 obs{g, g * b[0], g * b[1], g * b[2]};
    const FourMomentum k = FourMomentum::on_shell_of(0.0, k3);
    const NullTetrad nt = null_tetrad(k, obs);
    worst_gram = std::max(worst_gram, nt.gram_residual());
    const HelicityBasis hb = helicity_basis(nt);
    for (int Q = 0; Q < 2; ++Q) {
      const CVec4& bq = hb.mode(Q);
      const CVec4 h = hodge_B(nt, bq);
      const cplx ev = Q == 0 ? cplx(1.0, 0.0) : cplx(-1.0, 0.0);
      CVec4 resid{};
      for (int c = 0; c < 4; ++c) resid[c] = cplx(0, -1) * h[c] - ev * bq[c];
      worst_eig = std::max(worst_eig, cvec_norm(resid));
      const CVec4 kc{cplx(k.energy), cplx(k3[0]), cplx(k3[1]), cplx(k3[2])};
      worst_trans = std::max(worst_trans, std::abs(minkowski_bilinear(bq, kc)));
    }
  }
  out.checks.push_back(check_of("null_tetrad_gram", worst_gram, 1e-12));
  out.checks.push_back(check_of("helicity_eigenrelation", worst_eig, 1e-12));
  out.checks.push_back(check_of("helicity_transversality", worst_trans, 1e-13));

  {  // <LambdaBar, f> invariance under the length unit.
    const std::array<TestFunction, 3> legs{
        TestFunction{TestFunction::Family::gaussian, {0.4, 0.1, -0.2}, 0.35},
        TestFunction{TestFunction::Family::gaussian, {-0.3, 0.2, 0.1}, 0.3},
        TestFunction{TestFunction::Family::gaussian, {0.0, -0.2, 0.3}, 0.45}};
    const std::array<int, 3> signs{+1, +1, +1};
    const std::array<double, 3> masses{1.0, 1.0, 0.0};
    const double ref = lambda_contraction(1.0, signs, masses, legs, 8);
    double worst = 0.0;
    for (const double l : {0.5, 2.0, 10.0}) {
      const double v = lambda_contraction(l, signs, masses, legs, 8);
      worst = std::max(worst, std::abs(v - ref) / std::abs(ref));
    }
    out.checks.push_back(check_of("lambda_unscaled_l_invariance", worst, 1e-12));
  }
  {  // frame coefficient is weight zero by construction.
    const auto fc = frame_coefficient(2.0, 1.0, {0.3, 0.1, -0.2});
    out.checks.push_back(check_of("frame_coefficient_weight",
                                  fc.weight == Weight::integer(0) ? 0.0 : 1.0, 0.5));
  }
  return out;
}

double christoffel_schwarzschild_oracle_residual(double M, const Vec4& x) {
  // Closed-form diagonal-chart coefficients.
  const double r = x[1], th = x[2];
  const double f = 1.0 - 2.0 * M / r;
  double ref[4][4][4] = {};
  ref[0][0][1] = ref[0][1][0] = M / (r * r * f);
  ref[1][0][0] = M * f / (r * r);
  ref[1][1][1] = -M / (r * r * f);
  ref[1][2][2] = -r * f;
  ref[1][3][3] = -r * f * std::sin(th) * std::sin(th);
  ref[2][1][2] = ref[2][2][1] = 1.0 / r;
  ref[2][3][3] = -std::sin(th) * std::cos(th);
  ref[3][1][3] = ref[3][3][1] = 1.0 / r;
  ref[3][2][3] = ref[3][3][2] = std::cos(th) / std::sin(th);

  const MetricField g = MetricField::from_catalog("schwarzschild-diagonal", {{"M", M}});
  const Christoffel got = christoffel_at(g, x);
  double worst = 0.0;
  for (int l = 0; l < 4; ++l)
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) worst = std::max(worst, std::abs(got.coeffs[l][a][b] - ref[l][a][b]));
  return worst;
}

SuiteResult transport_suite() {
  SuiteResult out;
  out.suite = "transport";
  std::mt19937_64 rng(0x52u);

  {
    const MetricField mink = MetricField::from_catalog("minkowski");
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const Vec4 x{urand(rng, -5, 5), urand(rng, -5, 5), urand(rng, -5, 5), urand(rng, -5, 5)};
      worst = std::max(worst, christoffel_at(mink, x).max_abs());
    }
    out.checks.push_back(check_of("minkowski_christoffels_zero", worst, 0.0));
  }
  {
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const Vec4 x{0.0, urand(rng, 6.0, 30.0), urand(rng, 0.6, 2.5), urand(rng, 0.0, 6.28)};
      worst = std::max(worst, christoffel_schwarzschild_oracle_residual(1.0, x));
    }
    out.checks.push_back(check_of("schwarzschild_christoffel_oracle", worst, 1e-6));
  }
  {
    const MetricField g = MetricField::from_catalog("schwarzschild-diagonal", {{"M", 1.0}});
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const Vec4 x{0.0, urand(rng, 6.0, 30.0), urand(rng, 0.6, 2.5), urand(rng, 0.0, 6.28)};
      worst = std::max(worst, christoffel_at(g, x).symmetrization_residual());
    }
    out.checks.push_back(check_of("christoffel_symmetrized_exactly", worst, 0.0));
  }

  const MetricField sch = MetricField::from_catalog("schwarzschild-diagonal", {{"M", 1.0}});
  const Worldline orbit = schwarzschild_circular_orbit(1.0, 10.0, 0.0, 1.0);
  {
    // Orthonormal tetrad along a circular orbit: Gram preserved by both
    // transports, and Fermi == parallel on the geodesic.
    const Vec4 x0 = orbit.position(0.0);
    const Mat4 g0 = sch.eval(x0);
    const Vec4 u0 = orbit.velocity(0.0);
    // Build a g-orthonormal frame from u0 and coordinate axes.
    std::array<Vec4, 4> frame{u0, Vec4{0, 1, 0, 0}, Vec4{0, 0, 1, 0}, Vec4{0, 0, 0, 1}};
    for (int a = 1; a < 4; ++a) {
      for (int b = 0; b < a; ++b) {
        double num = 0.0, den = 0.0;
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) {
            num += g0[i][j] * frame[a][i] * frame[b][j];
            den += g0[i][j] * frame[b][i] * frame[b][j];
          }
        for (int i = 0; i < 4; ++i) frame[a][i] -= (num / den) * frame[b][i];
      }
      double nn = 0.0;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) nn += g0[i][j] * frame[a][i] * frame[a][j];
      const double inv = 1.0 / std::sqrt(-nn);
      for (int i = 0; i < 4; ++i) frame[a][i] *= inv;
    }

    std::array<TransportPath, 4> par, fer;
    for (int a = 0; a < 4; ++a) {
      par[a] = parallel_transport(sch, orbit, frame[a], 0.0, 1.0);
      fer[a] = fermi_transport(sch, orbit, frame[a], 0.0, 1.0);
    }
    const Vec4 x1 = orbit.position(1.0);
    const Mat4 g1 = sch.eval(x1);
    const Mat4 eta = minkowski_metric();
    double worst_gram = 0.0, worst_fp = 0.0;
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        double s = 0.0;
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) s += g1[i][j] * par[a].back()[i] * par[b].back()[j];
        worst_gram = std::max(worst_gram, std::abs(s - eta[a][b]));
      }
      for (int i = 0; i < 4; ++i)
        worst_fp = std::max(worst_fp, std::abs(par[a].back()[i] - fer[a].back()[i]));
    }
    out.checks.push_back(check_of("transport_preserves_tetrad_gram", worst_gram, 1e-8));
    out.checks.push_back(check_of("fermi_equals_parallel_on_geodesic", worst_fp, 1e-10));
  }
  {
    // Accelerated worldline: Fermi transport keeps the tangent.
    const MetricField mink = MetricField::from_catalog("minkowski");
    const Worldline acc = minkowski_uniform_acceleration(0.8, 0.0, 1.0);
    const TransportPath path = fermi_transport(mink, acc, acc.velocity(0.0), 0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) worst = std::max(worst, std::abs(path.back()[i] - acc.velocity(1.0)[i]));
    out.checks.push_back(check_of("fermi_preserves_tangent", worst, 1e-8));
  }
  return out;
}

SuiteResult propagators_suite() {
  SuiteResult out;
  out.suite = "propagators";
  const EpsSchedule eps;

  for (const double m : {0.0, 1.0})
    for (const double t : {0.5, 1.0, 2.0}) {
      TestFunction phi;
      phi.center = {2.0, 0.3, -0.4};
      phi.width = 0.35;
      const HeavisideResult r = verify_heaviside_identity(t, +1, m, phi, eps);
      std::ostringstream name;
      name << "heaviside_4d_m" << m << "_t" << t;
      out.checks.push_back(check_of(name.str(), r.relerr, 1e-2));
    }
  {
    const HeavisideResult r = verify_heaviside_1d(1.0, eps);
    out.checks.push_back(check_of("heaviside_1d_representation", r.relerr, 1e-3));
  }
  {
    const double rho = 1.05;
    const auto p = FourMomentum::on_shell_of(1.0, {rho, 0, 0});
    const auto q = FourMomentum::on_shell_of(1.0, {-rho, 0, 0});
    const auto pp = FourMomentum::on_shell_of(1.0, {0, rho, 0});
    const auto qp = FourMomentum::on_shell_of(1.0, {0, -rho, 0});
    for (const double mu : {0.0, 0.6}) {
      const PropagatorCombinationResult r =
          verify_propagator_combination(mu, {p, q, pp, qp}, eps);
      std::ostringstream name;
      name << "timeordered_vs_closed_mu" << mu;
      out.checks.push_back(check_of(name.str(), r.relerr.back(), 3e-2));
      out.checks.push_back(check_of(name.str() + "_monotone_window_trend",
                                    r.monotone_tail ? 0.0 : 1.0, 0.5));
    }
  }
  return out;
}

SuiteResult divergences_suite() {
  SuiteResult out;
  out.suite = "divergences";
  const CouplingSpec coupling = CouplingSpec::scalar2(0.3, 1.0);
  const std::vector<double> cutoffs{4.0, 8.0, 16.0, 32.0, 64.0};

  for (const Diagram& d : scalar_loop_figures(coupling)) {
    const DivergenceReport power = superficial_divergence(d, coupling);
    out.checks.push_back(check_of(d.name + "_power_count", power.divergent ? 0.0 : 1.0, 0.5,
                                  "degree " + std::to_string(power.degree)));
    const LoopProbeResult probe = probe_loop_divergence(d, cutoffs, coupling);
    out.checks.push_back(check_of(d.name + "_probe_divergent",
                                  (probe.divergent && probe.growth_exponent > 0.0) ? 0.0 : 1.0,
                                  0.5, "exponent " + std::to_string(probe.growth_exponent)));
    out.checks.push_back(check_of(d.name + "_exponent_vs_degree",
                                  std::abs(probe.growth_exponent - power.degree), 0.5));
  }
  {
    const Diagram d = scalar_loop_figures(coupling).front();
    const LoopProbeResult ctrl = probe_loop_divergence(d, cutoffs, coupling, {}, true);
    out.checks.push_back(check_of("regulated_control_converges", ctrl.divergent ? 1.0 : 0.0, 0.5,
                                  "exponent " + std::to_string(ctrl.growth_exponent)));
  }
  return out;
}

}  // namespace

SuiteResult run_suite(const std::string& suite_id) {
  if (suite_id == "identities") return identities_suite();
  if (suite_id == "transport") return transport_suite();
  if (suite_id == "propagators") return propagators_suite();
  if (suite_id == "divergences") return divergences_suite();
  throw std::runtime_error("cli: unknown verification suite '" + suite_id + "'");
}

std::vector<std::string> suite_names() {
  return {"identities", "transport", "propagators", "divergences"};
}

}  // namespace qpert
