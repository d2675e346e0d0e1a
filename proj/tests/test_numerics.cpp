#include <doctest.h>

#include <cmath>

#include "qpert/verify.hpp"

using namespace qpert;

namespace {

EpsSchedule default_eps() { return {}; }

TestFunction offset_gaussian() {
  TestFunction phi;
  phi.center = {2.0, 0.3, -0.4};
  phi.width = 0.35;
  return phi;
}

}  // namespace

TEST_CASE("gauss-legendre rules integrate polynomials exactly") {
  const auto& x = GaussLegendre::nodes(8);
  const auto& w = GaussLegendre::weights(8);
  double sum_w = 0.0, moment2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sum_w += w[i];
    moment2 += w[i] * x[i] * x[i];
  }
  CHECK(sum_w == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(moment2 == doctest::Approx(2.0 / 3.0).epsilon(1e-14));

  CompositeRule r;
  r.append_interval(0.0, 3.0, 5, 6);
  double s = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) s += r.w[i] * std::exp(-r.x[i]);
  CHECK(s == doctest::Approx(1.0 - std::exp(-3.0)).epsilon(1e-12));
}

TEST_CASE("richardson extrapolation recovers polynomial limits") {
  const std::vector<double> eps{1e-1, 3e-2, 1e-2, 3e-3, 1e-3};
  std::vector<cplx> f;
  for (double e : eps) f.push_back(cplx(2.5 - 3.0 * e + 7.0 * e * e, 0.5 * e));
  const auto ex = richardson_extrapolate(eps, f, 2);
  CHECK(std::abs(ex.value - cplx(2.5, 0.0)) <= 1e-10);
}

TEST_CASE("eps schedule validation") {
  EpsSchedule bad;
  bad.eps = {1e-2, 1e-1};
  CHECK_THROWS(bad.validate());
  bad.eps = {1e-1, -1e-2};
  CHECK_THROWS(bad.validate());
  CHECK_NOTHROW(default_eps().validate());
}

TEST_CASE("1d heaviside representation") {
  const auto r = verify_heaviside_1d(1.0, default_eps());
  CHECK(r.relerr <= 1e-3);
  // negative time: the representation integrates to zero
  const auto r2 = verify_heaviside_1d(-1.0, default_eps());
  CHECK(std::abs(r2.rhs) <= 1e-3 * 2.0 * 3.14159265358979);
}

TEST_CASE("heaviside identity on a gaussian test function (single cheap case)") {
  HeavisideConfig cfg;
  cfg.n3 = 8;
  const auto r = verify_heaviside_identity(1.0, +1, 1.0, offset_gaussian(), default_eps(), cfg);
  CHECK(r.relerr <= 1e-2);
  CHECK(std::abs(r.lhs) > 0.0);
}

TEST_CASE("heaviside identity vanishes for negative time") {
  HeavisideConfig cfg;
  cfg.n3 = 8;
  const auto r = verify_heaviside_identity(-1.0, +1, 1.0, offset_gaussian(), default_eps(), cfg);
  CHECK(std::abs(r.lhs) == 0.0);
  // the extrapolated 4D side tends to zero on the same scale as the
  // positive-time value
  const auto rp = verify_heaviside_identity(1.0, +1, 1.0, offset_gaussian(), default_eps(), cfg);
  CHECK(std::abs(r.rhs) <= 1e-2 * std::abs(rp.lhs));
}

TEST_CASE("time-ordered combination vs closed form (cheap configuration)") {
  const double rho = 1.05;
  const auto p = FourMomentum::on_shell_of(1.0, {rho, 0, 0});
  const auto q = FourMomentum::on_shell_of(1.0, {-rho, 0, 0});
  const auto pp = FourMomentum::on_shell_of(1.0, {0, rho, 0});
  const auto qp = FourMomentum::on_shell_of(1.0, {0, -rho, 0});
  PropagatorCombinationConfig cfg;
  cfg.n_radial = 24;
  cfg.n_windows = 3;
  const auto r = verify_propagator_combination(0.0, {p, q, pp, qp}, default_eps(), cfg);
  CHECK(r.relerr.back() <= 3e-2);

  // quadratic coupling dependence is trivial at this level: the measured
  // object is coupling-free, so instead check determinism of the pipeline
  const auto r2 = verify_propagator_combination(0.0, {p, q, pp, qp}, default_eps(), cfg);
  CHECK(r.timeordered.back() == r2.timeordered.back());
  CHECK(r.closed_form == r2.closed_form);
}

TEST_CASE("propagator combination validates its kinematics") {
  const auto p = FourMomentum::on_shell_of(1.0, {0.5, 0, 0});
  const auto q = FourMomentum::on_shell_of(1.0, {-0.2, 0, 0});
  CHECK_THROWS(verify_propagator_combination(0.0, {p, q, p, q}, default_eps()));
}

TEST_CASE("loop probe: divergent figure vs regulated control") {
  const CouplingSpec coupling = CouplingSpec::scalar2(0.3, 1.0);
  const auto figs = scalar_loop_figures(coupling);
  const std::vector<double> cutoffs{4, 8, 16, 32};
  LoopProbeConfig cfg;
  cfg.n_nodes = 24;

  const auto self_energy = probe_loop_divergence(figs.front(), cutoffs, coupling, cfg);
  CHECK(self_energy.divergent);
  CHECK(self_energy.monotone);
  CHECK(self_energy.growth_exponent > 0.0);

  const auto control = probe_loop_divergence(figs.front(), cutoffs, coupling, cfg, true);
  CHECK(!control.divergent);
}

TEST_CASE("quadrature pipelines are deterministic") {
  const auto a = verify_heaviside_1d(1.0, default_eps());
  const auto b = verify_heaviside_1d(1.0, default_eps());
  CHECK(a.rhs == b.rhs);
  CHECK(a.relerr == b.relerr);
}
