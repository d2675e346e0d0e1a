#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "qpert/christoffel.hpp"
#include "qpert/dirac.hpp"
#include "qpert/transport.hpp"

using namespace qpert;

namespace {

// Independent closed-form oracle for the diagonal Schwarzschild chart.
double schwarzschild_gamma(int l, int a, int b, double M, double r, double th) {
  const double f = 1.0 - 2.0 * M / r;
  if (l == 0 && ((a == 0 && b == 1) || (a == 1 && b == 0))) return M / (r * r * f);
  if (l == 1 && a == 0 && b == 0) return M * f / (r * r);
  if (l == 1 && a == 1 && b == 1) return -M / (r * r * f);
  if (l == 1 && a == 2 && b == 2) return -r * f;
  if (l == 1 && a == 3 && b == 3) return -r * f * std::sin(th) * std::sin(th);
  if (l == 2 && ((a == 1 && b == 2) || (a == 2 && b == 1))) return 1.0 / r;
  if (l == 2 && a == 3 && b == 3) return -std::sin(th) * std::cos(th);
  if (l == 3 && ((a == 1 && b == 3) || (a == 3 && b == 1))) return 1.0 / r;
  if (l == 3 && ((a == 2 && b == 3) || (a == 3 && b == 2))) return std::cos(th) / std::sin(th);
  return 0.0;
}

double mdot(const MetricField& g, const Vec4& x, const Vec4& u, const Vec4& v) {
  return metric_dot(g, x, u, v);
}

}  // namespace

TEST_CASE("minkowski christoffels vanish exactly") {
  const MetricField mink = MetricField::from_catalog("minkowski");
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-8.0, 8.0);
  for (int i = 0; i < 100; ++i) {
    const Vec4 x{u(rng), u(rng), u(rng), u(rng)};
    const Christoffel c = christoffel_at(mink, x);
    CHECK(c.max_abs() == 0.0);
    CHECK(c.symmetrization_residual() == 0.0);
  }
}

TEST_CASE("schwarzschild christoffels match the closed-form oracle") {
  const MetricField g = MetricField::from_catalog("schwarzschild-diagonal", {{"M", 1.0}});
  const Vec4 x{0.0, 10.0, 1.2, 0.7};
  const Christoffel c = christoffel_at(g, x);
  // Gamma^r_tt = M (r - 2M)/r^3 = 0.008 at M = 1, r = 10.
  CHECK(c.coeffs[1][0][0] == doctest::Approx(0.008).epsilon(1e-6));
  double worst = 0.0;
  for (int l = 0; l < 4; ++l)
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        worst = std::max(worst,
                         std::abs(c.coeffs[l][a][b] - schwarzschild_gamma(l, a, b, 1.0, 10.0, 1.2)));
  CHECK(worst <= 1e-6);
  CHECK(c.symmetrization_residual() == 0.0);
}

TEST_CASE("christoffels are invariant under constant rescaling of the metric") {
  const MetricField g = MetricField::from_catalog("schwarzschild-diagonal", {{"M", 1.0}});
  const MetricField g4 = MetricField::custom("4*schwarzschild", [&](const Vec4& x) {
    Mat4 m = MetricField::from_catalog("schwarzschild-diagonal", {{"M", 1.0}}).eval(x);
    for (auto& row : m)
      for (auto& v : row) v *= 4.0;
    return m;
  });
  const Vec4 x{0.0, 12.0, 1.0, 0.3};
  const Christoffel a = christoffel_at(g, x);
  const Christoffel b = christoffel_at(g4, x);
  double worst = 0.0;
  for (int l = 0; l < 4; ++l)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        worst = std::max(worst, std::abs(a.coeffs[l][i][j] - b.coeffs[l][i][j]));
  CHECK(worst <= 1e-9);
}

TEST_CASE("degenerate metric is rejected") {
  const MetricField bad = MetricField::custom("degenerate", [](const Vec4&) {
    Mat4 m{};
    m[0][0] = 1.0;
    m[1][1] = -1.0;
    m[2][2] = -1.0;  // m[3][3] stays zero
    return m;
  });
  CHECK_THROWS_WITH(christoffel_at(bad, {0, 0, 0, 0}), doctest::Contains("degenerate"));
}

TEST_CASE("phase connection coefficients") {
  const MetricField mink = MetricField::from_catalog("minkowski");
  const Christoffel flat = christoffel_at(mink, {0, 1, 2, 3});
  const auto zero = phase_connection_coeffs(flat, FourMomentum::on_shell_of(1.0, {0.3, 0, 0}));
  for (const auto& row : zero)
    for (double v : row) CHECK(v == 0.0);

  const MetricField g = MetricField::from_catalog("schwarzschild-diagonal", {{"M", 1.0}});
  const Christoffel gam = christoffel_at(g, {0.0, 10.0, 1.3, 0.4});
  const auto rest = phase_connection_coeffs(gam, FourMomentum::on_shell_of(1.0, {0, 0, 0}));
  for (int a = 0; a < 4; ++a)
    for (int i = 0; i < 3; ++i)
      CHECK(rest[a][i] == doctest::Approx(-gam.coeffs[0][a][i + 1]).epsilon(1e-12));

  // Linearity in the covector argument.
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec4 p{u(rng), u(rng), u(rng), u(rng)};
    const Vec4 q{u(rng), u(rng), u(rng), u(rng)};
    const double al = u(rng), be = u(rng);
    const Vec4 mix{al * p[0] + be * q[0], al * p[1] + be * q[1], al * p[2] + be * q[2],
                   al * p[3] + be * q[3]};
    const auto fp = phase_connection_coeffs_free(gam, p);
    const auto fq = phase_connection_coeffs_free(gam, q);
    const auto fm = phase_connection_coeffs_free(gam, mix);
    for (int a = 0; a < 4; ++a)
      for (int i = 0; i < 3; ++i)
        CHECK(std::abs(fm[a][i] - al * fp[a][i] - be * fq[a][i]) <= 1e-12);
  }

  CHECK_THROWS_WITH(phase_connection_coeffs(gam, FourMomentum::off_shell(2.0, {0, 0, 0})),
                    doctest::Contains("on-shell"));
}

TEST_CASE("half-density connection coefficient") {
  const MetricField mink = MetricField::from_catalog("minkowski");
  const Christoffel flat = christoffel_at(mink, {0, 1, 2, 3});
  const auto zero = halfdensity_connection_coeff(flat, mink.inverse_at({0, 1, 2, 3}),
                                                 FourMomentum::on_shell_of(1.0, {0.2, 0.1, 0}));
  for (double v : zero) CHECK(v == 0.0);

  const MetricField g = MetricField::from_catalog("schwarzschild-diagonal", {{"M", 1.0}});
  const Vec4 x{0.0, 10.0, 1.3, 0.4};
  const Christoffel gam = christoffel_at(g, x);
  const Mat4 ginv = g.inverse_at(x);

  // At rest the first term vanishes: result = 1/2 Gamma^i_{ai}.
  const auto rest = halfdensity_connection_coeff(gam, ginv, FourMomentum::on_shell_of(1.0, {0, 0, 0}));
  for (int a = 0; a < 4; ++a) {
    double tr = 0.0;
    for (int i = 1; i <= 3; ++i) tr += gam.coeffs[i][a][i];
    CHECK(rest[a] == doctest::Approx(0.5 * tr).epsilon(1e-12));
  }

  // Independent term-by-term substitution at a moving sample point.
  const auto p = FourMomentum::on_shell_of(1.0, {0.4, -0.2, 0.3});
  const auto got = halfdensity_connection_coeff(gam, ginv, p);
  const Vec4 pc = p.components();
  for (int a = 0; a < 4; ++a) {
    double first = 0.0;
    for (int i = 1; i <= 3; ++i)
      for (int j = 1; j <= 3; ++j) first += gam.coeffs[0][a][i] * ginv[i][j] * pc[j];
    double second = 0.0;
    for (int i = 1; i <= 3; ++i) second += gam.coeffs[i][a][i];
    CHECK(got[a] == doctest::Approx(-first / pc[0] + 0.5 * second).epsilon(1e-12));
  }
}

TEST_CASE("parallel transport in minkowski is constant") {
  const MetricField mink = MetricField::from_catalog("minkowski");
  const Worldline line = minkowski_line({0.3, 0.1, -0.2}, 0.0, 2.0);
  const Vec4 v0{0.7, -0.4, 0.2, 1.1};
  const auto path = parallel_transport(mink, line, v0, 0.0, 2.0);
  for (int i = 0; i < 4; ++i) CHECK(path.back()[i] == doctest::Approx(v0[i]).epsilon(1e-12));
}

TEST_CASE("geodesic tangent transports onto itself") {
  const MetricField g = MetricField::from_catalog("schwarzschild-diagonal", {{"M", 1.0}});
  const Worldline orbit = schwarzschild_circular_orbit(1.0, 10.0, 0.0, 1.0);
  CHECK(orbit.unit_tangent_residual(g) <= 1e-10);
  const auto path = parallel_transport(g, orbit, orbit.velocity(0.0), 0.0, 1.0);
  const Vec4 expect = orbit.velocity(1.0);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(path.back()[i] - expect[i]) <= 1e-8);
}

TEST_CASE("transport conserves the metric product") {
  const MetricField g = MetricField::from_catalog("schwarzschild-diagonal", {{"M", 1.0}});
  const Worldline orbit = schwarzschild_circular_orbit(1.0, 10.0, 0.0, 1.0);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    const Vec4 v0{u(rng), u(rng), u(rng), u(rng)};
    const auto path = parallel_transport(g, orbit, v0, 0.0, 1.0);
    const double n0 = mdot(g, orbit.position(0.0), v0, v0);
    const double n1 = mdot(g, orbit.position(1.0), path.back(), path.back());
    CHECK(std::abs(n1 - n0) <= 1e-8);
  }
}

TEST_CASE("fermi transport matches parallel transport on a geodesic") {
  const MetricField g = MetricField::from_catalog("schwarzschild-diagonal", {{"M", 1.0}});
  const Worldline orbit = schwarzschild_circular_orbit(1.0, 10.0, 0.0, 1.0);
  const Vec4 v0{0.2, 0.5, -0.1, 0.4};
  const auto par = parallel_transport(g, orbit, v0, 0.0, 1.0);
  const auto fer = fermi_transport(g, orbit, v0, 0.0, 1.0);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(par.back()[i] - fer.back()[i]) <= 1e-10);
}

TEST_CASE("fermi transport preserves the tangent of an accelerated worldline") {
  const MetricField mink = MetricField::from_catalog("minkowski");
  const Worldline acc = minkowski_uniform_acceleration(0.8, 0.0, 1.5);
  // Covariant acceleration is nonzero and orthogonal to the tangent.
  const Vec4 a = covariant_acceleration(mink, acc, 0.4);
  CHECK(std::abs(mdot(mink, acc.position(0.4), a, acc.velocity(0.4))) <= 1e-12);
  CHECK(mdot(mink, acc.position(0.4), a, a) == doctest::Approx(-0.64).epsilon(1e-10));

  const auto path = fermi_transport(mink, acc, acc.velocity(0.0), 0.0, 1.5);
  const Vec4 expect = acc.velocity(1.5);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(path.back()[i] - expect[i]) <= 1e-8);
}

TEST_CASE("fermi transport keeps an orthonormal tetrad orthonormal") {
  const MetricField mink = MetricField::from_catalog("minkowski");
  const Worldline acc = minkowski_uniform_acceleration(0.5, 0.0, 1.0);
  const std::array<Vec4, 4> start{acc.velocity(0.0), Vec4{std::sinh(0.0), std::cosh(0.0), 0, 0},
                                  Vec4{0, 0, 1, 0}, Vec4{0, 0, 0, 1}};
  std::array<TransportPath, 4> out;
  for (int i = 0; i < 4; ++i) out[i] = fermi_transport(mink, acc, start[i], 0.0, 1.0);
  const Mat4 eta = minkowski_metric();
  const Vec4 x1 = acc.position(1.0);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      CHECK(std::abs(mdot(mink, x1, out[a].back(), out[b].back()) - eta[a][b]) <= 1e-8);
}

TEST_CASE("worldline import from JSON nodes") {
  const std::string path = "test_worldline_nodes.json";
  {
    std::ofstream f(path);
    f << "[";
    const int n = 200;
    for (int i = 0; i <= n; ++i) {
      const double t = 2.0 * i / n;
      const double g = 1.0 / std::sqrt(1.0 - 0.25);
      f << "[" << t << "," << g * t << "," << 0.5 * g * t << ",0,0]";
      if (i != n) f << ",";
    }
    f << "]";
  }
  const Worldline wl = Worldline::from_json_file(path);
  const MetricField mink = MetricField::from_catalog("minkowski");
  CHECK(wl.unit_tangent_residual(mink) <= 1e-6);
  const auto vel = wl.velocity(1.0);
  CHECK(vel[0] == doctest::Approx(1.0 / std::sqrt(0.75)).epsilon(1e-6));
  std::remove(path.c_str());

  CHECK_THROWS(Worldline::from_json_file("nonexistent_worldline.json"));
}
