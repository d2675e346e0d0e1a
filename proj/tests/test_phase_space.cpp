#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "qpert/delta.hpp"
#include "qpert/lambda.hpp"
#include "qpert/momentum.hpp"
#include "qpert/multi_index.hpp"
#include "qpert/verify.hpp"

using namespace qpert;

TEST_CASE("on-shell energy") {
  CHECK(on_shell_energy(1.0, {0, 0, 0}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(on_shell_energy(0.0, {3, 4, 0}) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(on_shell_energy(3.0, {0, 0, 4}) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK_THROWS_WITH(on_shell_energy(0.0, {0, 0, 0}),
                    doctest::Contains("tip of the null cone"));
  CHECK_THROWS(on_shell_energy(-1.0, {0, 0, 0}));
}

TEST_CASE("shell residual property at random momenta") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 200; ++i) {
    const double m = std::abs(u(rng));
    const Vec3 p3{u(rng), u(rng), u(rng)};
    const auto p = FourMomentum::on_shell_of(m, p3);
    CHECK(std::abs(p.minkowski_sq() - m * m) <= 1e-12 * p.energy * p.energy);
    CHECK(p.shell_residual_ok());
  }
}

TEST_CASE("leray half-density weight") {
  // 1/sqrt(2 E); at rest with m = 1 this is the 1/sqrt(2) of the fibre form.
  const auto rest = leray_halfdensity_weight(1.0, {0, 0, 0});
  CHECK(rest.value.real() == doctest::Approx(0.7071067811865476).epsilon(1e-15));
  CHECK(rest.weight == Weight::halves(1));
  CHECK(leray_halfdensity_weight(0.0, {0, 0, 1}).value.real() ==
        doctest::Approx(0.7071067811865476).epsilon(1e-15));
  CHECK(leray_halfdensity_weight(1.0, {0, 0, std::sqrt(3.0)}).value.real() ==
        doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("frame coefficient is the unscaled 1/sqrt(2 l^3 p0)") {
  const auto a = frame_coefficient(1.0, 1.0, {0, 0, 0});
  CHECK(a.value.real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(a.weight == Weight::integer(0));
  const auto b = frame_coefficient(2.0, 1.0, {0, 0, 0});
  CHECK(b.value.real() == doctest::Approx(0.25).epsilon(1e-15));
  CHECK_THROWS(frame_coefficient(0.0, 1.0, {0, 0, 0}));
}

TEST_CASE("scaled quantity arithmetic") {
  const ScaledQuantity a(2.0, Weight::integer(-1));
  const ScaledQuantity b(3.0, Weight::halves(1));
  CHECK((a * b).weight == Weight::halves(-1));
  CHECK((a * b).value.real() == doctest::Approx(6.0));
  CHECK_THROWS_WITH(a + b, doctest::Contains("weight mismatch"));
  CHECK((a + a).value.real() == doctest::Approx(4.0));
}

namespace {

FrameLabel label(const std::string& sp, double m, const Vec3& p, int idx) {
  FrameLabel l;
  l.species = sp;
  l.momentum = FourMomentum::on_shell_of(m, p);
  l.classical_index = idx;
  return l;
}

}  // namespace

TEST_CASE("fock normalization, bosons") {
  MultiIndex mi;
  mi.statistics = Statistics::boson;
  mi.graphic = {{label("a", 1.0, {0, 0, 0}, 0), 2}};
  CHECK(fock_normalization(mi).normalization == doctest::Approx(1.0 / std::sqrt(2.0)));

  mi.graphic = {{label("a", 1.0, {0, 0, 0}, 0), 1}, {label("b", 1.0, {0, 0, 1}, 0), 3}};
  CHECK(fock_normalization(mi).normalization == doctest::Approx(1.0 / std::sqrt(6.0)));
}

TEST_CASE("fock normalization, fermions") {
  const FrameLabel a1 = label("e", 1.0, {0, 0, 0}, 0);
  const FrameLabel a2 = label("e", 1.0, {0, 0, 1}, 0);
  MultiIndex mi;
  mi.statistics = Statistics::fermion;
  mi.graphic = {{a1, 1}, {a2, 1}};
  CHECK(fock_normalization(mi).sign == 1);
  mi.graphic = {{a2, 1}, {a1, 1}};
  CHECK(fock_normalization(mi).sign == -1);

  mi.graphic = {{a1, 2}};
  CHECK_THROWS_WITH(fock_normalization(mi), doctest::Contains("Pauli"));
  mi.graphic = {{a1, 1}, {a1, 1}};
  CHECK_THROWS_WITH(fock_normalization(mi), doctest::Contains("Pauli"));
}

TEST_CASE("fermion sign is a homomorphism from permutations") {
  std::vector<FrameLabel> canon;
  for (int i = 0; i < 6; ++i) canon.push_back(label("e", 1.0, {0, 0, 0.5 * (i + 1)}, 0));

  auto sign_of_order = [&](const std::vector<int>& order) {
    MultiIndex mi;
    mi.statistics = Statistics::fermion;
    for (int i : order) mi.graphic.emplace_back(canon[i], 1);
    return fock_normalization(mi).sign;
  };

  std::mt19937_64 rng(11);
  std::vector<int> sigma{0, 1, 2, 3, 4, 5}, tau = sigma;
  for (int trial = 0; trial < 50; ++trial) {
    std::shuffle(sigma.begin(), sigma.end(), rng);
    std::shuffle(tau.begin(), tau.end(), rng);
    std::vector<int> comp(6);
    for (int i = 0; i < 6; ++i) comp[i] = sigma[tau[i]];
    CHECK(sign_of_order(comp) == sign_of_order(sigma) * sign_of_order(tau));
  }
}

TEST_CASE("delta reduction: tree solves the internal momentum") {
  const DeltaConstraint c1({{+1, "p'"}, {+1, "q'"}, {-1, "k"}}, 3);
  const DeltaConstraint c2({{+1, "k"}, {-1, "p"}, {-1, "q"}}, 3);
  const auto red = reduce_deltas({c1, c2}, {"k"});
  REQUIRE(red.solved.count("k") == 1);
  // k = p' + q'
  std::map<std::string, double> expr;
  for (const auto& [c, s] : red.solved.at("k").terms) expr[s] = c;
  CHECK(expr.at("p'") == doctest::Approx(1.0));
  CHECK(expr.at("q'") == doctest::Approx(1.0));
  CHECK(red.free_internals.empty());
  REQUIRE(red.residual.size() == 1);
  const DeltaConstraint expect({{+1, "p'"}, {+1, "q'"}, {-1, "p"}, {-1, "q"}}, 3);
  CHECK(red.residual.front() == expect);
}

TEST_CASE("delta reduction: no internals leaves the constraint unchanged") {
  const DeltaConstraint c({{+1, "k"}, {-1, "p"}, {-1, "q"}}, 3);
  const auto red = reduce_deltas({c}, {});
  CHECK(red.solved.empty());
  REQUIRE(red.residual.size() == 1);
  CHECK(red.residual.front() == c);
}

TEST_CASE("delta reduction: loop pair leaves one free momentum") {
  const DeltaConstraint c1({{-1, "p"}, {+1, "q"}, {+1, "k"}}, 3);
  const DeltaConstraint c2({{-1, "q"}, {-1, "k"}, {+1, "p'"}}, 3);
  const auto red = reduce_deltas({c1, c2}, {"q", "k"});
  REQUIRE(red.solved.count("q") == 1);
  std::map<std::string, double> expr;
  for (const auto& [c, s] : red.solved.at("q").terms) expr[s] = c;
  CHECK(expr.at("p") == doctest::Approx(1.0));
  CHECK(expr.at("k") == doctest::Approx(-1.0));
  REQUIRE(red.free_internals.size() == 1);
  CHECK(red.free_internals.front() == "k");
  REQUIRE(red.residual.size() == 1);
  const DeltaConstraint expect({{+1, "p'"}, {-1, "p"}}, 3);
  CHECK(red.residual.front() == expect);
}

TEST_CASE("delta reduction: forced p = -p is kinematically forbidden") {
  const DeltaConstraint c1({{+1, "k"}, {-1, "p"}}, 3);
  const DeltaConstraint c2({{+1, "k"}, {+1, "p"}}, 3);
  CHECK_THROWS_WITH(reduce_deltas({c1, c2}, {"k"}), doctest::Contains("kinematically forbidden"));
}

TEST_CASE("lambda tensor: coefficient and sign patterns") {
  const auto rest = FourMomentum::on_shell_of(1.0, {0, 0, 0});
  const auto all_plus = lambda_unscaled({1, 1, 1}, {rest, rest, rest}, {"p'", "p''", "p'''"}, 1.0);
  CHECK(all_plus.coefficient.value.real() ==
        doctest::Approx(1.0 / std::sqrt(8.0)).epsilon(1e-15));
  CHECK(all_plus.coefficient.weight == Weight::integer(-3));
  CHECK(all_plus.delta.weight() == Weight::integer(3));

  const auto mixed = lambda_unscaled({-1, 1, 1}, {rest, rest, rest}, {"p'", "p''", "p'''"}, 1.0);
  CHECK(mixed.coefficient.value == all_plus.coefficient.value);
  CHECK(mixed.delta.terms[0].sign == -1);
  CHECK(mixed.delta.terms[1].sign == +1);

  CHECK_THROWS(lambda_unscaled({1, 1, 1},
                               {rest, rest, FourMomentum::off_shell(1.0, {0, 0, 0})},
                               {"a", "b", "c"}, 1.0));
}

TEST_CASE("<LambdaBar, f> is independent of the length unit") {
  const std::array<TestFunction, 3> legs{
      TestFunction{TestFunction::Family::gaussian, {0.4, 0.1, -0.2}, 0.35},
      TestFunction{TestFunction::Family::gaussian, {-0.3, 0.2, 0.1}, 0.3},
      TestFunction{TestFunction::Family::gaussian, {0.0, -0.2, 0.3}, 0.45}};
  const std::array<int, 3> signs{+1, +1, +1};
  const std::array<double, 3> masses{1.0, 1.0, 0.0};
  const double ref = lambda_contraction(1.0, signs, masses, legs, 6);
  CHECK(ref != 0.0);
  for (const double l : {0.5, 2.0, 10.0}) {
    const double v = lambda_contraction(l, signs, masses, legs, 6);
    CHECK(std::abs(v - ref) <= 1e-12 * std::abs(ref));
  }
}
