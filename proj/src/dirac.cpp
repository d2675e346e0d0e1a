#include "qpert/dirac.hpp"

#include <cmath>
#include <stdexcept>

namespace qpert {

Tetrad standard_tetrad() {
  return Tetrad{Vec4{1, 0, 0, 0}, Vec4{0, 1, 0, 0}, Vec4{0, 0, 1, 0}, Vec4{0, 0, 0, 1}};
}

Mat4 minkowski_metric() {
  Mat4 g{};
  g[0][0] = 1.0;
  g[1][1] = g[2][2] = g[3][3] = -1.0;
  return g;
}

double tetrad_gram_residual(const Tetrad& tet, const Mat4& g) {
  const Mat4 eta = minkowski_metric();
  double worst = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      double s = 0.0;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) s += g[i][j] * tet[a][i] * tet[b][j];
      worst = std::max(worst, std::abs(s - eta[a][b]));
    }
  return worst;
}

namespace {

std::array<CMat4, 4> build_gammas() {
  const cplx I(0.0, 1.0);
  std::array<CMat4, 4> g;
  // gamma^0 = diag(1,1,-1,-1)
  g[0](0, 0) = 1;
  g[0](1, 1) = 1;
  g[0](2, 2) = -1;
  g[0](3, 3) = -1;
  // gamma^1
  g[1](0, 3) = 1;
  g[1](1, 2) = 1;
  g[1](2, 1) = -1;
  g[1](3, 0) = -1;
  // gamma^2
  g[2](0, 3) = -I;
  g[2](1, 2) = I;
  g[2](2, 1) = I;
  g[2](3, 0) = -I;
  // gamma^3
  g[3](0, 2) = 1;
  g[3](1, 3) = -1;
  g[3](2, 0) = -1;
  g[3](3, 1) = 1;
  return g;
}

const std::array<CMat4, 4>& gammas() {
  static const std::array<CMat4, 4> g = build_gammas();
  return g;
}

}  // namespace

const CMat4& gamma_matrix(int mu) {
  if (mu < 0 || mu > 3) throw std::runtime_error("dirac: gamma index out of range");
  return gammas()[mu];
}

CMat4 gamma_of(const Vec4& v) {
  CMat4 r;
  for (int mu = 0; mu < 4; ++mu)
    if (v[mu] != 0.0) r = r + cplx(v[mu], 0.0) * gammas()[mu];
  return r;
}

CMat4 gamma_of(const CVec4& v) {
  CMat4 r;
  for (int mu = 0; mu < 4; ++mu)
    if (v[mu] != cplx(0.0, 0.0)) r = r + v[mu] * gammas()[mu];
  return r;
}

CMat4 momentum_slash(const FourMomentum& p) {
  return gamma_of(Vec4{p.energy, p.spatial[0], p.spatial[1], p.spatial[2]});
}

CMat4 spatial_slash(const Vec3& q3) { return gamma_of(Vec4{0.0, q3[0], q3[1], q3[2]}); }

cplx KMetric::pair(const CVec4& phi, const CVec4& psi) const {
  // phi^dag gamma^0 psi with gamma^0 = diag(1,1,-1,-1)
  return std::conj(phi[0]) * psi[0] + std::conj(phi[1]) * psi[1] - std::conj(phi[2]) * psi[2] -
         std::conj(phi[3]) * psi[3];
}

CVec4 KMetric::bar(const CVec4& psi) const {
  return {std::conj(psi[0]), std::conj(psi[1]), -std::conj(psi[2]), -std::conj(psi[3])};
}

const CMat4& KMetric::matrix() const { return gamma_matrix(0); }

ShellProjectors shell_projectors(double mass, const FourMomentum& p) {
  if (mass <= 0.0) throw std::runtime_error("dirac: massive projectors only");
  if (!p.on_shell || !p.shell_residual_ok(1e-9))
    throw std::runtime_error("dirac: projectors require an on-shell momentum");
  const CMat4 slash = momentum_slash(p);
  const cplx half(0.5, 0.0);
  const CMat4 id = CMat4::identity();
  ShellProjectors out;
  out.plus = half * (id + (1.0 / mass) * slash);
  out.minus = half * (id - (1.0 / mass) * slash);
  return out;
}

SpinorBasis spinor_basis(double mass, const FourMomentum& p, const Tetrad& tet) {
  if (mass <= 0.0) throw std::runtime_error("dirac: spinor basis requires m > 0");
  if (!p.on_shell || !p.future_pointing)
    throw std::runtime_error("dirac: spinor basis requires on-shell future-pointing momentum");
  if (tetrad_gram_residual(tet, minkowski_metric()) > 1e-10)
    throw std::runtime_error("dirac: non-orthonormal tetrad");

  // Tetrad-frame components: p^# = c^lam e_lam with c^0 = g(p^#, e_0) and
  // c^i = -g(p^#, e_i); for the standard tetrad this returns p verbatim.
  const Mat4 eta = minkowski_metric();
  const Vec4 psharp{p.energy, p.spatial[0], p.spatial[1], p.spatial[2]};
  Vec4 p_tet{};
  for (int lam = 0; lam < 4; ++lam) {
    double s = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) s += eta[i][j] * psharp[i] * tet[lam][j];
    p_tet[lam] = (lam == 0) ? s : -s;
  }
  const double E = p_tet[0];
  if (E <= 0.0) throw std::runtime_error("dirac: momentum not future-pointing in tetrad frame");

  const FourMomentum p_frame = [&] {
    FourMomentum q;
    q.spatial = {p_tet[1], p_tet[2], p_tet[3]};
    q.mass = mass;
    q.energy = E;
    q.on_shell = true;
    q.future_pointing = true;
    return q;
  }();

  // Boost factor (m + gamma^#[p] gamma[tau0]) / sqrt(2 m (E + m)); continuous
  // in p on the future shell, reduces to the identity at rest.
  const CMat4 slash = momentum_slash(p_frame);
  const CMat4 boost =
      (1.0 / std::sqrt(2.0 * mass * (E + mass))) *
      (mass * CMat4::identity() + slash * gamma_matrix(0));

  SpinorBasis out;
  out.p = p_frame;
  const KMetric k;
  for (int A = 0; A < 2; ++A) {
    CVec4 u_rest{}, v_rest{};
    u_rest[A] = 1.0;
    v_rest[2 + A] = 1.0;
    out.u[A] = boost * u_rest;
    out.v[A] = boost * v_rest;
    out.ubar[A] = k.bar(out.u[A]);
    out.vbar[A] = k.bar(out.v[A]);
    out.u_dual[A] = out.ubar[A];
    out.v_dual[A] = cplx(-1.0, 0.0) * out.vbar[A];
  }
  return out;
}

CMat4 SpinorBasis::spin_sum_u() const { return outer(u[0], u_dual[0]) + outer(u[1], u_dual[1]); }

CMat4 SpinorBasis::spin_sum_v() const { return outer(v[0], v_dual[0]) + outer(v[1], v_dual[1]); }

cplx spinor_chain(const CVec4& row, const std::vector<CMat4>& mats, const CVec4& col) {
  CVec4 acc = row;
  for (const auto& m : mats) {
    CVec4 next{};
    for (int j = 0; j < 4; ++j)
      for (int i = 0; i < 4; ++i) next[j] += acc[i] * m(i, j);
    acc = next;
  }
  return cdot_bilinear(acc, col);
}

}  // namespace qpert
