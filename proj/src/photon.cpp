#include "qpert/photon.hpp"

#include <cmath>
#include <stdexcept>

namespace qpert {

namespace {

double minkowski_dot(const Vec4& a, const Vec4& b) {
  return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
}

// Levi-Civita with eps^{0123} = +1, i.e. covariant eps_{0123} = -1.
double eps_lower(int a, int b, int c, int d) {
  int perm[4] = {a, b, c, d};
  int swaps = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j + 1 < 4; ++j) {
      if (perm[j] == perm[j + 1]) return 0.0;
      if (perm[j] > perm[j + 1]) {
        std::swap(perm[j], perm[j + 1]);
        ++swaps;
      }
    }
  return (swaps % 2 == 0) ? -1.0 : 1.0;
}

using TwoForm = std::array<std::array<cplx, 4>, 4>;  // covariant components

TwoForm wedge_lower(const CVec4& u_vec, const CVec4& v_vec) {
  // Lower both arguments with eta, then antisymmetrize.
  const CVec4 u{u_vec[0], -u_vec[1], -u_vec[2], -u_vec[3]};
  const CVec4 v{v_vec[0], -v_vec[1], -v_vec[2], -v_vec[3]};
  TwoForm w{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) w[i][j] = u[i] * v[j] - u[j] * v[i];
  return w;
}

TwoForm hodge4(const TwoForm& om) {
  const double eta[4] = {1.0, -1.0, -1.0, -1.0};
  TwoForm out{};
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) {
      cplx s = 0.0;
      for (int r = 0; r < 4; ++r)
        for (int t = 0; t < 4; ++t) {
          const double e = eps_lower(m, n, r, t);
          if (e == 0.0) continue;
          s += 0.5 * e * eta[r] * eta[t] * om[r][t];
        }
      out[m][n] = s;
    }
  return out;
}

double two_form_dot(const TwoForm& a, const TwoForm& b) {
  // Real part of the Frobenius pairing, used only for least squares.
  double s = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) s += std::real(std::conj(a[i][j]) * b[i][j]);
  return s;
}

cplx two_form_pair(const TwoForm& a, const TwoForm& b) {
  cplx s = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) s += std::conj(a[i][j]) * b[i][j];
  return s;
}

}  // namespace

cplx minkowski_bilinear(const CVec4& a, const CVec4& b) {
  return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
}

NullTetrad null_tetrad(const FourMomentum& k, const Vec4& observer) {
  if (k.mass != 0.0 || !k.on_shell)
    throw std::runtime_error("photon: null tetrad requires a massless on-shell momentum");
  if (k.energy <= 0.0) throw std::runtime_error("photon: null momentum must be future-pointing");
  const double obs_norm = minkowski_dot(observer, observer);
  if (std::abs(obs_norm - 1.0) > 1e-10 || observer[0] <= 0.0)
    throw std::runtime_error("photon: observer must be unit future-pointing timelike");

  const Vec4 ksharp{k.energy, k.spatial[0], k.spatial[1], k.spatial[2]};
  const double kappa = minkowski_dot(ksharp, observer);
  if (kappa <= 0.0) throw std::runtime_error("photon: degenerate observer/momentum pair");

  NullTetrad out;
  out.k = k;
  out.kappa = kappa;
  out.e[0] = observer;
  Vec4 e3{};
  for (int i = 0; i < 4; ++i) e3[i] = ksharp[i] / kappa - observer[i];
  out.e[3] = e3;  // unit spacelike by construction: g(e3,e3) = -1

  // Complete with deterministic auxiliary axes, Gram-Schmidt in g.
  const Vec4 aux[3] = {{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  int filled = 0;
  for (int c = 0; c < 3 && filled < 2; ++c) {
    Vec4 v = aux[c];
    // subtract g-projections onto e0, e3 and any already-built leg
    const Vec4* built[3] = {&out.e[0], &out.e[3], filled > 0 ? &out.e[1] : nullptr};
    for (int b = 0; b < 3; ++b) {
      if (!built[b]) continue;
      const double denom = minkowski_dot(*built[b], *built[b]);
      const double proj = minkowski_dot(v, *built[b]) / denom;
      for (int i = 0; i < 4; ++i) v[i] -= proj * (*built[b])[i];
    }
    const double nrm2 = -minkowski_dot(v, v);
    if (nrm2 < 1e-12) continue;  // parallel to an existing leg, try next axis
    const double inv = 1.0 / std::sqrt(nrm2);
    for (int i = 0; i < 4; ++i) v[i] *= inv;
    out.e[filled == 0 ? 1 : 2] = v;
    ++filled;
  }
  if (filled != 2) throw std::runtime_error("photon: tetrad completion failed");
  return out;
}

const CVec4& HelicityBasis::mode(int Q) const {
  if (Q == 0) return b_plus;
  if (Q == 1) return b_minus;
  throw std::runtime_error("photon: helicity index out of range");
}

HelicityBasis helicity_basis(const NullTetrad& tet) {
  HelicityBasis out;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < 4; ++i) {
    out.b_plus[i] = cplx(tet.e[1][i], tet.e[2][i]) * inv_sqrt2;
    out.b_minus[i] = cplx(tet.e[1][i], -tet.e[2][i]) * inv_sqrt2;
  }
  return out;
}

CVec4 hodge_B(const NullTetrad& tet, const CVec4& beta) {
  const CVec4 kc{cplx(tet.k.energy), cplx(tet.k.spatial[0]), cplx(tet.k.spatial[1]),
                 cplx(tet.k.spatial[2])};
  if (std::abs(minkowski_bilinear(beta, kc)) > 1e-10 * (1.0 + cvec_norm(beta)))
    throw std::runtime_error("photon: hodge_B requires a transversal argument");

  const TwoForm lhs = hodge4(wedge_lower(kc, beta));

  CVec4 e1c, e2c;
  for (int i = 0; i < 4; ++i) {
    e1c[i] = cplx(tet.e[1][i]);
    e2c[i] = cplx(tet.e[2][i]);
  }
  // -k ^ (a e1 + b e2) = lhs, least squares in the (a, b) plane.
  TwoForm m1 = wedge_lower(kc, e1c);
  TwoForm m2 = wedge_lower(kc, e2c);
  for (auto& row : m1)
    for (auto& x : row) x = -x;
  for (auto& row : m2)
    for (auto& x : row) x = -x;

  const double g11 = two_form_dot(m1, m1);
  const double g22 = two_form_dot(m2, m2);
  const double g12 = two_form_dot(m1, m2);
  const cplx r1 = two_form_pair(m1, lhs);
  const cplx r2 = two_form_pair(m2, lhs);
  const double det = g11 * g22 - g12 * g12;
  if (std::abs(det) < 1e-12) throw std::runtime_error("photon: degenerate hodge solve");
  const cplx a = (g22 * r1 - g12 * r2) / det;
  const cplx b = (g11 * r2 - g12 * r1) / det;

  CVec4 out{};
  for (int i = 0; i < 4; ++i) out[i] = a * e1c[i] + b * e2c[i];
  return out;
}

std::array<std::array<cplx, 4>, 4> transversal_completeness(const NullTetrad& tet) {
  const HelicityBasis hb = helicity_basis(tet);
  std::array<std::array<cplx, 4>, 4> t{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      t[i][j] = hb.b_plus[i] * std::conj(hb.b_plus[j]) + hb.b_minus[i] * std::conj(hb.b_minus[j]);
  return t;
}

}  // namespace qpert
