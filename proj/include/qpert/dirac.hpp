#ifndef QPERT_DIRAC_HPP_
#define QPERT_DIRAC_HPP_

#include <vector>

#include "qpert/momentum.hpp"
#include "qpert/smallmat.hpp"

namespace qpert {

//! Orthonormal tetrad (vectors); leg 0 is the detector tangent.
using Tetrad = std::array<Vec4, 4>;

Tetrad standard_tetrad();
//! max deviation of the tetrad Gram matrix from diag(1,-1,-1,-1) under g.
double tetrad_gram_residual(const Tetrad& tet, const Mat4& g);

Mat4 minkowski_metric();

//! Dirac matrices in the energy-diagonal (standard Dirac) representation:
//! gamma^0 = diag(1,1,-1,-1). Index mu = 0..3.
const CMat4& gamma_matrix(int mu);

//! gamma[v] for a vector with contravariant components v^mu; satisfies
//! gamma[v] gamma[w] + gamma[w] gamma[v] = 2 g(v,w) 1. Carries L-weight +1
//! for a weight-0 argument.
CMat4 gamma_of(const Vec4& v_contravariant);
CMat4 gamma_of(const CVec4& v_contravariant);

//! gamma^#[p] = gamma[p^#] of a momentum, with p^# = (E, p1, p2, p3) in the
//! engine's convention (stored spatial components are contravariant).
CMat4 momentum_slash(const FourMomentum& p);
//! gamma^#[(0, q)] of the spatial part alone.
CMat4 spatial_slash(const Vec3& q3);

//! The Hermitian k-metric of the fibre: k(phi,psi) = phi^dag gamma^0 psi,
//! signature (+,+,-,-); gamma[v] is k-self-adjoint for real v.
struct KMetric {
  cplx pair(const CVec4& phi, const CVec4& psi) const;
  //! Dirac adjoint row k^flat(psi) = psi^dag gamma^0.
  CVec4 bar(const CVec4& psi) const;
  const CMat4& matrix() const;
};

//! P+- = (1 +- gamma^#[p]/m)/2 for a massive on-shell momentum.
struct ShellProjectors {
  CMat4 plus;
  CMat4 minus;
};
ShellProjectors shell_projectors(double mass, const FourMomentum& p);

//! Boost-constructed spinor bases u_A(p), v_A(p) over a detector tetrad,
//! with k-normalization k(u_A,u_B) = delta_AB, k(v_A,v_B) = -delta_AB.
//! Momentum components are taken in the tetrad frame; all returned spinors
//! live in the tetrad-adapted representation.
struct SpinorBasis {
  FourMomentum p;
  std::array<CVec4, 2> u;      // columns, W+ members
  std::array<CVec4, 2> v;      // columns, W- members
  std::array<CVec4, 2> u_dual; // rows: <u^A, u_B> = delta^A_B
  std::array<CVec4, 2> v_dual; // rows: <v^A, v_B> = delta^A_B
  std::array<CVec4, 2> ubar;   // rows: k^flat u_A
  std::array<CVec4, 2> vbar;   // rows: k^flat v_A

  CMat4 spin_sum_u() const;  // sum_A u_A (x) u^A
  CMat4 spin_sum_v() const;  // sum_A v_A (x) v^A
};

SpinorBasis spinor_basis(double mass, const FourMomentum& p, const Tetrad& detector_tetrad);

//! row . (product of matrices) . column, evaluated left to right.
cplx spinor_chain(const CVec4& row, const std::vector<CMat4>& mats, const CVec4& col);

}  // namespace qpert

#endif  // QPERT_DIRAC_HPP_
