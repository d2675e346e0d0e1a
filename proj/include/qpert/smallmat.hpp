#ifndef QPERT_SMALLMAT_HPP_
#define QPERT_SMALLMAT_HPP_

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace qpert {

using cplx = std::complex<double>;

using Vec3 = std::array<double, 3>;
using Vec4 = std::array<double, 4>;
using Mat4 = std::array<std::array<double, 4>, 4>;
using CVec4 = std::array<cplx, 4>;

inline Vec4 operator+(const Vec4& a, const Vec4& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}
inline Vec4 operator-(const Vec4& a, const Vec4& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}
inline Vec4 operator*(double s, const Vec4& a) { return {s * a[0], s * a[1], s * a[2], s * a[3]}; }

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
inline Vec3 operator-(const Vec3& a) { return {-a[0], -a[1], -a[2]}; }
inline double dot3(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm3(const Vec3& a) { return std::sqrt(dot3(a, a)); }

inline Mat4 mat4_zero() {
  Mat4 m{};
  return m;
}
inline Mat4 mat4_identity() {
  Mat4 m{};
  for (int i = 0; i < 4; ++i) m[i][i] = 1.0;
  return m;
}

inline Vec4 mat4_apply(const Mat4& m, const Vec4& v) {
  Vec4 r{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r[i] += m[i][j] * v[j];
  return r;
}

inline double mat4_det(const Mat4& a);

//! Gauss-Jordan inverse with partial pivoting; throws on singular input.
inline Mat4 mat4_inverse(const Mat4& a) {
  Mat4 m = a;
  Mat4 inv = mat4_identity();
  for (int col = 0; col < 4; ++col) {
    int piv = col;
    for (int r = col + 1; r < 4; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    if (std::abs(m[piv][col]) < 1e-14) throw std::runtime_error("smallmat: singular 4x4 matrix");
    std::swap(m[piv], m[col]);
    std::swap(inv[piv], inv[col]);
    const double d = 1.0 / m[col][col];
    for (int j = 0; j < 4; ++j) {
      m[col][j] *= d;
      inv[col][j] *= d;
    }
    for (int r = 0; r < 4; ++r) {
      if (r == col) continue;
      const double f = m[r][col];
      if (f == 0.0) continue;
      for (int j = 0; j < 4; ++j) {
        m[r][j] -= f * m[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

inline double mat4_det(const Mat4& a) {
  Mat4 m = a;
  double det = 1.0;
  for (int col = 0; col < 4; ++col) {
    int piv = col;
    for (int r = col + 1; r < 4; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    if (m[piv][col] == 0.0) return 0.0;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (int r = col + 1; r < 4; ++r) {
      const double f = m[r][col] / m[col][col];
      for (int j = col; j < 4; ++j) m[r][j] -= f * m[col][j];
    }
  }
  return det;
}

//! 4x4 complex matrix for the spinor fibre W.
class CMat4 {
 public:
  CMat4() : e_{} {}

  static CMat4 identity() {
    CMat4 m;
    for (int i = 0; i < 4; ++i) m(i, i) = 1.0;
    return m;
  }
  static CMat4 zero() { return CMat4(); }

  cplx& operator()(int i, int j) { return e_[4 * i + j]; }
  const cplx& operator()(int i, int j) const { return e_[4 * i + j]; }

  friend CMat4 operator+(const CMat4& a, const CMat4& b) {
    CMat4 r;
    for (int i = 0; i < 16; ++i) r.e_[i] = a.e_[i] + b.e_[i];
    return r;
  }
  friend CMat4 operator-(const CMat4& a, const CMat4& b) {
    CMat4 r;
    for (int i = 0; i < 16; ++i) r.e_[i] = a.e_[i] - b.e_[i];
    return r;
  }
  friend CMat4 operator*(cplx s, const CMat4& a) {
    CMat4 r;
    for (int i = 0; i < 16; ++i) r.e_[i] = s * a.e_[i];
    return r;
  }
  friend CMat4 operator*(const CMat4& a, const CMat4& b) {
    CMat4 r;
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 4; ++k) {
        const cplx aik = a(i, k);
        if (aik == cplx(0.0, 0.0)) continue;
        for (int j = 0; j < 4; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }

  CMat4 adjoint() const {
    CMat4 r;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) r(i, j) = std::conj((*this)(j, i));
    return r;
  }

  cplx trace() const { return e_[0] + e_[5] + e_[10] + e_[15]; }

  double max_abs() const {
    double m = 0.0;
    for (const auto& v : e_) m = std::max(m, std::abs(v));
    return m;
  }

  friend CVec4 operator*(const CMat4& m, const CVec4& v) {
    CVec4 r{};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) r[i] += m(i, j) * v[j];
    return r;
  }

 private:
  std::array<cplx, 16> e_;
};

inline CVec4 operator+(const CVec4& a, const CVec4& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}
inline CVec4 operator-(const CVec4& a, const CVec4& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}
inline CVec4 operator*(cplx s, const CVec4& a) { return {s * a[0], s * a[1], s * a[2], s * a[3]}; }

inline cplx cdot_bilinear(const CVec4& row, const CVec4& col) {
  return row[0] * col[0] + row[1] * col[1] + row[2] * col[2] + row[3] * col[3];
}

inline double cvec_norm(const CVec4& v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

//! Outer product col (x) row, as a matrix acting on columns.
inline CMat4 outer(const CVec4& col, const CVec4& row) {
  CMat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r(i, j) = col[i] * row[j];
  return r;
}

}  // namespace qpert

#endif  // QPERT_SMALLMAT_HPP_
