#pragma once

// Minkowski metric algebra on R^4 with signature (+,-,-,-).
//
// Index convention: the first matrix index is the upper (contravariant) one,
// so a 4x4 matrix M stores M^mu_nu at M(mu, nu).

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace cosserat {

using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;
using Mat5 = Eigen::Matrix<double, 5, 5>;

/// Tolerance used for Lorentz validation in the matrix max-norm.
inline constexpr double kLorentzTol = 1e-9;

/// Physical constants carried explicitly through every formula.
struct Units {
  double c = 1.0;
  double hbar = 1.0;
};

enum class CausalClass { Timelike, Spacelike, Lightlike };

inline const char* to_string(CausalClass k) {
  switch (k) {
    case CausalClass::Timelike: return "timelike";
    case CausalClass::Spacelike: return "spacelike";
    case CausalClass::Lightlike: return "lightlike";
  }
  return "?";
}

inline const Mat4& eta() {
  static const Mat4 m = Eigen::Vector4d(1.0, -1.0, -1.0, -1.0).asDiagonal();
  return m;
}

inline double max_abs(const auto& m) { return m.cwiseAbs().maxCoeff(); }

/// Builds a four-vector, rejecting non-finite components.
inline Vec4 four_vector(double v0, double v1, double v2, double v3) {
  Vec4 v(v0, v1, v2, v3);
  if (!v.allFinite()) throw std::invalid_argument("four_vector: non-finite component");
  return v;
}

/// eta_{mu nu} v^mu w^nu
inline double minkowski_inner(const Vec4& v, const Vec4& w) {
  return v[0] * w[0] - v[1] * w[1] - v[2] * w[2] - v[3] * w[3];
}

/// Index lowering (and raising, since eta is its own inverse).
inline Vec4 lower(const Vec4& v) { return Vec4(v[0], -v[1], -v[2], -v[3]); }

inline CausalClass classify(const Vec4& v, double tol = 0.0) {
  if (v.isZero(0.0)) throw std::domain_error("classify: zero vector has no causal class");
  const double q = minkowski_inner(v, v);
  if (q > tol) return CausalClass::Timelike;
  if (q < -tol) return CausalClass::Spacelike;
  return CausalClass::Lightlike;
}

/// L* = eta L^T eta. Equals L^{-1} when L is Lorentz.
inline Mat4 lorentz_adjoint(const Mat4& m) { return eta() * m.transpose() * eta(); }

inline double lorentz_defect(const Mat4& m) {
  return max_abs(m.transpose() * eta() * m - eta());
}

inline bool is_lorentz(const Mat4& m, double tol = kLorentzTol) {
  return m.allFinite() && lorentz_defect(m) <= tol;
}

/// True iff L lies in SO+(1,3): det L = 1 and L^0_0 > 0. Throws for non-Lorentz input.
inline bool is_proper_isochronous(const Mat4& m, double tol = kLorentzTol) {
  if (!is_lorentz(m, tol)) {
    throw std::invalid_argument("is_proper_isochronous: matrix is not Lorentz (defect " +
                                std::to_string(lorentz_defect(m)) + ")");
  }
  return std::abs(m.determinant() - 1.0) <= tol && m(0, 0) > 0.0;
}

/// A 4x4 matrix that has passed the L^T eta L = eta check.
class LorentzMatrix {
 public:
  LorentzMatrix() : m_(Mat4::Identity()) {}

  explicit LorentzMatrix(const Mat4& m, double tol = kLorentzTol) : m_(m) {
    if (!is_lorentz(m, tol)) {
      throw std::invalid_argument("LorentzMatrix: defect " + std::to_string(lorentz_defect(m)) +
                                  " exceeds tolerance");
    }
  }

  const Mat4& matrix() const { return m_; }
  Mat4 inverse() const { return lorentz_adjoint(m_); }
  double operator()(int mu, int nu) const { return m_(mu, nu); }

 private:
  Mat4 m_;
};

/// Pure boost with rapidity phi along spatial axis i (1..3).
inline Mat4 boost(int axis, double rapidity) {
  Mat4 m = Mat4::Identity();
  m(0, 0) = m(axis, axis) = std::cosh(rapidity);
  m(0, axis) = m(axis, 0) = std::sinh(rapidity);
  return m;
}

/// Rotation by angle about spatial axis i (1..3), right-handed.
inline Mat4 rotation(int axis, double angle) {
  Mat4 m = Mat4::Identity();
  const int j = axis % 3 + 1;
  const int k = j % 3 + 1;
  m(j, j) = m(k, k) = std::cos(angle);
  m(j, k) = -std::sin(angle);
  m(k, j) = std::sin(angle);
  return m;
}

/// Levi-Civita symbol with eps_{0123} = +1 (all indices lowered).
inline int levi_civita(int a, int b, int c, int d) {
  if (a == b || a == c || a == d || b == c || b == d || c == d) return 0;
  int p[4] = {a, b, c, d};
  int sign = 1;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (p[i] > p[j]) sign = -sign;
  return sign;
}

}  // namespace cosserat
