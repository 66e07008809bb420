#pragma once

// The Lie algebra iso(1,3): pairs (v, w) of an infinitesimal translation and an
// infinitesimal Lorentz matrix.

#include <array>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "cosserat/poincare.hpp"

namespace cosserat {

template <class Scalar>
struct BasicAlgebraElement {
  using Vec = Eigen::Matrix<Scalar, 4, 1>;
  using Mat = Eigen::Matrix<Scalar, 4, 4>;

  Vec v = Vec::Zero();
  Mat w = Mat::Zero();

  static BasicAlgebraElement zero() { return {}; }

  BasicAlgebraElement& operator+=(const BasicAlgebraElement& o) {
    v += o.v;
    w += o.w;
    return *this;
  }
  BasicAlgebraElement& operator-=(const BasicAlgebraElement& o) {
    v -= o.v;
    w -= o.w;
    return *this;
  }
  BasicAlgebraElement& operator*=(Scalar s) {
    v *= s;
    w *= s;
    return *this;
  }

  friend BasicAlgebraElement operator+(BasicAlgebraElement a, const BasicAlgebraElement& b) { return a += b; }
  friend BasicAlgebraElement operator-(BasicAlgebraElement a, const BasicAlgebraElement& b) { return a -= b; }
  friend BasicAlgebraElement operator-(BasicAlgebraElement a) { return a *= Scalar(-1); }
  friend BasicAlgebraElement operator*(Scalar s, BasicAlgebraElement a) { return a *= s; }
  friend BasicAlgebraElement operator*(BasicAlgebraElement a, Scalar s) { return a *= s; }

  friend bool operator==(const BasicAlgebraElement& a, const BasicAlgebraElement& b) {
    return a.v == b.v && a.w == b.w;
  }

  template <class T>
  BasicAlgebraElement<T> cast() const {
    return {v.template cast<T>(), w.template cast<T>()};
  }
};

using AlgebraElement = BasicAlgebraElement<double>;
using IntAlgebraElement = BasicAlgebraElement<int>;

inline double max_abs(const AlgebraElement& x) { return std::max(max_abs(x.v), max_abs(x.w)); }

/// The ten generators, in the order delta_0..delta_3, J_1..J_3, K_1..K_3.
namespace basis {

inline constexpr int kSize = 10;

template <class S = double>
BasicAlgebraElement<S> delta(int mu) {
  BasicAlgebraElement<S> x;
  x.v[mu] = S(1);
  return x;
}

/// Rotation generators: (J_i)^j_k = -eps_ijk on the spatial block.
template <class S = double>
BasicAlgebraElement<S> J(int i) {
  BasicAlgebraElement<S> x;
  const int j = i % 3 + 1;
  const int k = j % 3 + 1;
  x.w(j, k) = S(-1);
  x.w(k, j) = S(1);
  return x;
}

template <class S = double>
BasicAlgebraElement<S> K(int i) {
  BasicAlgebraElement<S> x;
  x.w(0, i) = x.w(i, 0) = S(1);
  return x;
}

template <class S = double>
BasicAlgebraElement<S> generator(int k) {
  if (k < 0 || k >= kSize) throw std::out_of_range("basis::generator: index " + std::to_string(k));
  if (k < 4) return delta<S>(k);
  if (k < 7) return J<S>(k - 3);
  return K<S>(k - 6);
}

inline std::string name(int k) {
  static const std::array<const char*, kSize> names = {"d0", "d1", "d2", "d3", "J1",
                                                      "J2", "J3", "K1", "K2", "K3"};
  return names.at(k);
}

}  // namespace basis

/// [(v, w), (v', w')] = (w v' - w' v, w w' - w' w)
template <class S>
BasicAlgebraElement<S> bracket(const BasicAlgebraElement<S>& x, const BasicAlgebraElement<S>& y) {
  return {x.w * y.v - y.w * x.v, x.w * y.w - y.w * x.w};
}

/// Lowered matrix eta * w must be antisymmetric.
inline double generator_defect(const Mat4& w) {
  const Mat4 low = eta() * w;
  return max_abs(low + low.transpose());
}

inline bool is_lorentz_generator(const Mat4& w, double tol = kLorentzTol) {
  return generator_defect(w) <= tol;
}

struct Polarization {
  AlgebraElement rotation;
  AlgebraElement boost;
};

/// Splits the Lorentz part into its rotation (spatially antisymmetric) and
/// boost (symmetric) pieces; translations are dropped.
inline Polarization polarize(const AlgebraElement& x) {
  Polarization out;
  out.rotation.w = 0.5 * (x.w - x.w.transpose());
  out.boost.w = 0.5 * (x.w + x.w.transpose());
  return out;
}

/// Homogeneous 5x5 embedding [[0, 0], [v, w]].
inline Mat5 embed(const AlgebraElement& x) {
  Mat5 m = Mat5::Zero();
  m.block<4, 1>(1, 0) = x.v;
  m.block<4, 4>(1, 1) = x.w;
  return m;
}

inline PoincareElement exp(const AlgebraElement& x) {
  const Mat5 m = embed(x).exp();
  return {m.block<4, 1>(1, 0), m.block<4, 4>(1, 1)};
}

struct FrameTangent {
  Vec4 origin = Vec4::Zero();
  Mat4 axes = Mat4::Zero();
};

/// d/dt act_on_frame(exp(t x), f) at t = 0.
inline FrameTangent fundamental_vector(const AlgebraElement& x, const AffineFrame& f) {
  return {f.axes() * x.v, f.axes() * x.w};
}

}  // namespace cosserat
