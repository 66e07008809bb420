#pragma once

// The Poincare group as the semi-direct product R^4 x SO(1,3).

#include <array>
#include <stdexcept>

#include <json.hpp>

#include "cosserat/lorentz.hpp"

namespace cosserat {

/// Element (a, L) acting as x -> a + L x.
struct PoincareElement {
  Vec4 a = Vec4::Zero();
  Mat4 L = Mat4::Identity();

  static PoincareElement identity() { return {}; }
  static PoincareElement translation(const Vec4& a) { return {a, Mat4::Identity()}; }
  static PoincareElement lorentz(const Mat4& L) { return {Vec4::Zero(), L}; }

  bool is_isochronous(double tol = kLorentzTol) const { return is_proper_isochronous(L, tol); }

  Vec4 apply(const Vec4& x) const { return a + L * x; }
};

/// (a, L)(b, M) = (a + L b, L M)
inline PoincareElement compose(const PoincareElement& g, const PoincareElement& h) {
  return {g.a + g.L * h.a, g.L * h.L};
}

inline PoincareElement operator*(const PoincareElement& g, const PoincareElement& h) {
  return compose(g, h);
}

/// (a, L)^{-1} = (-L~ a, L~)
inline PoincareElement inverse(const PoincareElement& g) {
  const Mat4 Li = g.L.inverse();
  return {-Li * g.a, Li};
}

/// Block matrix [[1, 0], [a, L]] acting on homogeneous coordinates (1, x).
inline Mat5 to_homogeneous(const PoincareElement& g) {
  Mat5 m = Mat5::Zero();
  m(0, 0) = 1.0;
  m.block<4, 1>(1, 0) = g.a;
  m.block<4, 4>(1, 1) = g.L;
  return m;
}

inline PoincareElement from_homogeneous(const Mat5& m) {
  if (std::abs(m(0, 0) - 1.0) > 1e-12 || m.block<1, 4>(0, 1).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("from_homogeneous: first row must be (1, 0, 0, 0, 0)");
  }
  return {m.block<4, 1>(1, 0), m.block<4, 4>(1, 1)};
}

/// Lorentzian affine frame: an origin and four frame members stored as columns.
class AffineFrame {
 public:
  AffineFrame() = default;
  AffineFrame(const Vec4& origin, const Mat4& axes, double tol = kLorentzTol)
      : origin_(origin), axes_(LorentzMatrix(axes, tol).matrix()) {}

  const Vec4& origin() const { return origin_; }
  const Mat4& axes() const { return axes_; }
  Vec4 member(int nu) const { return axes_.col(nu); }

 private:
  Vec4 origin_ = Vec4::Zero();
  Mat4 axes_ = Mat4::Identity();
};

/// Right action: the translation is read in the frame's own axes,
///   O' = O + a^mu e_mu,  e'_nu = e_mu L^mu_nu.
/// act_on_frame(h, act_on_frame(g, f)) == act_on_frame(compose(g, h), f).
inline AffineFrame act_on_frame(const PoincareElement& g, const AffineFrame& f,
                                double tol = kLorentzTol) {
  return AffineFrame(f.origin() + f.axes() * g.a, f.axes() * g.L, tol);
}

inline double distance(const PoincareElement& g, const PoincareElement& h) {
  return std::max(max_abs(g.a - h.a), max_abs(g.L - h.L));
}

// Flat record {a: [4], L: [16 row-major]}.
inline nlohmann::json to_json(const PoincareElement& g) {
  nlohmann::json j;
  j["a"] = std::array<double, 4>{g.a[0], g.a[1], g.a[2], g.a[3]};
  std::array<double, 16> L{};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) L[4 * r + c] = g.L(r, c);
  j["L"] = L;
  return j;
}

inline PoincareElement poincare_from_json(const nlohmann::json& j) {
  const auto a = j.at("a").get<std::array<double, 4>>();
  const auto L = j.at("L").get<std::array<double, 16>>();
  PoincareElement g;
  for (int i = 0; i < 4; ++i) g.a[i] = a[i];
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) g.L(r, c) = L[4 * r + c];
  return g;
}

}  // namespace cosserat
