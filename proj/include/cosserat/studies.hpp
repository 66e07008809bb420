#pragma once

// Grid-refinement studies. Each study evaluates an interior max norm on a
// coarse grid and on its refinement by two, at the same physical points.

#include <string>
#include <vector>

#include "cosserat/dynamics.hpp"
#include "cosserat/manufactured.hpp"

namespace cosserat::studies {

struct Refinement {
  std::string name;
  int p = 0;
  int coarse_n = 0;
  double coarse = 0.0;
  double fine = 0.0;

  double ratio() const { return coarse / fine; }
  double order() const { return manufactured::convergence_order(coarse, fine); }
};

inline int refined(int n) { return 2 * n - 1; }

/// Dislocation of E = nabla g for each analytic displacement field.
inline std::vector<Refinement> dislocation_of_displacements(int p, int n) {
  std::vector<Refinement> out;
  const auto fields = manufactured::displacement_fields();
  for (std::size_t i = 0; i < fields.size(); ++i) {
    Refinement r{"dislocation/g" + std::to_string(i + 1) + "/p" + std::to_string(p), p, n};
    for (int level = 0; level < 2; ++level) {
      const auto lat = Lattice::cube(p, level ? refined(n) : n);
      const double norm = max_norm(dislocation(nabla_group(GroupField::sample(lat, fields[i]))), 1, level ? 2 : 1);
      (level ? r.fine : r.coarse) = norm;
    }
    out.push_back(r);
  }
  return out;
}

/// Incompatibility of the dislocation of a generic smooth 1-form (p = 3).
inline Refinement incompatibility_of_dislocation(int n) {
  Refinement r{"incompatibility/p3", 3, n};
  for (int level = 0; level < 2; ++level) {
    const auto lat = Lattice::cube(3, level ? refined(n) : n);
    const auto E = manufactured::sample_smooth_one_form(lat);
    (level ? r.fine : r.coarse) = max_norm(incompatibility(dislocation(E), E), 1, level ? 2 : 1);
  }
  return r;
}

namespace detail {

// Fourth-order central difference of a smooth closure along axis a.
template <class F>
auto d4(F&& f, Point r, int a, double h = 1e-3) {
  auto at = [&](double t) {
    Point q = r;
    q[a] += t;
    return f(q);
  };
  using R = std::decay_t<decltype(f(r))>;
  R out = (8.0 * (at(h) - at(-h)) - (at(2 * h) - at(-2 * h))) * (1.0 / (12.0 * h));
  return out;
}

inline AffineFrame body_object(const Point& r) {
  const Vec4 x(1.0 + r[0] + 0.2 * std::sin(r[1]), r[0] * r[1], 0.5 * r[1] + 0.1 * r[0] * r[0], 0.2 * std::cos(r[0]));
  return AffineFrame(x, rotation(3, 0.5 * r[0] + 0.2 * r[1]) * boost(1, 0.3 * r[1]));
}

inline Vec4 body_sigma(const Point& r, int a) {
  return Vec4(std::sin(r[0] + a), std::cos(r[1] * (a + 1)), r[0] * r[1], std::exp(0.2 * r[a]));
}

inline Mat4 body_mu(const Point& r, int a) {
  Mat4 m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = 0.3 * std::sin((i + 1) * r[0] - (j + 1) * r[1] + a);
  return m;
}

inline Mat4 body_mu_bar(const Point& r, int a) {
  const AffineFrame f = body_object(r);
  return antisym(body_mu(r, a) * (eta() * f.axes()).transpose() + body_sigma(r, a) * (eta() * f.origin()).transpose());
}

}  // namespace detail

struct ManufacturedBody {
  KinematicalState state;
  DynamicalState phi;
};

/// Smooth sigma and mu on a framed body with F and M chosen so that the exact
/// balance F = d_a sigma^a, M-bar = d_a mu-bar^a holds.
inline ManufacturedBody manufactured_body(int p, int n) {
  const auto lat = Lattice::cube(p, n, 0.0, 1.0);
  ManufacturedBody b{prolong(lat, detail::body_object), DynamicalState(lat)};
  for (std::size_t pt = 0; pt < lat.size(); ++pt) {
    const Point r = lat.point(pt);
    DynamicalPoint& d = b.phi.points[pt];
    Mat4 target = Mat4::Zero();
    for (int a = 0; a < p; ++a) {
      d.sigma[a] = detail::body_sigma(r, a);
      d.mu[a] = detail::body_mu(r, a);
      d.F += detail::d4([a](const Point& q) { return detail::body_sigma(q, a); }, r, a);
      target += detail::d4([a](const Point& q) { return detail::body_mu_bar(q, a); }, r, a);
    }
    d.M = body_couple_for(target, d, b.state.jets[pt], p);
  }
  return b;
}

inline std::vector<Refinement> cosserat_manufactured(int p, int n) {
  Refinement r1{"cosserat/force/p" + std::to_string(p), p, n};
  Refinement r2{"cosserat/couple/p" + std::to_string(p), p, n};
  for (int level = 0; level < 2; ++level) {
    const auto body = manufactured_body(p, level ? refined(n) : n);
    const auto res = cosserat_residual(body.phi, body.state);
    (level ? r1.fine : r1.coarse) = max_norm(res.r1, 1, level ? 2 : 1);
    (level ? r2.fine : r2.coarse) = max_norm(res.r2, 1, level ? 2 : 1);
  }
  return {r1, r2};
}

}  // namespace cosserat::studies
