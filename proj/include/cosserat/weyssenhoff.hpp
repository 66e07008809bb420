#pragma once

// The Weyssenhoff spinning fluid: momentum split, vorticities, stress and spin
// tensors, density derivative, and a single-element worldline integrator.
//
// Index layout: u, pi, x are contravariant; g is stored as the covector g_mu;
// s(mu, nu) = s^mu_nu, antisymmetric once the upper index is lowered.

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <Eigen/SVD>

#include "cosserat/lorentz.hpp"

namespace cosserat::weyssenhoff {

struct WeyssenhoffElement {
  Vec4 x = Vec4::Zero();
  Vec4 u = Vec4(1, 0, 0, 0);
  Vec4 g = Vec4::Zero();  // g_mu
  Mat4 s = Mat4::Zero();  // s^mu_nu
  double tau = 0.0;
};

/// s_{mu nu} = eta_{mu alpha} s^alpha_nu.
inline Mat4 lowered(const Mat4& s) { return eta() * s; }
inline Mat4 mixed_from_lowered(const Mat4& s_low) { return eta() * s_low; }

struct ElementDefects {
  double normalization = 0.0;  // |u.u - c^2|
  double frenkel = 0.0;        // max |s^mu_nu u^nu|
  double antisymmetry = 0.0;   // max |s_{mu nu} + s_{nu mu}|
  double max() const { return std::max({normalization, frenkel, antisymmetry}); }
};

inline ElementDefects defects(const Vec4& u, const Mat4& s, Units un = {}) {
  const Mat4 sl = lowered(s);
  return {std::abs(minkowski_inner(u, u) - un.c * un.c), max_abs(Vec4(s * u)), max_abs(Mat4(sl + sl.transpose()))};
}

struct MomentumSplit {
  double rho0 = 0.0;
  Vec4 pi = Vec4::Zero();
  double mu0_squared = 0.0;  // g.g / c^2
  bool mu0_defined = false;
  double mu0 = std::numeric_limits<double>::quiet_NaN();
};

/// g = rho0 u + pi with rho0 c^2 = g(u) and mu0^2 c^2 = g(g).
inline MomentumSplit split_momentum(const Vec4& g, const Vec4& u, Units un = {}) {
  const double c2 = un.c * un.c;
  if (std::abs(minkowski_inner(u, u) - c2) > 1e-10 * c2) throw std::invalid_argument("split_momentum: u.u != c^2");
  MomentumSplit m;
  const Vec4 g_up = lower(g);  // diagonal eta is its own inverse
  m.rho0 = g.dot(u) / c2;
  m.pi = g_up - m.rho0 * u;
  m.pi -= (minkowski_inner(u, m.pi) / c2) * u;
  m.mu0_squared = minkowski_inner(g_up, g_up) / c2;
  m.mu0_defined = m.mu0_squared >= 0.0;
  if (m.mu0_defined) m.mu0 = std::sqrt(m.mu0_squared);
  return m;
}

/// pi^mu = -(1/c^2) s^mu_nu a^nu.
inline Vec4 transverse_momentum(const Vec4& u, const Mat4& s, const Vec4& a, Units un = {}) {
  const double c2 = un.c * un.c;
  if (std::abs(minkowski_inner(u, a)) > 1e-10 * std::max(1.0, un.c * a.norm()))
    throw std::invalid_argument("transverse_momentum: acceleration not orthogonal to u");
  return -(s * a) / c2;
}

/// g_nu = rho0 u_nu - (1/c^2) s_{nu mu} a^mu, returned as a covector.
inline Vec4 momentum_from_state(double rho0, const Vec4& u, const Mat4& s, const Vec4& a, Units un = {}) {
  return lower(rho0 * u + transverse_momentum(u, s, a, un));
}

struct StressTensors {
  Mat4 T = Mat4::Zero();      // T(nu, mu) = T^nu_mu = u^nu g_mu
  Mat4 T_low = Mat4::Zero();  // T_{mu nu} = g_mu u_nu
  Mat4 sym = Mat4::Zero();
  Mat4 antisym = Mat4::Zero();
  std::array<Mat4, 4> S{};  // S[lambda](nu, mu) = s^nu_mu u^lambda
  double trace = 0.0;
};

inline StressTensors stress_tensors(const WeyssenhoffElement& e) {
  StressTensors t;
  t.T = e.u * e.g.transpose();
  t.T_low = e.g * lower(e.u).transpose();
  t.sym = 0.5 * (t.T_low + t.T_low.transpose());
  t.antisym = 0.5 * (t.T_low - t.T_low.transpose());
  for (int l = 0; l < 4; ++l) t.S[l] = e.u[l] * e.s;
  t.trace = t.T.trace();
  return t;
}

/// Spacetime fields u(x), g(x), s(x); derivatives by fourth-order central differences.
struct FlowField {
  std::function<Vec4(const Vec4&)> u;
  std::function<Vec4(const Vec4&)> g;
  std::function<Mat4(const Vec4&)> s;
  Units units;
  double h = 1e-3;

  WeyssenhoffElement element(const Vec4& x) const {
    WeyssenhoffElement e;
    e.x = x;
    e.u = u(x);
    if (g) e.g = g(x);
    if (s) e.s = s(x);
    return e;
  }
};

/// d_nu f at x by the five-point stencil.
template <class F>
auto derivative(F&& f, const Vec4& x, int nu, double h) {
  Vec4 e = Vec4::Zero();
  e[nu] = h;
  using R = std::decay_t<decltype(f(x))>;
  const R out = (8.0 * (f(x + e) - f(x - e)) - (f(x + 2 * e) - f(x - 2 * e))) / (12.0 * h);
  return out;
}

/// J(mu, nu) = d_nu v^mu.
template <class F>
Mat4 jacobian(F&& v, const Vec4& x, double h) {
  Mat4 J;
  for (int nu = 0; nu < 4; ++nu) J.col(nu) = derivative(v, x, nu, h);
  return J;
}

struct Vorticity {
  Mat4 omega_k = Mat4::Zero();  // du = 1/2 omega_k(mu, nu) dx^mu ^ dx^nu
  double chi_k = 0.0;
  Mat4 omega_d = Mat4::Zero();
  double chi_d = 0.0;
  double chi_d_three_term = 0.0;  // u(rho0) + rho0 chi_k + d_mu pi^mu
};

/// omega(mu, nu) = -(d_mu w_nu - d_nu w_mu) for the covector w.
inline Mat4 signed_curl(const Mat4& dw) {
  // dw(nu, mu) = d_mu w_nu
  return -(dw.transpose() - dw);
}

inline Vorticity vorticity_compressibility(const FlowField& f, const Vec4& x) {
  const double c2 = f.units.c * f.units.c;
  Vorticity v;
  const Mat4 du = jacobian(f.u, x, f.h);
  v.chi_k = du.trace();
  v.omega_k = signed_curl(eta() * du);
  if (!f.g) return v;
  const Mat4 dg = jacobian(f.g, x, f.h);
  v.omega_d = signed_curl(dg);
  v.chi_d = (eta() * dg).trace();
  auto rho0 = [&](const Vec4& y) { return f.g(y).dot(f.u(y)) / c2; };
  auto pi = [&](const Vec4& y) -> Vec4 { return lower(f.g(y)) - rho0(y) * f.u(y); };
  const Vec4 u = f.u(x);
  double u_rho = 0.0;
  for (int nu = 0; nu < 4; ++nu) u_rho += u[nu] * derivative(rho0, x, nu, f.h);
  v.chi_d_three_term = u_rho + rho0(x) * v.chi_k + jacobian(pi, x, f.h).trace();
  return v;
}

struct DensityDerivative {
  double divergence = 0.0;  // d_nu (f u^nu)
  double convective = 0.0;  // u^nu d_nu f + chi_k f
};

inline DensityDerivative density_derivative(const std::function<double(const Vec4&)>& fn, const FlowField& f,
                                            const Vec4& x) {
  DensityDerivative d;
  auto flux = [&](const Vec4& y) -> Vec4 { return fn(y) * f.u(y); };
  d.divergence = jacobian(flux, x, f.h).trace();
  const Vec4 u = f.u(x);
  for (int nu = 0; nu < 4; ++nu) d.convective += u[nu] * derivative(fn, x, nu, f.h);
  d.convective += jacobian(f.u, x, f.h).trace() * fn(x);
  return d;
}

/// L[lambda](mu, nu) = L^{mu lambda}_nu = u^lambda (x_nu g^mu - x^mu g_nu).
inline std::array<Mat4, 4> orbital_angular_momentum(const FlowField& f, const Vec4& x) {
  const Vec4 u = f.u(x), g = f.g(x);
  const Mat4 core = lower(g) * lower(x).transpose() - x * g.transpose();
  std::array<Mat4, 4> L;
  for (int l = 0; l < 4; ++l) L[l] = u[l] * core;
  return L;
}

/// d_lambda L^{mu lambda}_nu by differencing.
inline Mat4 orbital_divergence(const FlowField& f, const Vec4& x) {
  Mat4 div = Mat4::Zero();
  for (int l = 0; l < 4; ++l)
    div += derivative([&](const Vec4& y) -> Mat4 { return orbital_angular_momentum(f, y)[l]; }, x, l, f.h);
  return div;
}

/// pi^mu u_nu - pi_nu u^mu.
inline Mat4 transverse_torque(const Vec4& pi, const Vec4& u) {
  return pi * lower(u).transpose() - u * lower(pi).transpose();
}

/// Builds s^mu_nu from s_01, s_02, s_03, s_12, s_13, s_23.
inline Mat4 spin_from_components(const std::array<double, 6>& c) {
  Mat4 sl = Mat4::Zero();
  const int pairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  for (int k = 0; k < 6; ++k) {
    sl(pairs[k][0], pairs[k][1]) = c[k];
    sl(pairs[k][1], pairs[k][0]) = -c[k];
  }
  return mixed_from_lowered(sl);
}

/// The six lowered components s_01, s_02, s_03, s_12, s_13, s_23.
inline std::array<double, 6> spin_components(const Mat4& s) {
  const Mat4 sl = lowered(s);
  return {sl(0, 1), sl(0, 2), sl(0, 3), sl(1, 2), sl(1, 3), sl(2, 3)};
}

/// Element built in its rest frame and carried by the Lorentz matrix L:
/// u = c L e_0, s = L s_rest L^-1, g = rho0 u + L pi_rest lowered.
inline WeyssenhoffElement boosted_element(const Mat4& L, double rho0, const Vec4& pi_rest,
                                          const std::array<double, 6>& spin_rest, Units un = {}) {
  WeyssenhoffElement e;
  e.u = un.c * L.col(0);
  e.s = L * spin_from_components(spin_rest) * lorentz_adjoint(L);
  e.g = lower(rho0 * e.u + L * pi_rest);
  return e;
}

// ---------------------------------------------------------------- worldline

struct WorldlineOptions {
  bool project = false;
  double closure_tol = 1e-6;
  double drift_limit = 1e-3;
  int record_every = 1;
};

struct Closure {
  Vec4 a = Vec4::Zero();
  Vec4 pi = Vec4::Zero();
  double residual = 0.0;  // |s a + c^2 pi|
};

/// Minimum-norm solution of -(1/c^2) s a = pi with u.a = 0, with the spin
/// kernel direction orthogonal to u removed.
inline Closure solve_acceleration(const Vec4& u, const Mat4& s, const Vec4& g, Units un = {}) {
  const double c2 = un.c * un.c;
  Closure out;
  const double rho0 = g.dot(u) / c2;
  out.pi = lower(g) - rho0 * u;
  const double scale = std::max(1.0, max_abs(s));
  if (max_abs(s) <= 1e-14) {
    out.residual = c2 * max_abs(out.pi);
    return out;
  }
  Eigen::JacobiSVD<Mat4> svd(-s / c2, Eigen::ComputeFullU | Eigen::ComputeFullV);
  svd.setThreshold(1e-10);
  Vec4 a = svd.solve(out.pi);
  // kernel candidates: the two weakest right singular vectors, made orthogonal to u
  Vec4 k = Vec4::Zero();
  for (int i = 2; i < 4; ++i) {
    Vec4 v = svd.matrixV().col(i);
    v -= (minkowski_inner(u, v) / c2) * u;
    if (v.norm() > k.norm()) k = v;
  }
  a -= (minkowski_inner(u, a) / c2) * u;
  const double kk = minkowski_inner(k, k);
  if (std::abs(kk) > 1e-12) a -= (minkowski_inner(k, a) / kk) * k;
  out.a = a;
  out.residual = max_abs(Vec4(s * a + c2 * out.pi)) / scale;
  return out;
}

struct WorldlineRecord {
  double tau = 0.0;
  Vec4 x, u;
  Mat4 s;
  double drift_u2 = 0.0;    // u.u - c^2
  double drift_su = 0.0;    // max |s u|
  double drift_spin = 0.0;  // s_{mu nu} s^{mu nu} minus its initial value
  double drift_g = 0.0;     // g minus its initial value (held fixed)
};

struct WorldlineDiagnostics {
  double max_u2 = 0.0;
  double max_su = 0.0;
  double max_spin = 0.0;
  double max_g = 0.0;
  double max_closure = 0.0;
  double max_velocity_change = 0.0;  // max |u - u(0)|
};

struct Trajectory {
  std::vector<WorldlineRecord> records;
  WorldlineDiagnostics diagnostics;
  WeyssenhoffElement final_state;
};

/// s_{mu nu} s^{mu nu}.
inline double spin_invariant(const Mat4& s) {
  const Mat4 sl = lowered(s);
  return (sl.cwiseProduct(eta() * sl * eta())).sum();
}

namespace detail {

struct State {
  Vec4 x, u;
  Mat4 s;
  State operator+(const State& o) const { return {x + o.x, u + o.u, s + o.s}; }
  State operator*(double k) const { return {k * x, k * u, k * s}; }
};

inline State rhs(const State& y, const Vec4& g, Units un) {
  const Closure cl = solve_acceleration(y.u, y.s, g, un);
  // s-dot = pi u_low^T - u pi_low^T keeps s u = 0 under the closure
  return {y.u, cl.a, cl.pi * lower(y.u).transpose() - y.u * lower(cl.pi).transpose()};
}

inline void project(State& y, Units un) {
  const double c2 = un.c * un.c;
  y.u *= un.c / std::sqrt(minkowski_inner(y.u, y.u));
  const Mat4 P = Mat4::Identity() - y.u * lower(y.u).transpose() / c2;
  y.s = P * y.s * P;
}

}  // namespace detail

inline void validate_initial(const WeyssenhoffElement& e, Units un, double closure_tol) {
  const double c2 = un.c * un.c;
  const auto d = defects(e.u, e.s, un);
  const Closure cl = solve_acceleration(e.u, e.s, e.g, un);
  if (d.normalization > 1e-10 * c2 || d.frenkel > 1e-10 * std::max(1.0, max_abs(e.s)) * un.c ||
      d.antisymmetry > 1e-12 * std::max(1.0, max_abs(e.s)) || cl.residual > closure_tol) {
    std::ostringstream msg;
    msg << "integrate_worldline: initial element violates invariants (u.u - c^2 = " << d.normalization
        << ", |s u| = " << d.frenkel << ", antisymmetry = " << d.antisymmetry << ", closure = " << cl.residual << ")";
    throw std::invalid_argument(msg.str());
  }
}

/// Classical RK4 in proper time for (x, u, s) with g held constant.
inline Trajectory integrate_worldline(const WeyssenhoffElement& initial, int steps, double dtau, Units un = {},
                                      const WorldlineOptions& opt = {}) {
  if (steps < 0 || !(dtau > 0.0) || opt.record_every < 1)
    throw std::invalid_argument("integrate_worldline: need steps >= 0, dtau > 0, record_every >= 1");
  validate_initial(initial, un, opt.closure_tol);
  const double c2 = un.c * un.c;
  const Vec4 g = initial.g;
  const double spin0 = spin_invariant(initial.s);
  Trajectory tr;
  auto& diag = tr.diagnostics;

  detail::State y{initial.x, initial.u, initial.s};
  double tau = initial.tau;
  auto record = [&](bool keep) {
    WorldlineRecord r{tau, y.x, y.u, y.s};
    r.drift_u2 = minkowski_inner(y.u, y.u) - c2;
    r.drift_su = max_abs(Vec4(y.s * y.u));
    r.drift_spin = spin_invariant(y.s) - spin0;
    r.drift_g = 0.0;
    diag.max_u2 = std::max(diag.max_u2, std::abs(r.drift_u2));
    diag.max_su = std::max(diag.max_su, r.drift_su);
    diag.max_spin = std::max(diag.max_spin, std::abs(r.drift_spin));
    diag.max_velocity_change = std::max(diag.max_velocity_change, max_abs(Vec4(y.u - initial.u)));
    const double closure = solve_acceleration(y.u, y.s, g, un).residual;
    diag.max_closure = std::max(diag.max_closure, closure);
    if (closure > opt.closure_tol) {
      std::ostringstream msg;
      msg << "integrate_worldline: transverse momentum outside the range of s at tau = " << tau << " (residual "
          << closure << ")";
      throw std::runtime_error(msg.str());
    }
    if (std::max(std::abs(r.drift_u2) / c2, r.drift_su / (un.c * std::max(1.0, max_abs(initial.s)))) > opt.drift_limit) {
      std::ostringstream msg;
      msg << "integrate_worldline: constraint drift exceeded limit at tau = " << tau;
      throw std::runtime_error(msg.str());
    }
    if (keep) tr.records.push_back(r);
  };

  record(true);
  for (int n = 1; n <= steps; ++n) {
    const auto k1 = detail::rhs(y, g, un);
    const auto k2 = detail::rhs(y + k1 * (0.5 * dtau), g, un);
    const auto k3 = detail::rhs(y + k2 * (0.5 * dtau), g, un);
    const auto k4 = detail::rhs(y + k3 * dtau, g, un);
    y = y + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (dtau / 6.0);
    if (opt.project) detail::project(y, un);
    tau = initial.tau + n * dtau;
    record(n % opt.record_every == 0 || n == steps);
  }
  tr.final_state = {y.x, y.u, g, y.s, tau};
  return tr;
}

}  // namespace cosserat::weyssenhoff
