#pragma once

// Free Dirac fields as finite superpositions of plane waves, with the
// conserved currents and the Takabayasi decomposition evaluated from
// analytic derivatives.

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "cosserat/lorentz.hpp"

namespace cosserat::dirac {

using Complex = std::complex<double>;
using CMat4 = Eigen::Matrix<Complex, 4, 4>;
using Spinor = Eigen::Matrix<Complex, 4, 1>;

inline constexpr Complex kI{0.0, 1.0};

/// Imaginary residue allowed on a real bilinear, relative to hbar c |psi|^2.
inline constexpr double kRealTol = 1e-12;

struct GammaBasis {
  std::array<CMat4, 4> upper;
  std::array<CMat4, 4> lower;
  CMat4 gamma5;

  /// Dirac representation: gamma^0 = diag(I, -I), gamma^i = [[0, s_i], [-s_i, 0]].
  static const GammaBasis& dirac() {
    static const GammaBasis g = [] {
      GammaBasis b;
      const std::array<Eigen::Matrix2cd, 3> pauli = [] {
        Eigen::Matrix2cd s1, s2, s3;
        s1 << 0, 1, 1, 0;
        s2 << 0, -kI, kI, 0;
        s3 << 1, 0, 0, -1;
        return std::array<Eigen::Matrix2cd, 3>{s1, s2, s3};
      }();
      b.upper[0].setZero();
      b.upper[0].topLeftCorner<2, 2>().setIdentity();
      b.upper[0].bottomRightCorner<2, 2>() = -Eigen::Matrix2cd::Identity();
      for (int i = 1; i < 4; ++i) {
        b.upper[i].setZero();
        b.upper[i].topRightCorner<2, 2>() = pauli[i - 1];
        b.upper[i].bottomLeftCorner<2, 2>() = -pauli[i - 1];
      }
      for (int m = 0; m < 4; ++m) b.lower[m] = eta()(m, m) * b.upper[m];
      b.gamma5 = kI * b.upper[0] * b.upper[1] * b.upper[2] * b.upper[3];
      return b;
    }();
    return g;
  }

  /// max over all 16 pairs of |g_m g_n + g_n g_m - 2 eta_mn I|.
  double clifford_defect() const {
    double r = 0.0;
    for (int m = 0; m < 4; ++m)
      for (int n = 0; n < 4; ++n) {
        const CMat4 a = lower[m] * lower[n] + lower[n] * lower[m] - 2.0 * eta()(m, n) * CMat4::Identity();
        r = std::max(r, a.cwiseAbs().maxCoeff());
      }
    return r;
  }

  /// gamma^0 Hermitian and gamma^i anti-Hermitian.
  double hermiticity_defect() const {
    double r = (upper[0] - upper[0].adjoint()).cwiseAbs().maxCoeff();
    for (int i = 1; i < 4; ++i) r = std::max(r, (upper[i] + upper[i].adjoint()).cwiseAbs().maxCoeff());
    return r;
  }

  /// p-slash = gamma^mu p_mu for a contravariant p.
  CMat4 slash(const Vec4& p) const {
    CMat4 s = CMat4::Zero();
    for (int m = 0; m < 4; ++m) s += lower[m] * p[m];
    return s;
  }
};

inline const GammaBasis& gammas() { return GammaBasis::dirac(); }

/// psi-bar Gamma phi, with psi-bar = psi^dagger gamma^0.
inline Complex bilinear(const Spinor& psi, const CMat4& G, const Spinor& phi) {
  return (psi.adjoint() * gammas().upper[0] * G * phi)(0, 0);
}

/// Spinor representation of exp(omega) for a Lorentz generator omega^mu_nu:
/// S^-1 gamma^mu S = Lambda^mu_nu gamma^nu.
inline CMat4 spin_lift(const Mat4& omega) {
  const GammaBasis& g = gammas();
  CMat4 sigma = CMat4::Zero();
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) {
      const double w = eta()(m, m) * omega(m, n);
      if (w != 0.0) sigma += (0.25 * w) * g.upper[m] * g.upper[n];
    }
  return sigma.exp();
}

/// psi = w exp(-i sign p.x) with contravariant wave vector p.
struct PlaneWaveState {
  Vec4 p = Vec4::Zero();
  Spinor w = Spinor::Zero();
  double kappa = 0.0;
  int sign = 1;
  Units units;
};

inline double off_shell(const Vec4& p, double kappa) { return std::abs(minkowski_inner(p, p) - kappa * kappa); }

/// Normalized solution of (p-slash -+ kappa) w = 0 built on the Pauli basis
/// vector chi = e_spin.
inline PlaneWaveState make_plane_wave(const Vec4& p, double kappa, int spin_index, int sign, Units units = {}) {
  if (kappa < 0.0) throw std::invalid_argument("make_plane_wave: negative kappa");
  if (spin_index != 0 && spin_index != 1) throw std::invalid_argument("make_plane_wave: spin index must be 0 or 1");
  if (sign != 1 && sign != -1) throw std::invalid_argument("make_plane_wave: sign must be +1 or -1");
  if (!(p[0] > 0.0)) throw std::invalid_argument("make_plane_wave: p^0 must be positive");
  if (off_shell(p, kappa) > 1e-10 * std::max(1.0, p[0] * p[0]))
    throw std::invalid_argument("make_plane_wave: p is off shell");
  Eigen::Vector2cd chi = Eigen::Vector2cd::Zero();
  chi[spin_index] = 1.0;
  Eigen::Matrix2cd sp;
  sp << p[3], Complex(p[1], -p[2]), Complex(p[1], p[2]), -p[3];
  const Eigen::Vector2cd lower_part = sp * chi / (p[0] + kappa);
  PlaneWaveState s{p, Spinor::Zero(), kappa, sign, units};
  if (sign > 0) {
    s.w.head<2>() = chi;
    s.w.tail<2>() = lower_part;
  } else {
    s.w.head<2>() = lower_part;
    s.w.tail<2>() = chi;
  }
  s.w.normalize();
  return s;
}

/// psi and its first and second partial derivatives at an event.
struct SpinorJet {
  Spinor psi = Spinor::Zero();
  std::array<Spinor, 4> d{};
  std::array<std::array<Spinor, 4>, 4> dd{};

  SpinorJet() {
    for (int m = 0; m < 4; ++m) {
      d[m].setZero();
      for (int n = 0; n < 4; ++n) dd[m][n].setZero();
    }
  }
};

/// A finite superposition of plane waves sharing kappa and units.
struct SpinorField {
  std::vector<PlaneWaveState> waves;

  SpinorField() = default;
  SpinorField(const PlaneWaveState& w) : waves{w} {}  // NOLINT: a plane wave is a field
  explicit SpinorField(std::vector<PlaneWaveState> ws) : waves(std::move(ws)) {
    if (waves.empty()) throw std::invalid_argument("SpinorField: no waves");
    for (const auto& w : waves)
      if (w.kappa != waves[0].kappa || w.units.c != waves[0].units.c || w.units.hbar != waves[0].units.hbar)
        throw std::invalid_argument("SpinorField: waves must share kappa and units");
  }

  double kappa() const { return waves.at(0).kappa; }
  const Units& units() const { return waves.at(0).units; }

  SpinorJet jet(const Vec4& x) const {
    SpinorJet j;
    for (const auto& wv : waves) {
      const Vec4 pl = lower(wv.p);
      const Spinor psi = wv.w * std::exp(-kI * double(wv.sign) * pl.dot(x));
      j.psi += psi;
      for (int m = 0; m < 4; ++m) {
        const Complex km = -kI * double(wv.sign) * pl[m];
        j.d[m] += km * psi;
        for (int n = 0; n < 4; ++n) j.dd[m][n] += km * (-kI * double(wv.sign) * pl[n]) * psi;
      }
    }
    return j;
  }
};

namespace detail {

inline double bilinear_scale(const SpinorField& f, const SpinorJet& j) {
  return f.units().hbar * f.units().c * std::max(1.0, j.psi.squaredNorm());
}

inline double real_part_checked(Complex z, double scale, const char* what) {
  if (std::abs(z.imag()) > kRealTol * scale) throw std::runtime_error(std::string(what) + ": imaginary residue");
  return z.real();
}

}  // namespace detail

struct DiracResidual {
  double equation = 0.0;   // |i d-slash psi - kappa psi|
  double conjugate = 0.0;  // |i d_mu psi-bar gamma^mu + kappa psi-bar|
  double max() const { return std::max(equation, conjugate); }
};

inline DiracResidual dirac_residual(const SpinorField& f, const Vec4& x) {
  const GammaBasis& g = gammas();
  const SpinorJet j = f.jet(x);
  Spinor r = -f.kappa() * j.psi;
  Eigen::Matrix<Complex, 1, 4> rb = f.kappa() * (j.psi.adjoint() * g.upper[0]);
  for (int m = 0; m < 4; ++m) {
    r += kI * (g.upper[m] * j.d[m]);
    rb += kI * (j.d[m].adjoint() * g.upper[0] * g.upper[m]);
  }
  return {r.norm(), rb.norm()};
}

/// j^mu = hbar c psi-bar gamma^mu psi.
inline Vec4 current_j(const SpinorField& f, const Vec4& x) {
  const SpinorJet j = f.jet(x);
  const double scale = detail::bilinear_scale(f, j);
  Vec4 out;
  for (int m = 0; m < 4; ++m)
    out[m] = detail::real_part_checked(f.units().hbar * f.units().c * bilinear(j.psi, gammas().upper[m], j.psi),
                                       scale, "current_j");
  return out;
}

struct DensityVelocity {
  double rho = 0.0;
  Vec4 u = Vec4::Zero();
};

/// rho = sqrt(j.j) / (hbar c) and u = j / (hbar rho), so that u.u = c^2.
inline DensityVelocity density_velocity(const Vec4& j, Units units = {}) {
  const double jj = minkowski_inner(j, j);
  if (!(jj > 0.0)) throw std::domain_error("density_velocity: current is not timelike");
  const double rho = std::sqrt(jj) / (units.hbar * units.c);
  return {rho, j / (units.hbar * rho)};
}

/// T^mu_nu = (i hbar c / 2)(psi-bar gamma^mu d_nu psi - d_nu psi-bar gamma^mu psi), stored T(mu, nu).
inline Mat4 energy_momentum(const SpinorField& f, const Vec4& x) {
  const SpinorJet j = f.jet(x);
  const double hc = f.units().hbar * f.units().c;
  const double scale = detail::bilinear_scale(f, j);
  Mat4 T;
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) {
      const CMat4& G = gammas().upper[m];
      const Complex z = 0.5 * kI * hc * (bilinear(j.psi, G, j.d[n]) - bilinear(j.d[n], G, j.psi));
      T(m, n) = detail::real_part_checked(z, scale * (1.0 + j.d[n].norm()), "energy_momentum");
    }
  return T;
}

/// T_[mu nu] evaluated directly from gamma_[mu d_nu], stored A(mu, nu).
inline Mat4 energy_momentum_antisym(const SpinorField& f, const Vec4& x) {
  const SpinorJet j = f.jet(x);
  const double hc = f.units().hbar * f.units().c;
  const auto& gl = gammas().lower;
  Mat4 A;
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) {
      const Complex a = bilinear(j.psi, gl[m], j.d[n]) - bilinear(j.psi, gl[n], j.d[m]);
      const Complex b = bilinear(j.d[n], gl[m], j.psi) - bilinear(j.d[m], gl[n], j.psi);
      A(m, n) = (0.25 * kI * hc * (a - b)).real();
    }
  return A;
}

/// S3[lambda](mu, nu) = S^{lambda mu}_nu.
using Rank3 = std::array<Mat4, 4>;

namespace detail {

template <class Product>
Rank3 spin_components(const SpinorField& f, const SpinorJet& j, Complex factor, Product&& product) {
  const double scale = bilinear_scale(f, j);
  Rank3 S;
  for (int l = 0; l < 4; ++l)
    for (int m = 0; m < 4; ++m)
      for (int n = 0; n < 4; ++n)
        S[l](m, n) = real_part_checked(factor * bilinear(j.psi, product(l, m, n), j.psi), scale, "spin_tensor");
  return S;
}

}  // namespace detail

/// S^{lambda mu}_nu = -(i hbar c / 8) psi-bar (g^mu g^lambda g_nu - g_nu g^lambda g^mu) psi.
inline Rank3 spin_tensor_full(const SpinorField& f, const Vec4& x) {
  const auto& g = gammas();
  const double hc = f.units().hbar * f.units().c;
  return detail::spin_components(f, f.jet(x), -kI * hc / 8.0, [&](int l, int m, int n) -> CMat4 {
    return g.upper[m] * g.upper[l] * g.lower[n] - g.lower[n] * g.upper[l] * g.upper[m];
  });
}

/// The same tensor as -(i hbar c / 4) psi-bar g^[mu g^lambda g_nu] psi, the
/// product antisymmetrized over all three slots (taken with every index lowered).
inline Rank3 spin_tensor_reduced(const SpinorField& f, const Vec4& x) {
  const auto& g = gammas();
  const double hc = f.units().hbar * f.units().c;
  return detail::spin_components(f, f.jet(x), -kI * hc / 4.0, [&](int l, int m, int n) -> CMat4 {
    const std::array<int, 3> idx{m, l, n};
    static constexpr int perms[6][4] = {{0, 1, 2, 1},  {1, 2, 0, 1},  {2, 0, 1, 1},
                                        {1, 0, 2, -1}, {0, 2, 1, -1}, {2, 1, 0, -1}};
    CMat4 sum = CMat4::Zero();
    for (const auto& pr : perms)
      sum += double(pr[3]) * g.lower[idx[pr[0]]] * g.lower[idx[pr[1]]] * g.lower[idx[pr[2]]];
    return sum * (eta()(m, m) * eta()(l, l) / 6.0);
  });
}

/// Max difference between the two spin tensor forms.
inline double spin_form_defect(const Rank3& a, const Rank3& b) {
  double r = 0.0;
  for (int l = 0; l < 4; ++l) r = std::max(r, max_abs(Mat4(a[l] - b[l])));
  return r;
}

/// S^mu_nu = u_lambda S^{lambda mu}_nu.
inline Mat4 contract_velocity(const Rank3& S, const Vec4& u) {
  const Vec4 ul = lower(u);
  Mat4 out = Mat4::Zero();
  for (int l = 0; l < 4; ++l) out += ul[l] * S[l];
  return out;
}

struct SpinTensor {
  Rank3 full;
  Mat4 S = Mat4::Zero();  // S^mu_nu
  double reduced_form_defect = 0.0;
};

inline SpinTensor spin_tensor(const SpinorField& f, const Vec4& x) {
  SpinTensor st;
  st.full = spin_tensor_full(f, x);
  st.reduced_form_defect = spin_form_defect(st.full, spin_tensor_reduced(f, x));
  st.S = contract_velocity(st.full, density_velocity(current_j(f, x), f.units()).u);
  return st;
}

struct ConservationReport {
  double current = 0.0;  // |d_mu (rho u^mu)|
  double energy = 0.0;   // |d_mu T^mu_nu|
  double spin = 0.0;     // |d_mu S^{lambda mu}_nu - eta^{lambda kappa} T_[kappa nu]|
  double max() const { return std::max({current, energy, spin}); }
};

namespace detail {

// d_a of psi-bar G phi given jets of both spinors.
inline Complex d_bilinear(const Spinor& psi, const Spinor& dpsi, const CMat4& G, const Spinor& phi,
                          const Spinor& dphi) {
  return bilinear(dpsi, G, phi) + bilinear(psi, G, dphi);
}

}  // namespace detail

/// Residuals of the three local conservation laws at one event, with every
/// derivative taken analytically from the plane-wave expansion.
inline ConservationReport conservation_at(const SpinorField& f, const Vec4& x) {
  const auto& g = gammas();
  const SpinorJet j = f.jet(x);
  const double hc = f.units().hbar * f.units().c;
  ConservationReport r;

  Complex divj = 0.0;
  for (int m = 0; m < 4; ++m) divj += detail::d_bilinear(j.psi, j.d[m], g.upper[m], j.psi, j.d[m]);
  r.current = std::abs(hc * divj / f.units().hbar);

  for (int n = 0; n < 4; ++n) {
    Complex s = 0.0;
    for (int m = 0; m < 4; ++m) {
      const CMat4& G = g.upper[m];
      s += detail::d_bilinear(j.psi, j.d[m], G, j.d[n], j.dd[m][n]) -
           detail::d_bilinear(j.d[n], j.dd[m][n], G, j.psi, j.d[m]);
    }
    r.energy = std::max(r.energy, std::abs(0.5 * kI * hc * s));
  }

  const Mat4 T = energy_momentum(f, x);
  const Mat4 Tl = eta() * T;
  const Mat4 anti = 0.5 * (Tl - Tl.transpose());
  for (int l = 0; l < 4; ++l)
    for (int n = 0; n < 4; ++n) {
      Complex div = 0.0;
      for (int m = 0; m < 4; ++m) {
        const CMat4 G = g.upper[m] * g.upper[l] * g.lower[n] - g.lower[n] * g.upper[l] * g.upper[m];
        div += detail::d_bilinear(j.psi, j.d[m], G, j.psi, j.d[m]);
      }
      const double ds = (-kI * hc / 8.0 * div).real();
      r.spin = std::max(r.spin, std::abs(ds - eta()(l, l) * anti(l, n)));
    }
  return r;
}

inline ConservationReport conservation_report(const SpinorField& f, const std::vector<Vec4>& points) {
  ConservationReport out;
  for (const Vec4& x : points) {
    const auto r = conservation_at(f, x);
    out.current = std::max(out.current, r.current);
    out.energy = std::max(out.energy, r.energy);
    out.spin = std::max(out.spin, r.spin);
  }
  return out;
}

struct Takabayasi {
  double rho = 0.0;
  double omega = 0.0;      // psi-bar psi
  double omega_hat = 0.0;  // i psi-bar gamma5 psi
  double angle = 0.0;      // A
  Vec4 u = Vec4::Zero();
  Vec4 S_hat = Vec4::Zero();
  Mat4 S_low = Mat4::Zero();  // S_{mu nu}
  Vec4 q = Vec4::Zero();
  Mat4 theta = Mat4::Zero();  // theta^mu_nu
  double theta_trace_rhs = 0.0;
  double pressure = 0.0;  // theta^mu_mu / 3
  double mu0 = 0.0;
};

/// #(u ^ S-hat): S_{mu nu} = 1/2 eps_{mu nu kappa lambda} u^kappa S-hat^lambda.
inline Mat4 dual_of(const Vec4& u, const Vec4& s_hat) {
  Mat4 S = Mat4::Zero();
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) S(m, n) += 0.5 * levi_civita(m, n, k, l) * u[k] * s_hat[l];
  return S;
}

/// Inverse of dual_of for S orthogonal to u: S-hat^t = -eps^{mu nu sigma t} u_sigma S_{mu nu} / c^2.
inline Vec4 undual(const Vec4& u, const Mat4& S_low, double c) {
  const Vec4 ul = lower(u);
  Vec4 s = Vec4::Zero();
  // eps^{....} = -eps_{....} in this signature
  for (int t = 0; t < 4; ++t)
    for (int m = 0; m < 4; ++m)
      for (int n = 0; n < 4; ++n)
        for (int k = 0; k < 4; ++k) s[t] += levi_civita(m, n, k, t) * ul[k] * S_low(m, n);
  return s / (c * c);
}

inline Takabayasi takabayasi(const SpinorField& f, const Vec4& x) {
  const auto& g = gammas();
  const Units& un = f.units();
  const double c = un.c, hbar = un.hbar;
  const SpinorJet j = f.jet(x);
  Takabayasi t;

  const Vec4 jv = current_j(f, x);
  const auto dv = density_velocity(jv, un);
  t.rho = dv.rho;
  t.u = dv.u;
  if (!(t.rho > 0.0)) throw std::domain_error("takabayasi: zero density");

  const CMat4 ig5 = kI * g.gamma5;
  t.omega = bilinear(j.psi, CMat4::Identity(), j.psi).real();
  t.omega_hat = bilinear(j.psi, ig5, j.psi).real();
  t.angle = std::atan2(t.omega_hat, t.omega);

  t.S_low = eta() * contract_velocity(spin_tensor_full(f, x), t.u);
  t.S_hat = undual(t.u, t.S_low, c);

  // gradients of A and u from the analytic bilinear derivatives
  Vec4 dA, drho;
  Mat4 du;  // du(l, n) = d_n u^l
  Mat4 dj;  // dj(l, n) = d_n j^l
  for (int n = 0; n < 4; ++n) {
    const double dO = detail::d_bilinear(j.psi, j.d[n], CMat4::Identity(), j.psi, j.d[n]).real();
    const double dOh = detail::d_bilinear(j.psi, j.d[n], ig5, j.psi, j.d[n]).real();
    dA[n] = (t.omega * dOh - t.omega_hat * dO) / (t.omega * t.omega + t.omega_hat * t.omega_hat);
    for (int l = 0; l < 4; ++l)
      dj(l, n) = hbar * c * detail::d_bilinear(j.psi, j.d[n], g.upper[l], j.psi, j.d[n]).real();
    drho[n] = minkowski_inner(jv, dj.col(n)) / (hbar * hbar * c * c * t.rho);
    du.col(n) = dj.col(n) / (hbar * t.rho) - jv * drho[n] / (hbar * t.rho * t.rho);
  }

  const Mat4 S_mixed = eta() * t.S_low;  // S^mu_lambda
  const Vec4 ul = lower(t.u);
  const double A_dot = t.u.dot(dA);
  const Vec4 u_dot = du * t.u;
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) {
      double s = 0.5 * hbar * c * dA[n] * t.S_hat[m];
      for (int l = 0; l < 4; ++l) s += S_mixed(m, l) * du(l, n);
      t.theta(m, n) = s + 0.5 * hbar * A_dot * t.S_hat[m] * ul[n];
      for (int l = 0; l < 4; ++l) t.theta(m, n) += S_mixed(m, l) * u_dot[l] * ul[n] / (c * c);
      t.q[m] -= (s * t.u[n]) / (c * c);
    }
  t.pressure = t.theta.trace() / 3.0;

  const Mat4 du_low = eta() * du;  // d_n u_l
  const Mat4 S_up = eta() * t.S_low * eta();
  t.theta_trace_rhs = 0.5 * hbar * dA.dot(t.S_hat);
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) t.theta_trace_rhs += 0.5 * S_up(m, n) * (du_low(n, m) - du_low(m, n));

  const double m0 = hbar * f.kappa() / c;
  t.mu0 = m0 * t.rho * std::cos(t.angle) + t.theta.trace() / (3.0 * c * c);
  return t;
}

}  // namespace cosserat::dirac
