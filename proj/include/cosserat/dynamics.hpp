#pragma once

// The fundamental 1-form phi, virtual work, and the relativistic Cosserat
// balance residuals.
//
// Storage: F and sigma^a hold lower-index covectors F_mu, sigma^a_mu.
// M(mu, nu) holds M^nu_mu and mu[a](mu, nu) holds mu^{nu a}_mu, so each pairs
// with the matching jet slot (de(mu, nu) = de^mu_nu) by a plain Frobenius sum.
// Antisymmetrization is A_[mu nu] = (A_mu nu - A_nu mu) / 2, and pairings with
// index-raised variations dI^{mu nu} = (dI eta)^{mu nu} sum over all (mu, nu).

#include <Eigen/SVD>
#include <functional>

#include "cosserat/kinematics.hpp"

namespace cosserat {

struct DynamicalPoint {
  Vec4 F = Vec4::Zero();
  Mat4 M = Mat4::Zero();
  std::array<Vec4, 4> sigma{Vec4::Zero(), Vec4::Zero(), Vec4::Zero(), Vec4::Zero()};
  std::array<Mat4, 4> mu{Mat4::Zero(), Mat4::Zero(), Mat4::Zero(), Mat4::Zero()};
};

struct DynamicalState {
  Lattice lattice;
  std::vector<DynamicalPoint> points;

  DynamicalState() = default;
  explicit DynamicalState(const Lattice& lat) : lattice(lat), points(lat.size()) {}
};

inline Mat4 antisym(const Mat4& a) { return 0.5 * (a - a.transpose()); }

inline double frobenius(const Mat4& a, const Mat4& b) { return (a.array() * b.array()).sum(); }

struct BarredMoments {
  Mat4 M;                     // M-bar_{mu nu}
  std::array<Mat4, 4> mu{};   // mu-bar^a_{mu nu}
};

/// Everything in M-bar except the body-couple term.
inline Mat4 couple_remainder(const DynamicalPoint& d, const Jet& j, int p) {
  Mat4 r = d.F * (eta() * j.x).transpose();
  for (int a = 0; a < p; ++a) {
    r += d.sigma[a] * (eta() * j.xd[a]).transpose();
    r += d.mu[a] * (eta() * j.ed[a]).transpose();
  }
  return r;
}

inline BarredMoments barred_moments(const DynamicalPoint& d, const Jet& j, int p) {
  BarredMoments b;
  const Mat4 eta_e = eta() * j.e;
  b.M = antisym(d.M * eta_e.transpose() + couple_remainder(d, j, p));
  for (int a = 0; a < 4; ++a)
    b.mu[a] = a < p ? antisym(d.mu[a] * eta_e.transpose() + d.sigma[a] * (eta() * j.x).transpose()) : Mat4::Zero();
  return b;
}

inline std::vector<BarredMoments> barred_moments(const DynamicalState& phi, const KinematicalState& s) {
  require_same_lattice(phi.lattice, s.lattice, "barred_moments");
  std::vector<BarredMoments> out(s.jets.size());
  for (std::size_t pt = 0; pt < out.size(); ++pt) out[pt] = barred_moments(phi.points[pt], s.jets[pt], s.lattice.dim());
  return out;
}

/// Body couple that makes M-bar equal `target` (zero gives an internal couple only).
inline Mat4 body_couple_for(const Mat4& target, const DynamicalPoint& d, const Jet& j, int p) {
  return (target - antisym(couple_remainder(d, j, p))) * j.e * eta();
}

enum class Picture { Lagrangian, Eulerian };

inline const char* to_string(Picture p) { return p == Picture::Lagrangian ? "lagrangian" : "eulerian"; }

/// Per-point variations. Lagrangian slots hold (dx, de, dx_a, de_a); Eulerian
/// slots hold (dxi, dI, dxi_a, dI_a).
struct VirtualDisplacement {
  Lattice lattice;
  Picture picture = Picture::Eulerian;
  std::vector<Jet> jets;

  VirtualDisplacement() = default;
  VirtualDisplacement(const Lattice& lat, Picture pic) : lattice(lat), picture(pic), jets(lat.size()) {
    for (Jet& j : jets) j.e.setZero();
  }

  void validate(double tol = kLorentzTol) const {
    if (picture != Picture::Eulerian) return;
    for (const Jet& j : jets) {
      bool ok = is_lorentz_generator(j.e, tol);
      for (int a = 0; a < lattice.dim(); ++a) ok = ok && is_lorentz_generator(j.ed[a], tol);
      if (!ok) throw std::invalid_argument("VirtualDisplacement: dI is not an infinitesimal Lorentz map");
    }
  }
};

/// Eulerian variation to Lagrangian slots at state jet j:
///   dx = dxi + dI x,  de = dI e,  dx_a = dxi_a + dI_a x + dI x_a,  de_a = dI_a e + dI e_a.
inline Jet to_lagrangian(const Jet& v, const Jet& j, int p) {
  Jet out;
  out.x = v.x + v.e * j.x;
  out.e = v.e * j.e;
  for (int a = 0; a < p; ++a) {
    out.xd[a] = v.xd[a] + v.ed[a] * j.x + v.e * j.xd[a];
    out.ed[a] = v.ed[a] * j.e + v.e * j.ed[a];
  }
  return out;
}

inline VirtualDisplacement to_lagrangian(const VirtualDisplacement& ds, const KinematicalState& s) {
  if (ds.picture != Picture::Eulerian) throw std::invalid_argument("to_lagrangian: variation is not Eulerian");
  require_same_lattice(ds.lattice, s.lattice, "to_lagrangian");
  VirtualDisplacement out(ds.lattice, Picture::Lagrangian);
  for (std::size_t pt = 0; pt < out.jets.size(); ++pt) out.jets[pt] = to_lagrangian(ds.jets[pt], s.jets[pt], s.lattice.dim());
  return out;
}

inline double lagrangian_pairing(const DynamicalPoint& d, const Jet& v, int p) {
  double w = d.F.dot(v.x) + frobenius(d.M, v.e);
  for (int a = 0; a < p; ++a) w += d.sigma[a].dot(v.xd[a]) + frobenius(d.mu[a], v.ed[a]);
  return w;
}

inline double eulerian_pairing(const DynamicalPoint& d, const BarredMoments& b, const Jet& v, int p) {
  double w = d.F.dot(v.x) + frobenius(b.M, v.e * eta());
  for (int a = 0; a < p; ++a) w += d.sigma[a].dot(v.xd[a]) + frobenius(b.mu[a], v.ed[a] * eta());
  return w;
}

inline FormField<double> virtual_work_density(const DynamicalState& phi, const KinematicalState& s,
                                              const VirtualDisplacement& ds, Picture expected) {
  if (ds.picture != expected)
    throw std::invalid_argument(std::string("virtual_work_density: variation is ") + to_string(ds.picture) +
                                ", expected " + to_string(expected));
  require_same_lattice(phi.lattice, s.lattice, "virtual_work_density");
  require_same_lattice(ds.lattice, s.lattice, "virtual_work_density");
  const int p = s.lattice.dim();
  FormField<double> w(s.lattice, 0);
  for (std::size_t pt = 0; pt < s.jets.size(); ++pt) {
    if (expected == Picture::Lagrangian) {
      w.at(pt, 0) = lagrangian_pairing(phi.points[pt], ds.jets[pt], p);
    } else {
      w.at(pt, 0) = eulerian_pairing(phi.points[pt], barred_moments(phi.points[pt], s.jets[pt], p), ds.jets[pt], p);
    }
  }
  return w;
}

inline FormField<double> virtual_work_density(const DynamicalState& phi, const KinematicalState& s,
                                              const VirtualDisplacement& ds) {
  return virtual_work_density(phi, s, ds, ds.picture);
}

/// Trapezoid weight of a lattice point, skipping axis `skip` when >= 0.
inline double trapezoid_weight(const Lattice& lat, std::size_t pt, int skip = -1) {
  double w = 1.0;
  for (int a = 0; a < lat.dim(); ++a) {
    if (a == skip) continue;
    const int i = lat.coord(pt, a);
    w *= (i == 0 || i == lat.shape(a) - 1) ? 0.5 * lat.spacing(a) : lat.spacing(a);
  }
  return w;
}

/// An Eulerian 0-jet variation (dxi(rho), dI(rho)); its jets come from differencing.
struct ZeroJetVariation {
  Lattice lattice;
  std::vector<Vec4> dxi;
  std::vector<Mat4> dI;

  template <class F>
  static ZeroJetVariation sample(const Lattice& lat, F&& fn) {
    ZeroJetVariation v{lat, std::vector<Vec4>(lat.size()), std::vector<Mat4>(lat.size())};
    for (std::size_t pt = 0; pt < lat.size(); ++pt) {
      const AlgebraElement x = fn(lat.point(pt));
      v.dxi[pt] = x.v;
      v.dI[pt] = x.w;
    }
    return v;
  }

  VirtualDisplacement prolong() const {
    VirtualDisplacement ds(lattice, Picture::Eulerian);
    auto get_x = [&](std::size_t q) -> const Vec4& { return dxi[q]; };
    auto get_I = [&](std::size_t q) -> const Mat4& { return dI[q]; };
    for (std::size_t pt = 0; pt < lattice.size(); ++pt) {
      ds.jets[pt].x = dxi[pt];
      ds.jets[pt].e = dI[pt];
      for (int a = 0; a < lattice.dim(); ++a) {
        ds.jets[pt].xd[a] = partial<Vec4>(lattice, get_x, pt, a);
        ds.jets[pt].ed[a] = partial<Mat4>(lattice, get_I, pt, a);
      }
    }
    return ds;
  }
};

struct VirtualWork {
  double bulk = 0.0;
  double boundary = 0.0;
  double direct = 0.0;
};

/// Splits the integral of phi(j^1 dpsi) into the Euler-Lagrange bulk term
/// (F - D_a sigma^a) dxi + (M-bar - D_a mu-bar^a) dI and the boundary flux of
/// Pi^a = sigma^a dxi + mu-bar^a dI; also returns the direct integral.
inline VirtualWork total_virtual_work(const DynamicalState& phi, const KinematicalState& s, const ZeroJetVariation& dpsi) {
  require_same_lattice(phi.lattice, s.lattice, "total_virtual_work");
  require_same_lattice(dpsi.lattice, s.lattice, "total_virtual_work");
  const Lattice& lat = s.lattice;
  const int p = lat.dim();
  const auto bars = barred_moments(phi, s);
  const auto ds = dpsi.prolong();

  VirtualWork out;
  for (std::size_t pt = 0; pt < lat.size(); ++pt) {
    Vec4 r1 = phi.points[pt].F;
    Mat4 r2 = bars[pt].M;
    for (int a = 0; a < p; ++a) {
      r1 -= partial<Vec4>(lat, [&](std::size_t q) -> const Vec4& { return phi.points[q].sigma[a]; }, pt, a);
      r2 -= partial<Mat4>(lat, [&](std::size_t q) -> const Mat4& { return bars[q].mu[a]; }, pt, a);
    }
    const double w = trapezoid_weight(lat, pt);
    out.bulk += w * (r1.dot(dpsi.dxi[pt]) + frobenius(r2, dpsi.dI[pt] * eta()));
    out.direct += w * eulerian_pairing(phi.points[pt], bars[pt], ds.jets[pt], p);
  }
  for (int a = 0; a < p; ++a)
    for (std::size_t pt = 0; pt < lat.size(); ++pt) {
      const int i = lat.coord(pt, a);
      if (i != 0 && i != lat.shape(a) - 1) continue;
      const double flux = phi.points[pt].sigma[a].dot(dpsi.dxi[pt]) + frobenius(bars[pt].mu[a], dpsi.dI[pt] * eta());
      out.boundary += (i == 0 ? -1.0 : 1.0) * trapezoid_weight(lat, pt, a) * flux;
    }
  return out;
}

struct InvarianceResidual {
  double force = 0.0;
  double couple = 0.0;
};

inline InvarianceResidual poincare_invariance_residual(const DynamicalState& phi, const KinematicalState& s) {
  InvarianceResidual r;
  const auto bars = barred_moments(phi, s);
  for (std::size_t pt = 0; pt < bars.size(); ++pt) {
    r.force = std::max(r.force, max_abs(phi.points[pt].F));
    r.couple = std::max(r.couple, max_abs(bars[pt].M));
  }
  return r;
}

/// Fills M so that M-bar vanishes everywhere (F is set to zero as well).
inline DynamicalState make_poincare_invariant(DynamicalState phi, const KinematicalState& s) {
  require_same_lattice(phi.lattice, s.lattice, "make_poincare_invariant");
  for (std::size_t pt = 0; pt < phi.points.size(); ++pt) {
    phi.points[pt].F.setZero();
    phi.points[pt].M = body_couple_for(Mat4::Zero(), phi.points[pt], s.jets[pt], s.lattice.dim());
  }
  return phi;
}

struct ResidualFields {
  FormField<Vec4> r1;
  FormField<Mat4> r2;
};

enum class BalanceForm { General, PoincareInvariant };

/// General form:    r1 = F - D_a sigma^a,  r2 = M-bar - D_a mu-bar^a.
/// Invariant form:  r1 = D_a sigma^a,      r2 = D_a mu^a_[mu nu] + sigma^a_[mu x_nu]a,
/// with mu^a_{mu nu} = (mu_a (eta e)^T)_[mu nu] the couple stress without the sigma x term.
inline ResidualFields cosserat_residual(const DynamicalState& phi, const KinematicalState& s,
                                        BalanceForm form = BalanceForm::General, double integrability_tol = 1e-8) {
  require_same_lattice(phi.lattice, s.lattice, "cosserat_residual");
  const auto integ = is_integrable(s, integrability_tol);
  if (!integ.integrable)
    throw std::invalid_argument("cosserat_residual: state is not integrable (residual " +
                                std::to_string(integ.residual) + ")");
  const Lattice& lat = s.lattice;
  const int p = lat.dim();
  std::vector<BarredMoments> couple(lat.size());
  if (form == BalanceForm::General) {
    couple = barred_moments(phi, s);
  } else {
    for (std::size_t pt = 0; pt < lat.size(); ++pt)
      for (int a = 0; a < p; ++a) couple[pt].mu[a] = antisym(phi.points[pt].mu[a] * (eta() * s.jets[pt].e).transpose());
  }

  ResidualFields r{FormField<Vec4>(lat, 0), FormField<Mat4>(lat, 0)};
  for (std::size_t pt = 0; pt < lat.size(); ++pt) {
    Vec4 div_sigma = Vec4::Zero();
    Mat4 div_mu = Mat4::Zero();
    for (int a = 0; a < p; ++a) {
      div_sigma += partial<Vec4>(lat, [&](std::size_t q) -> const Vec4& { return phi.points[q].sigma[a]; }, pt, a);
      div_mu += partial<Mat4>(lat, [&](std::size_t q) -> const Mat4& { return couple[q].mu[a]; }, pt, a);
    }
    if (form == BalanceForm::General) {
      r.r1.at(pt, 0) = phi.points[pt].F - div_sigma;
      r.r2.at(pt, 0) = couple[pt].M - div_mu;
    } else {
      Mat4 spin = Mat4::Zero();
      for (int a = 0; a < p; ++a) spin += phi.points[pt].sigma[a] * (eta() * s.jets[pt].xd[a]).transpose();
      r.r1.at(pt, 0) = div_sigma;
      r.r2.at(pt, 0) = div_mu + antisym(spin);
    }
  }
  return r;
}

inline constexpr double kJacobianConditionLimit = 1e12;

/// Spacetime form of the invariant balance laws for p = 4:
///   r1_mu = d_nu sigma^nu_mu,  r2_{mu nu} = d_k mu^k_[mu nu] + sigma_[mu nu],
/// with sigma^nu_mu = x^nu_a sigma^a_mu, mu^k = x^k_a mu^a and d_nu = x~^a_nu D_a.
inline ResidualFields spatialize(const DynamicalState& phi, const KinematicalState& s) {
  require_same_lattice(phi.lattice, s.lattice, "spatialize");
  const Lattice& lat = s.lattice;
  if (lat.dim() != 4) throw std::invalid_argument("spatialize: needs a body of dimension 4");

  std::vector<Mat4> jac_inv(lat.size());
  std::vector<std::array<Vec4, 4>> sig(lat.size());
  std::vector<std::array<Mat4, 4>> cpl(lat.size());
  for (std::size_t pt = 0; pt < lat.size(); ++pt) {
    Mat4 X;
    for (int a = 0; a < 4; ++a) X.col(a) = s.jets[pt].xd[a];
    const Eigen::JacobiSVD<Mat4> svd(X);
    const auto sv = svd.singularValues();
    if (!(sv[3] > 0.0) || sv[0] / sv[3] > kJacobianConditionLimit)
      throw std::domain_error("spatialize: material Jacobian is singular or ill-conditioned");
    jac_inv[pt] = X.inverse();
    const DynamicalPoint& d = phi.points[pt];
    const Mat4 eta_e = eta() * s.jets[pt].e;
    std::array<Mat4, 4> mu_low;
    for (int a = 0; a < 4; ++a) mu_low[a] = antisym(d.mu[a] * eta_e.transpose());
    for (int nu = 0; nu < 4; ++nu) {
      sig[pt][nu].setZero();
      cpl[pt][nu].setZero();
      for (int a = 0; a < 4; ++a) {
        sig[pt][nu] += X(nu, a) * d.sigma[a];
        cpl[pt][nu] += X(nu, a) * mu_low[a];
      }
    }
  }

  ResidualFields r{FormField<Vec4>(lat, 0), FormField<Mat4>(lat, 0)};
  for (std::size_t pt = 0; pt < lat.size(); ++pt) {
    Vec4 div_sigma = Vec4::Zero();
    Mat4 div_mu = Mat4::Zero();
    for (int nu = 0; nu < 4; ++nu)
      for (int a = 0; a < 4; ++a) {
        const double w = jac_inv[pt](a, nu);
        div_sigma += w * partial<Vec4>(lat, [&](std::size_t q) -> const Vec4& { return sig[q][nu]; }, pt, a);
        div_mu += w * partial<Mat4>(lat, [&](std::size_t q) -> const Mat4& { return cpl[q][nu]; }, pt, a);
      }
    // sigma_{mu nu} = sigma^k_mu eta_{k nu}
    Mat4 sigma_low;
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu) sigma_low(mu, nu) = sig[pt][nu][mu] * eta()(nu, nu);
    r.r1.at(pt, 0) = div_sigma;
    r.r2.at(pt, 0) = div_mu + antisym(sigma_low);
  }
  return r;
}

using JetLagrangian = std::function<double(const Jet&, int)>;

/// F = dL/dx, M = dL/de, sigma^a = dL/dx_a, mu^a = dL/de_a by central
/// differences in jet space with step rel_step * max(1, |coordinate|).
inline DynamicalState phi_from_lagrangian(const JetLagrangian& L, const KinematicalState& s, double rel_step = 1e-6) {
  const int p = s.lattice.dim();
  DynamicalState phi(s.lattice);
  for (std::size_t pt = 0; pt < s.jets.size(); ++pt) {
    Jet j = s.jets[pt];
    auto d = [&](double& slot) {
      const double saved = slot;
      const double h = rel_step * std::max(1.0, std::abs(saved));
      slot = saved + h;
      const double up = L(j, p);
      slot = saved - h;
      const double down = L(j, p);
      slot = saved;
      return (up - down) / (2 * h);
    };
    DynamicalPoint& out = phi.points[pt];
    for (int mu = 0; mu < 4; ++mu) {
      out.F[mu] = d(j.x[mu]);
      for (int nu = 0; nu < 4; ++nu) out.M(mu, nu) = d(j.e(mu, nu));
      for (int a = 0; a < p; ++a) {
        out.sigma[a][mu] = d(j.xd[a][mu]);
        for (int nu = 0; nu < 4; ++nu) out.mu[a](mu, nu) = d(j.ed[a](mu, nu));
      }
    }
  }
  return phi;
}

}  // namespace cosserat
