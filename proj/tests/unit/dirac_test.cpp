#include <gtest/gtest.h>

#include <random>

#include "cosserat/algebra.hpp"
#include "cosserat/dirac.hpp"
#include "cosserat/sampling.hpp"

using namespace cosserat;
using namespace cosserat::dirac;

namespace {

// Hand-written Dirac matrices, entry by entry.
std::array<CMat4, 4> oracle_gammas() {
  const Complex i(0, 1);
  std::array<CMat4, 4> g;
  g[0] << 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1, 0, 0, 0, 0, -1;
  g[1] << 0, 0, 0, 1, 0, 0, 1, 0, 0, -1, 0, 0, -1, 0, 0, 0;
  g[2] << 0, 0, 0, -i, 0, 0, i, 0, 0, i, 0, 0, -i, 0, 0, 0;
  g[3] << 0, 0, 1, 0, 0, 0, 0, -1, -1, 0, 0, 0, 0, 1, 0, 0;
  return g;
}

Vec4 on_shell(double kappa, double p1, double p2, double p3) {
  return Vec4(std::sqrt(kappa * kappa + p1 * p1 + p2 * p2 + p3 * p3), p1, p2, p3);
}

PlaneWaveState random_wave(std::mt19937_64& rng, double kappa, Units units = {}) {
  std::normal_distribution<double> n(0.0, 0.8);
  auto w = make_plane_wave(on_shell(kappa, n(rng), n(rng), n(rng)), kappa, int(rng() % 2), rng() % 2 ? 1 : -1, units);
  w.w *= Complex(n(rng), n(rng));
  return w;
}

std::vector<Vec4> sample_events(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<Vec4> out;
  for (int k = 0; k < n; ++k) out.emplace_back(u(rng), u(rng), u(rng), u(rng));
  return out;
}

Complex bar_oracle(const Spinor& a, const CMat4& G, const Spinor& b) {
  const auto g = oracle_gammas();
  Complex s = 0;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) s += std::conj(a[r]) * (g[0] * G)(r, c) * b[c];
  return s;
}

}  // namespace

TEST(Gamma, MatchesHandWrittenDiracRepresentation) {
  const auto o = oracle_gammas();
  for (int m = 0; m < 4; ++m) EXPECT_EQ(gammas().upper[m], o[m]);
}

TEST(Gamma, CliffordAndHermiticity) {
  EXPECT_LE(gammas().clifford_defect(), 1e-14);
  EXPECT_LE(gammas().hermiticity_defect(), 1e-14);
  const CMat4 g5 = gammas().gamma5;
  EXPECT_LE((g5 * g5 - CMat4::Identity()).cwiseAbs().maxCoeff(), 1e-14);
  for (int m = 0; m < 4; ++m)
    EXPECT_LE((g5 * gammas().upper[m] + gammas().upper[m] * g5).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Gamma, SpinLiftIntertwinesLorentzAction) {
  Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const Mat4 w = random_lorentz_generator(rng);
    const CMat4 S = spin_lift(w);
    const Mat4 L = w.exp();
    for (int m = 0; m < 4; ++m) {
      CMat4 rhs = CMat4::Zero();
      for (int n = 0; n < 4; ++n) rhs += L(m, n) * gammas().upper[n];
      EXPECT_LE((S.inverse() * gammas().upper[m] * S - rhs).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(PlaneWave, RestFrameAmplitudes) {
  const auto up = make_plane_wave(Vec4(2, 0, 0, 0), 2.0, 0, 1);
  EXPECT_EQ(up.w, Spinor(1, 0, 0, 0));
  const auto dn = make_plane_wave(Vec4(2, 0, 0, 0), 2.0, 1, -1);
  EXPECT_EQ(dn.w.head<2>().norm(), 0.0);
  EXPECT_NEAR(dn.w.tail<2>().norm(), 1.0, 1e-15);
}

TEST(PlaneWave, AmplitudeSolvesMomentumSpaceEquation) {
  const auto g = oracle_gammas();
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const double kappa = 0.5 + 0.1 * trial;
    const auto s = random_wave(rng, kappa);
    CMat4 ps = g[0] * s.p[0];
    for (int i = 1; i < 4; ++i) ps -= g[i] * s.p[i];
    EXPECT_LE((ps * s.w - double(s.sign) * kappa * s.w).norm(), 1e-12 * std::max(1.0, s.w.norm()) * s.p[0]);
  }
}

TEST(PlaneWave, DiracResidualSmallOnShell) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const auto s = random_wave(rng, 1.3);
    for (const Vec4& x : sample_events(rng, 4)) EXPECT_LE(dirac_residual(s, x).max(), 1e-12 * s.p[0]);
  }
}

TEST(PlaneWave, PerturbedAmplitudeResidualIsLinear) {
  const double kappa = 1.1;
  auto s = make_plane_wave(on_shell(kappa, 0.4, -0.3, 0.2), kappa, 0, 1);
  const Spinor d(0.0, 0.0, 1.0, 0.5);
  const auto g = oracle_gammas();
  CMat4 ps = g[0] * s.p[0];
  for (int i = 1; i < 4; ++i) ps -= g[i] * s.p[i];
  for (double eps : {1e-3, 2e-3}) {
    auto t = s;
    t.w += eps * d;
    EXPECT_NEAR(dirac_residual(t, Vec4(0.1, 0.2, 0.3, 0.4)).equation, eps * ((ps - kappa * CMat4::Identity()) * d).norm(),
                1e-14);
  }
}

TEST(PlaneWave, MasslessNullMomentum) {
  const auto s = make_plane_wave(Vec4(1, 0.6, 0, 0.8), 0.0, 1, 1);
  EXPECT_LE(dirac_residual(s, Vec4(0.3, 1, -1, 2)).max(), 1e-12);
}

TEST(PlaneWave, Errors) {
  EXPECT_THROW(make_plane_wave(Vec4(1, 1, 0, 0), 1.0, 0, 1), std::invalid_argument);
  EXPECT_THROW(make_plane_wave(Vec4(-1, 0, 0, 0), 1.0, 0, 1), std::invalid_argument);
  EXPECT_THROW(make_plane_wave(Vec4(1, 0, 0, 0), 1.0, 2, 1), std::invalid_argument);
  auto a = make_plane_wave(Vec4(1, 0, 0, 0), 1.0, 0, 1);
  auto b = make_plane_wave(Vec4(2, 0, 0, 0), 2.0, 0, 1);
  EXPECT_THROW(SpinorField({a, b}), std::invalid_argument);
}

TEST(Current, RestFrameAndBilinearOracle) {
  const Units un{2.0, 0.5};
  const auto s = make_plane_wave(Vec4(1, 0, 0, 0), 1.0, 0, 1, un);
  const Vec4 j = current_j(s, Vec4(0.3, 0.1, 0, 0));
  EXPECT_LE(max_abs(Vec4(j - Vec4(un.hbar * un.c, 0, 0, 0))), 1e-15);

  std::mt19937_64 rng(3);
  const auto g = oracle_gammas();
  const auto w = random_wave(rng, 0.9, un);
  const Vec4 jw = current_j(w, Vec4::Zero());
  for (int m = 0; m < 4; ++m) EXPECT_NEAR(jw[m], un.hbar * un.c * bar_oracle(w.w, g[m], w.w).real(), 1e-12);
}

TEST(Current, TransformsCovariantly) {
  Rng rng(4);
  std::mt19937_64 r2(4);
  for (int trial = 0; trial < 10; ++trial) {
    auto s = random_wave(r2, 1.0);
    const Mat4 w = random_lorentz_generator(rng);
    auto t = s;
    t.w = spin_lift(w) * s.w;
    EXPECT_LE(max_abs(Vec4(current_j(t, Vec4::Zero()) - w.exp() * current_j(s, Vec4::Zero()))), 1e-11);
  }
  // spatial rotation about axis 3 by a quarter turn moves j^1 into j^2
  const auto s = make_plane_wave(on_shell(1.0, 0.7, 0, 0), 1.0, 0, 1);
  auto t = s;
  t.w = spin_lift(0.5 * M_PI * basis::J(3).w) * s.w;
  const Vec4 js = current_j(s, Vec4::Zero()), jt = current_j(t, Vec4::Zero());
  EXPECT_NEAR(jt[0], js[0], 1e-13);
  EXPECT_NEAR(std::hypot(jt[1], jt[2]), std::abs(js[1]), 1e-13);
  EXPECT_NEAR(jt[1], rotation(3, 0.5 * M_PI)(1, 1) * js[1], 1e-13);
  EXPECT_NEAR(jt[2], rotation(3, 0.5 * M_PI)(2, 1) * js[1], 1e-13);
}

TEST(DensityVelocity, Examples) {
  const auto dv = density_velocity(Vec4(1, 0, 0, 0));
  EXPECT_EQ(dv.rho, 1.0);
  EXPECT_EQ(dv.u, Vec4(1, 0, 0, 0));
  const Vec4 j(3, 1, -0.5, 0.2);
  const auto a = density_velocity(j), b = density_velocity(2.5 * j);
  EXPECT_NEAR(b.rho, 2.5 * a.rho, 1e-14);
  EXPECT_LE(max_abs(Vec4(a.u - b.u)), 1e-14);
  EXPECT_THROW(density_velocity(Vec4(1, 2, 0, 0)), std::domain_error);
  EXPECT_THROW(density_velocity(Vec4(1, 1, 0, 0)), std::domain_error);
}

TEST(DensityVelocity, PlaneWaveVelocityAlongMomentum) {
  const Units un{3.0, 0.7};
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const double kappa = 1.7;
    const auto s = random_wave(rng, kappa, un);
    const auto dv = density_velocity(current_j(s, Vec4::Zero()), un);
    EXPECT_LE(max_abs(Vec4(dv.u - un.c * s.p / kappa)), 1e-12);
    EXPECT_NEAR(minkowski_inner(dv.u, dv.u), un.c * un.c, 1e-10);
  }
}

TEST(EnergyMomentum, RestFrame) {
  const Units un{2.0, 0.5};
  const double kappa = 1.5;
  const auto s = make_plane_wave(Vec4(kappa, 0, 0, 0), kappa, 1, 1, un);
  const Mat4 T = energy_momentum(s, Vec4(1, 2, 3, 4));
  Mat4 expect = Mat4::Zero();
  expect(0, 0) = un.hbar * un.c * kappa;
  EXPECT_LE(max_abs(Mat4(T - expect)), 1e-14);
}

TEST(EnergyMomentum, PlaneWaveFormAndTrace) {
  std::mt19937_64 rng(6);
  const auto g = oracle_gammas();
  for (int trial = 0; trial < 20; ++trial) {
    const double kappa = 1.2;
    const auto s = random_wave(rng, kappa);
    const Mat4 T = energy_momentum(s, Vec4(0.5, -1, 0.2, 0.1));
    const Vec4 pl = lower(s.p);
    for (int m = 0; m < 4; ++m)
      for (int n = 0; n < 4; ++n) EXPECT_NEAR(T(m, n), s.sign * bar_oracle(s.w, g[m], s.w).real() * pl[n], 1e-12);
    EXPECT_NEAR(T.trace(), kappa * bar_oracle(s.w, CMat4::Identity(), s.w).real(), 1e-12);
  }
}

TEST(EnergyMomentum, AntisymmetricPartFromLoweredGammas) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const SpinorField f({random_wave(rng, 0.8), random_wave(rng, 0.8), random_wave(rng, 0.8)});
    for (const Vec4& x : sample_events(rng, 4)) {
      const Mat4 Tl = eta() * energy_momentum(f, x);
      EXPECT_LE(max_abs(Mat4(energy_momentum_antisym(f, x) - 0.5 * (Tl - Tl.transpose()))), 1e-12);
    }
  }
}

TEST(SpinTensor, RestFrameSpinBlock) {
  const Units un{1.0, 1.0};
  const auto up = make_plane_wave(Vec4(1, 0, 0, 0), 1.0, 0, 1, un);
  const auto dn = make_plane_wave(Vec4(1, 0, 0, 0), 1.0, 1, 1, un);
  const Mat4 Su = spin_tensor(up, Vec4::Zero()).S, Sd = spin_tensor(dn, Vec4::Zero()).S;
  Mat4 block = Mat4::Zero();
  block(1, 2) = -0.25;
  block(2, 1) = 0.25;
  EXPECT_LE(max_abs(Mat4(Su - block)), 1e-15);
  EXPECT_LE(max_abs(Mat4(Sd + block)), 1e-15);
}

TEST(SpinTensor, MatchesIndexLoopOracle) {
  std::mt19937_64 rng(8);
  const auto g = oracle_gammas();
  std::array<CMat4, 4> gl = g;
  for (int i = 1; i < 4; ++i) gl[i] = -g[i];
  const auto s = random_wave(rng, 1.0);
  const Rank3 S = spin_tensor_full(s, Vec4(0.2, 0.1, 0, -0.3));
  const Spinor psi = s.w * std::exp(-Complex(0, 1) * double(s.sign) * lower(s.p).dot(Vec4(0.2, 0.1, 0, -0.3)));
  for (int l = 0; l < 4; ++l)
    for (int m = 0; m < 4; ++m)
      for (int n = 0; n < 4; ++n) {
        const Complex z = bar_oracle(psi, g[m] * g[l] * gl[n] - gl[n] * g[l] * g[m], psi);
        EXPECT_NEAR(S[l](m, n), (-Complex(0, 1) / 8.0 * z).real(), 1e-13);
      }
}

TEST(SpinTensor, ReducedFormAndConstraints) {
  std::mt19937_64 rng(9);
  const Units un{1.5, 0.8};
  for (int trial = 0; trial < 20; ++trial) {
    const SpinorField f = trial % 2 ? SpinorField(random_wave(rng, 1.4, un))
                                    : SpinorField({random_wave(rng, 1.4, un), random_wave(rng, 1.4, un)});
    for (const Vec4& x : sample_events(rng, 3)) {
      const auto st = spin_tensor(f, x);
      EXPECT_LE(st.reduced_form_defect, 1e-12);
      const Rank3 Sr = spin_tensor_reduced(f, x);
      EXPECT_LE(spin_form_defect(st.full, Sr), 1e-12);
      // lowered (lambda, mu) antisymmetry
      for (int n = 0; n < 4; ++n) {
        Mat4 low;
        for (int l = 0; l < 4; ++l)
          for (int m = 0; m < 4; ++m) low(l, m) = eta()(l, l) * eta()(m, m) * st.full[l](m, n);
        EXPECT_LE(max_abs(Mat4(low + low.transpose())), 1e-12);
      }
      const auto dv = density_velocity(current_j(f, x), un);
      EXPECT_NEAR(minkowski_inner(dv.u, dv.u), un.c * un.c, 1e-10);
      EXPECT_LE(max_abs(Vec4(st.S.transpose() * lower(dv.u))), 1e-10);
    }
  }
}

TEST(Conservation, SingleWaveExact) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 10; ++trial) {
    const auto s = random_wave(rng, 1.0);
    EXPECT_LE(conservation_report(s, sample_events(rng, 4)).max(), 1e-12);
    const Mat4 Tl = eta() * energy_momentum(s, Vec4::Zero());
    EXPECT_LE(max_abs(Mat4(Tl - Tl.transpose())), 1e-12);
  }
}

TEST(Conservation, TwoWaveSuperposition) {
  std::mt19937_64 rng(11);
  const SpinorField f({random_wave(rng, 1.3), random_wave(rng, 1.3)});
  EXPECT_LE(conservation_report(f, sample_events(rng, 16)).max(), 1e-10);
  // analytic derivatives against a fourth-order difference of the evaluated tensors
  const double h = 1e-3;
  for (const Vec4& x : sample_events(rng, 4)) {
    auto diff = [&](auto&& F, int m) -> Mat4 {
      Vec4 e = Vec4::Zero();
      e[m] = h;
      return (8.0 * (F(x + e) - F(x - e)) - (F(x + 2 * e) - F(x - 2 * e))) / (12.0 * h);
    };
    Mat4 divS = Mat4::Zero();
    Vec4 divT = Vec4::Zero();
    for (int m = 0; m < 4; ++m) {
      const Mat4 dT = diff([&](const Vec4& y) { return Mat4(energy_momentum(f, y)); }, m);
      divT += dT.row(m).transpose();
      for (int l = 0; l < 4; ++l)
        divS.row(l) += diff([&](const Vec4& y) { return Mat4(spin_tensor_full(f, y)[l]); }, m).row(m);
    }
    const Mat4 Tl = eta() * energy_momentum(f, x);
    EXPECT_LE(max_abs(divT), 1e-8);
    EXPECT_LE(max_abs(Mat4(divS - 0.5 * eta() * (Tl - Tl.transpose()))), 1e-8);
    EXPECT_GT(max_abs(Mat4(Tl - Tl.transpose())), 1e-3);
  }
}

TEST(Conservation, OffShellAmplitudeReported) {
  auto s = make_plane_wave(on_shell(1.0, 0.5, 0.2, -0.4), 1.0, 0, 1);
  const std::vector<Vec4> pts{Vec4::Zero()};
  std::array<double, 2> r{};
  for (int k = 0; k < 2; ++k) {
    auto t = s;
    t.w += (k ? 2e-3 : 1e-3) * Spinor(0, 0, 1, 0);
    r[k] = conservation_report(t, pts).spin;
  }
  EXPECT_GT(r[0], 1e-5);
  EXPECT_NEAR(r[1] / r[0], 2.0, 0.01);
}

TEST(Takabayasi, RestFrame) {
  const Units un{2.0, 0.5};
  const double kappa = 1.2;
  const auto s = make_plane_wave(Vec4(kappa, 0, 0, 0), kappa, 0, 1, un);
  const auto t = takabayasi(s, Vec4::Zero());
  EXPECT_EQ(t.omega_hat, 0.0);
  EXPECT_EQ(t.angle, 0.0);
  EXPECT_NEAR(t.mu0, un.hbar * kappa / un.c * t.rho, 1e-14);
  EXPECT_LE(max_abs(t.q), 1e-15);
  EXPECT_LE(max_abs(t.theta), 1e-15);
  const auto n = takabayasi(make_plane_wave(Vec4(kappa, 0, 0, 0), kappa, 0, -1, un), Vec4::Zero());
  EXPECT_NEAR(std::abs(n.angle), M_PI, 1e-15);
}

TEST(Takabayasi, IdentityAndDuality) {
  std::mt19937_64 rng(12);
  const Units un{1.3, 0.6};
  for (int trial = 0; trial < 30; ++trial) {
    const SpinorField f({random_wave(rng, 0.9, un), random_wave(rng, 0.9, un)});
    for (const Vec4& x : sample_events(rng, 2)) {
      const auto t = takabayasi(f, x);
      EXPECT_NEAR(t.omega * t.omega + t.omega_hat * t.omega_hat, t.rho * t.rho, 1e-10 * std::max(1.0, t.rho * t.rho));
      EXPECT_NEAR(t.omega, t.rho * std::cos(t.angle), 1e-12 * std::max(1.0, t.rho));
      EXPECT_NEAR(t.omega_hat, t.rho * std::sin(t.angle), 1e-12 * std::max(1.0, t.rho));
      EXPECT_LE(max_abs(Mat4(dual_of(t.u, t.S_hat) - t.S_low)), 1e-12 * std::max(1.0, max_abs(t.S_low)));
      EXPECT_NEAR(minkowski_inner(t.u, t.S_hat), 0.0, 1e-12);
      EXPECT_NEAR(minkowski_inner(t.q, t.u), 0.0, 1e-10 * std::max(1.0, max_abs(t.q)));
    }
  }
}

TEST(Takabayasi, DualityOracleByEpsilonLoops) {
  const Vec4 u(1, 0, 0, 0), sh(0, 0, 0, 2);
  const Mat4 S = dual_of(u, sh);
  EXPECT_EQ(S(1, 2), 1.0);
  EXPECT_EQ(S(2, 1), -1.0);
  EXPECT_EQ(max_abs(S) , 1.0);
  EXPECT_LE(max_abs(Vec4(undual(u, S, 1.0) - sh)), 1e-15);
}

TEST(Takabayasi, SuperpositionTraceAtUnitSpeed) {
  std::mt19937_64 rng(13);
  const SpinorField f({random_wave(rng, 1.1), random_wave(rng, 1.1)});
  const auto t = takabayasi(f, Vec4(0.2, 0.4, -0.1, 0.3));
  EXPECT_GT(std::abs(t.theta.trace()), 1e-3);
  EXPECT_NEAR(t.theta.trace(), t.theta_trace_rhs, 1e-10);
  EXPECT_NEAR(t.pressure, t.theta.trace() / 3.0, 1e-15);
}
