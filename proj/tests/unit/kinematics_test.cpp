#include <gtest/gtest.h>

#include <sstream>

#include "cosserat/grid_io.hpp"
#include "cosserat/manufactured.hpp"
#include "cosserat/sampling.hpp"

using namespace cosserat;

namespace {

template <class Section>
Section random_section(const Lattice& lat, Rng& rng) {
  Section s(lat);
  for (Jet& j : s.jets) {
    j.x = random_vec4(rng);
    j.e = random_lorentz(rng);
    for (int a = 0; a < lat.dim(); ++a) {
      j.xd[a] = random_vec4(rng);
      j.ed[a] = random_lorentz_generator(rng) * j.e;
    }
  }
  return s;
}

double jet_distance(const JetSection& l, const JetSection& r) {
  double d = 0.0;
  for (std::size_t pt = 0; pt < l.jets.size(); ++pt) {
    d = std::max({d, max_abs(l.jets[pt].x - r.jets[pt].x), max_abs(l.jets[pt].e - r.jets[pt].e)});
    for (int a = 0; a < l.lattice.dim(); ++a)
      d = std::max({d, max_abs(l.jets[pt].xd[a] - r.jets[pt].xd[a]), max_abs(l.jets[pt].ed[a] - r.jets[pt].ed[a])});
  }
  return d;
}

AffineFrame smooth_object(const Point& r) {
  const Vec4 x(r[0] + 0.1 * r[1] * r[1], std::sin(r[0]), r[1] * r[0], 0.5 * std::cos(r[1]));
  return AffineFrame(x, rotation(3, r[0]) * boost(2, 0.3 * r[1]));
}

}  // namespace

TEST(Prolong, ConstantObject) {
  const auto s = prolong(Lattice::cube(2, 5), [](const Point&) { return AffineFrame(Vec4(1, 2, 3, 4), boost(1, 0.2)); });
  for (const Jet& j : s.jets)
    for (int a = 0; a < 2; ++a) {
      EXPECT_LE(max_abs(j.xd[a]), 1e-14);
      EXPECT_LE(max_abs(j.ed[a]), 1e-14);
    }
  EXPECT_TRUE(is_integrable(s, 1e-12).integrable);
}

TEST(Prolong, StraightWorldline) {
  const Vec4 v0(1, 0.2, -0.1, 0.3);
  const auto s = prolong(Lattice::cube(1, 7), [&](const Point& r) { return AffineFrame(r[0] * v0, Mat4::Identity()); });
  for (const Jet& j : s.jets) {
    EXPECT_LE(max_abs(j.xd[0] - v0), 1e-12);
    EXPECT_EQ(max_abs(j.ed[0]), 0.0);
  }
}

TEST(Prolong, RotatingFrameDerivative) {
  double err[2];
  for (int i = 0; i < 2; ++i) {
    const auto lat = Lattice::cube(1, i ? 33 : 17);
    const auto s = prolong(lat, [](const Point& r) { return AffineFrame(Vec4::Zero(), exp(r[0] * basis::J(3)).L); });
    err[i] = 0.0;
    for (std::size_t pt = 0; pt < lat.size(); ++pt)
      if (lat.is_interior(pt))
        err[i] = std::max(err[i], max_abs(s.jets[pt].ed[0] - basis::J(3).w * s.jets[pt].e));
  }
  EXPECT_LT(err[1], 1e-3);
  EXPECT_NEAR(manufactured::convergence_order(err[0], err[1]), 2.0, 0.3);
}

TEST(Integrable, DetectsBrokenJets) {
  const auto lat = Lattice::cube(2, 9);
  auto s = prolong(lat, smooth_object);
  EXPECT_EQ(is_integrable(s, 1e-12).residual, 0.0);
  for (Jet& j : s.jets) j.xd[0].setZero();
  const auto rep = is_integrable(s, 1e-6);
  EXPECT_FALSE(rep.integrable);
  EXPECT_GT(rep.residual, 0.5);
}

TEST(Integrable, AnalyticJets) {
  const auto lat = Lattice::cube(1, 65);
  KinematicalState s(lat);
  for (std::size_t pt = 0; pt < lat.size(); ++pt) {
    const double t = lat.point(pt)[0];
    s.jets[pt].x = Vec4(t, t * t, 0, 0);
    s.jets[pt].xd[0] = Vec4(1, 2 * t, 0, 0);
  }
  const auto rep = is_integrable(s, 1e-12);
  EXPECT_TRUE(rep.integrable) << rep.residual;
}

TEST(Deform, IdentityLeavesStateUnchanged) {
  Rng rng(1);
  const auto lat = Lattice::cube(2, 4);
  const auto s0 = random_section<KinematicalState>(lat, rng);
  const DisplacementField id(lat);
  EXPECT_EQ(jet_distance(deform(id, s0), s0), 0.0);
}

TEST(Deform, MatchesIndexLoopOracle) {
  Rng rng(2);
  const auto lat = Lattice::cube(3, 3);
  const auto chi = random_section<DisplacementField>(lat, rng);
  const auto s0 = random_section<KinematicalState>(lat, rng);
  const auto s = deform(chi, s0);
  for (std::size_t pt = 0; pt < lat.size(); ++pt) {
    const Jet &c = chi.jets[pt], &j0 = s0.jets[pt], &j = s.jets[pt];
    for (int mu = 0; mu < 4; ++mu) {
      double x = c.x[mu];
      for (int nu = 0; nu < 4; ++nu) x += c.e(mu, nu) * j0.x[nu];
      EXPECT_NEAR(j.x[mu], x, 1e-12);
      for (int nu = 0; nu < 4; ++nu) {
        double e = 0.0;
        for (int k = 0; k < 4; ++k) e += c.e(mu, k) * j0.e(k, nu);
        EXPECT_NEAR(j.e(mu, nu), e, 1e-12);
      }
      for (int a = 0; a < 3; ++a) {
        double xa = c.xd[a][mu];
        for (int nu = 0; nu < 4; ++nu) xa += c.ed[a](mu, nu) * j0.x[nu] + c.e(mu, nu) * j0.xd[a][nu];
        EXPECT_NEAR(j.xd[a][mu], xa, 1e-12);
        for (int nu = 0; nu < 4; ++nu) {
          double ea = 0.0;
          for (int k = 0; k < 4; ++k) ea += c.ed[a](mu, k) * j0.e(k, nu) + c.e(mu, k) * j0.ed[a](k, nu);
          EXPECT_NEAR(j.ed[a](mu, nu), ea, 1e-12);
        }
      }
    }
  }
}

TEST(Deform, GroupActionLaw) {
  Rng rng(3);
  for (int p = 1; p <= 4; ++p) {
    const auto lat = Lattice::cube(p, 3);
    const auto chi1 = random_section<DisplacementField>(lat, rng);
    const auto chi2 = random_section<DisplacementField>(lat, rng);
    const auto s0 = random_section<KinematicalState>(lat, rng);
    EXPECT_LE(jet_distance(deform(chi2, deform(chi1, s0)), deform(compose(chi2, chi1), s0)), 1e-10);
  }
}

TEST(Deform, RigidMotionPreservesIntegrability) {
  Rng rng(4);
  const auto lat = Lattice::cube(2, 17);
  auto s0 = prolong(lat, smooth_object);
  for (Jet& j : s0.jets) j.xd[1] += Vec4::Constant(1e-7);
  const double r0 = is_integrable(s0, 1.0).residual;
  for (int i = 0; i < 10; ++i) {
    const auto g = random_poincare(rng, 0.5);
    const auto chi = prolong_displacement(lat, [&](const Point&) { return g; });
    const auto s = deform(chi, s0);
    s.validate();
    EXPECT_LE(is_integrable(s, 1.0).residual, 4 * r0 + 1e-14);
  }
}

TEST(Deform, LatticeMismatchThrows) {
  EXPECT_THROW(deform(DisplacementField(Lattice::cube(2, 3)), KinematicalState(Lattice::cube(2, 4))),
               std::invalid_argument);
  EXPECT_THROW(eulerian_deform(DisplacementField(Lattice::cube(1, 3)), KinematicalState(Lattice::cube(2, 3))),
               std::invalid_argument);
}

TEST(Eulerian, TrivialCases) {
  const auto lat = Lattice::cube(2, 5);
  Rng rng(5);
  const auto g = random_poincare(rng);
  EXPECT_LE(max_norm(eulerian_of(prolong_displacement(lat, [&](const Point&) { return g; }))), 1e-13);
  DisplacementField tr(lat);
  for (Jet& j : tr.jets) {
    j.x = random_vec4(rng);
    j.xd[0] = random_vec4(rng);
    j.xd[1] = random_vec4(rng);
  }
  const auto E = eulerian_of(tr);
  for (std::size_t pt = 0; pt < lat.size(); ++pt)
    for (int a = 0; a < 2; ++a) {
      EXPECT_EQ(E.at(pt, a).v, tr.jets[pt].xd[a]);
      EXPECT_EQ(max_abs(E.at(pt, a).w), 0.0);
    }
}

TEST(Eulerian, BoostGenerator) {
  const auto lat = Lattice::cube(1, 9);
  DisplacementField chi(lat);
  for (std::size_t pt = 0; pt < lat.size(); ++pt) {
    const double t = lat.point(pt)[0];
    chi.jets[pt].e = boost(1, t);
    chi.jets[pt].ed[0] = basis::K(1).w * boost(1, t);
  }
  const auto E = eulerian_of(chi);
  for (std::size_t pt = 0; pt < lat.size(); ++pt) EXPECT_LE(max_abs(E.at(pt, 0).w - basis::K(1).w), 1e-13);
}

TEST(Eulerian, AgreesWithNablaForDifferencedJets) {
  for (const auto& g : manufactured::displacement_fields()) {
    const auto lat = Lattice::cube(2, 17);
    const auto chi = prolong_displacement(lat, g);
    const auto diff = eulerian_of(chi) - nabla_group(GroupField::sample(lat, g));
    EXPECT_LE(max_norm(diff), 1e-13);
  }
}

TEST(Eulerian, DeformMatchesLagrangian) {
  Rng rng(6);
  for (int p = 1; p <= 4; ++p) {
    const auto lat = Lattice::cube(p, 3);
    const auto chi = random_section<DisplacementField>(lat, rng);
    const auto s0 = random_section<KinematicalState>(lat, rng);
    EXPECT_LE(jet_distance(eulerian_deform(chi, s0), deform(chi, s0)), 1e-12);
    EXPECT_LE(jet_distance(eulerian_deform(DisplacementField(lat), s0), s0), 0.0);
  }
}

TEST(Eulerian, PureTranslationJetShiftsStateJets) {
  Rng rng(7);
  const auto lat = Lattice::cube(2, 3);
  const auto s0 = random_section<KinematicalState>(lat, rng);
  DisplacementField chi(lat);
  for (Jet& j : chi.jets) j.xd[1] = Vec4(0.5, -1, 2, 0);
  const auto s = eulerian_deform(chi, s0);
  for (std::size_t pt = 0; pt < lat.size(); ++pt) {
    EXPECT_LE(max_abs(s.jets[pt].xd[1] - s0.jets[pt].xd[1] - Vec4(0.5, -1, 2, 0)), 1e-15);
    EXPECT_EQ(s.jets[pt].xd[0], s0.jets[pt].xd[0]);
  }
}

TEST(GridIO, FormRoundTrip) {
  const auto lat = Lattice(3, {3, 4, 5, 0}, {0.1, 0.2, 1.0 / 3.0, 0}, {-1, 0, 0.5, 0});
  const auto E = manufactured::sample_smooth_one_form(lat);
  std::stringstream ss;
  write_form(ss, E);
  const auto back = read_form<AlgebraElement>(ss);
  EXPECT_TRUE(back.lattice() == lat);
  EXPECT_EQ(max_norm(back - E), 0.0);

  std::stringstream bad(ss.str());
  EXPECT_THROW(read_form<Vec4>(bad), std::runtime_error);
}

TEST(GridIO, StateRoundTrip) {
  Rng rng(8);
  const auto lat = Lattice::cube(2, 3);
  const auto s = random_section<KinematicalState>(lat, rng);
  std::stringstream ss;
  write_state(ss, s);
  EXPECT_NE(ss.str().find("kind state"), std::string::npos);
  const auto back = read_state(ss);
  EXPECT_EQ(jet_distance(back, s), 0.0);
  std::stringstream again(ss.str());
  EXPECT_THROW(read_displacement(again), std::runtime_error);
}
