#include <gtest/gtest.h>

#include "cosserat/sampling.hpp"

using namespace cosserat;

TEST(Poincare, IdentityIsNeutral) {
  Rng rng(1);
  const auto g = random_poincare(rng);
  EXPECT_EQ(distance(compose(PoincareElement::identity(), g), g), 0.0);
  EXPECT_EQ(distance(compose(g, PoincareElement::identity()), g), 0.0);
}

TEST(Poincare, TranslationsAdd) {
  const Vec4 a(1, 2, 3, 4), b(-0.5, 0.25, 8, 1);
  const auto g = compose(PoincareElement::translation(a), PoincareElement::translation(b));
  EXPECT_EQ(g.a, a + b);
  EXPECT_TRUE(g.L.isIdentity(0.0));
}

TEST(Poincare, ComposeMatchesBlockProduct) {
  Rng rng(2);
  for (int i = 0; i < 100; ++i) {
    const auto g = random_poincare(rng), h = random_poincare(rng);
    Mat5 G = Mat5::Zero(), H = Mat5::Zero();
    G(0, 0) = H(0, 0) = 1.0;
    for (int r = 0; r < 4; ++r) {
      G(r + 1, 0) = g.a[r];
      H(r + 1, 0) = h.a[r];
      for (int c = 0; c < 4; ++c) {
        G(r + 1, c + 1) = g.L(r, c);
        H(r + 1, c + 1) = h.L(r, c);
      }
    }
    Mat5 GH = Mat5::Zero();
    for (int r = 0; r < 5; ++r)
      for (int c = 0; c < 5; ++c)
        for (int k = 0; k < 5; ++k) GH(r, c) += G(r, k) * H(k, c);
    EXPECT_LT(max_abs(to_homogeneous(compose(g, h)) - GH), 1e-12);
    EXPECT_LT(max_abs(to_homogeneous(g) * to_homogeneous(h) - GH), 1e-12);
  }
}

TEST(Poincare, Associativity) {
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const auto g = random_poincare(rng), h = random_poincare(rng), k = random_poincare(rng);
    EXPECT_TRUE(g.is_isochronous());
    EXPECT_LT(distance(compose(compose(g, h), k), compose(g, compose(h, k))), 1e-10);
  }
}

TEST(Poincare, InverseRoundTrip) {
  EXPECT_EQ(distance(inverse(PoincareElement::identity()), PoincareElement::identity()), 0.0);
  const Vec4 a(1, -2, 3, 0.5);
  EXPECT_EQ(inverse(PoincareElement::translation(a)).a, -a);
  Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    const auto g = random_poincare(rng);
    EXPECT_LT(distance(compose(g, inverse(g)), PoincareElement::identity()), 1e-10);
    EXPECT_LT(distance(compose(inverse(g), g), PoincareElement::identity()), 1e-10);
  }
}

TEST(Poincare, HomogeneousForms) {
  EXPECT_TRUE(to_homogeneous(PoincareElement::identity()).isIdentity(0.0));
  const Vec4 a(1, 2, 3, 4);
  const Mat5 T = to_homogeneous(PoincareElement::translation(a));
  EXPECT_EQ(T.col(0), (Eigen::Matrix<double, 5, 1>() << 1, 1, 2, 3, 4).finished());
  EXPECT_EQ(T.rightCols(4), Mat5::Identity().rightCols(4));

  Rng rng(5);
  const auto g = random_poincare(rng);
  const Mat5 Gi = to_homogeneous(inverse(g));
  const Mat4 Lt = lorentz_adjoint(g.L);
  EXPECT_LT(max_abs(Gi.block<4, 1>(1, 0) + Lt * g.a), 1e-12);
  EXPECT_LT(max_abs(Gi.block<4, 4>(1, 1) - Lt), 1e-12);
  EXPECT_EQ(distance(from_homogeneous(to_homogeneous(g)), g), 0.0);
}

TEST(Frame, IdentityAndTranslation) {
  const AffineFrame f0;
  const auto f1 = act_on_frame(PoincareElement::identity(), f0);
  EXPECT_EQ(f1.origin(), f0.origin());
  EXPECT_EQ(f1.axes(), f0.axes());
  const Vec4 a(0.5, 1, -1, 2);
  const auto f2 = act_on_frame(PoincareElement::translation(a), f0);
  EXPECT_EQ(f2.origin(), a);
  EXPECT_TRUE(f2.axes().isIdentity(0.0));
}

TEST(Frame, RightActionLaw) {
  Rng rng(6);
  for (int i = 0; i < 200; ++i) {
    const AffineFrame f(random_vec4(rng), random_lorentz(rng));
    const auto g = random_poincare(rng), h = random_poincare(rng);
    const auto twice = act_on_frame(h, act_on_frame(g, f));
    const auto once = act_on_frame(compose(g, h), f);
    EXPECT_LT(max_abs(twice.origin() - once.origin()), 1e-10);
    EXPECT_LT(max_abs(twice.axes() - once.axes()), 1e-10);
    EXPECT_LT(lorentz_defect(once.axes()), kLorentzTol);
  }
}

TEST(Frame, RejectsNonOrthonormalAxes) {
  EXPECT_THROW(AffineFrame(Vec4::Zero(), 2.0 * Mat4::Identity()), std::invalid_argument);
}

TEST(Poincare, JsonRoundTrip) {
  Rng rng(8);
  const auto g = random_poincare(rng);
  const auto j = to_json(g);
  EXPECT_EQ(j.at("a").size(), 4u);
  EXPECT_EQ(j.at("L").size(), 16u);
  EXPECT_EQ(j.at("L")[1].get<double>(), g.L(0, 1));
  EXPECT_EQ(distance(poincare_from_json(j), g), 0.0);
}
