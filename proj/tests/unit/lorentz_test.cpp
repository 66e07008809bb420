#include <gtest/gtest.h>

#include "cosserat/sampling.hpp"

using namespace cosserat;

namespace {

// Plain power series, independent of Eigen's matrix exponential.
Mat4 series_exp(const Mat4& x, int terms = 30) {
  Mat4 sum = Mat4::Identity();
  Mat4 term = Mat4::Identity();
  for (int n = 1; n < terms; ++n) {
    term = term * x / n;
    sum += term;
  }
  return sum;
}

}  // namespace

TEST(Minkowski, InnerProductSignature) {
  EXPECT_EQ(minkowski_inner(four_vector(1, 0, 0, 0), four_vector(1, 0, 0, 0)), 1.0);
  EXPECT_EQ(minkowski_inner(four_vector(0, 1, 0, 0), four_vector(0, 1, 0, 0)), -1.0);
  EXPECT_EQ(minkowski_inner(four_vector(1, 1, 0, 0), four_vector(1, 1, 0, 0)), 0.0);
  EXPECT_TRUE((eta() * eta()).isIdentity(0.0));
  EXPECT_TRUE(eta().isApprox(eta().transpose()));
}

TEST(Minkowski, RejectsNonFinite) {
  EXPECT_THROW(four_vector(1, NAN, 0, 0), std::invalid_argument);
  EXPECT_THROW(four_vector(INFINITY, 0, 0, 0), std::invalid_argument);
}

TEST(Minkowski, InnerIsSymmetric) {
  Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    const Vec4 v = random_vec4(rng), w = random_vec4(rng);
    EXPECT_DOUBLE_EQ(minkowski_inner(v, w), minkowski_inner(w, v));
  }
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify(four_vector(2, 0, 0, 1)), CausalClass::Timelike);
  EXPECT_EQ(classify(four_vector(0, 0, 3, 0)), CausalClass::Spacelike);
  EXPECT_EQ(classify(four_vector(1, 0, 0, 1)), CausalClass::Lightlike);
  EXPECT_THROW(classify(Vec4::Zero()), std::domain_error);
}

TEST(Classify, InvariantUnderProperLorentz) {
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const Mat4 L = random_lorentz(rng);
    const Vec4 v = random_vec4(rng);
    EXPECT_EQ(classify(v, 1e-9), classify(L * v, 1e-9));
  }
}

TEST(Adjoint, RotationBlockTransposes) {
  const Mat4 R = rotation(3, 0.7) * rotation(1, -0.3);
  Mat4 expected = Mat4::Identity();
  expected.block<3, 3>(1, 1) = R.block<3, 3>(1, 1).transpose();
  EXPECT_LT(max_abs(lorentz_adjoint(R) - expected), 1e-15);
  EXPECT_TRUE(lorentz_adjoint(Mat4::Identity()).isIdentity(0.0));
}

TEST(Adjoint, BoostInvertsRapidity) {
  Mat4 K1 = Mat4::Zero();
  K1(0, 1) = K1(1, 0) = 1.0;
  const double phi = 0.83;
  const Mat4 L = series_exp(phi * K1);
  EXPECT_LT(max_abs(lorentz_adjoint(L) - series_exp(-phi * K1)), 1e-13);
  EXPECT_LT(max_abs(L * lorentz_adjoint(L) - Mat4::Identity()), 1e-13);
  EXPECT_LT(max_abs(L - boost(1, phi)), 1e-13);
}

TEST(Adjoint, InvolutionAndInverse) {
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    const Mat4 A = random_mat4(rng);
    EXPECT_EQ(lorentz_adjoint(lorentz_adjoint(A)), A);
    const Mat4 L = random_lorentz(rng);
    EXPECT_LT(max_abs(L * lorentz_adjoint(L) - Mat4::Identity()), kLorentzTol);
  }
}

TEST(LorentzMatrix, PreservesInnerProduct) {
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const LorentzMatrix L(random_lorentz(rng));
    const Vec4 v = random_vec4(rng), w = random_vec4(rng);
    EXPECT_LE(std::abs(minkowski_inner(L.matrix() * v, L.matrix() * w) - minkowski_inner(v, w)),
              10 * kLorentzTol);
  }
}

TEST(LorentzMatrix, RejectsNonLorentz) {
  Mat4 m = Mat4::Identity();
  m(1, 2) = 0.1;
  EXPECT_THROW(LorentzMatrix{m}, std::invalid_argument);
  EXPECT_FALSE(is_lorentz(2.0 * Mat4::Identity()));
}

TEST(ProperIsochronous, Examples) {
  EXPECT_TRUE(is_proper_isochronous(Mat4::Identity()));
  const Mat4 pair = Vec4(1, -1, -1, 1).asDiagonal();
  EXPECT_NEAR(pair.determinant(), 1.0, 1e-15);
  EXPECT_TRUE(is_proper_isochronous(pair));
  EXPECT_FALSE(is_proper_isochronous(Vec4(-1, 1, 1, 1).asDiagonal()));
  EXPECT_FALSE(is_proper_isochronous(Vec4(1, -1, 1, 1).asDiagonal()));
  EXPECT_THROW(is_proper_isochronous(2.0 * Mat4::Identity()), std::invalid_argument);
}

TEST(Helpers, RotationTurnsE1IntoE2) {
  const Mat4 R = rotation(3, M_PI / 2);
  EXPECT_LT(max_abs(R * Vec4(0, 1, 0, 0) - Vec4(0, 0, 1, 0)), 1e-15);
  EXPECT_EQ(levi_civita(0, 1, 2, 3), 1);
  EXPECT_EQ(levi_civita(1, 0, 2, 3), -1);
  EXPECT_EQ(levi_civita(0, 0, 2, 3), 0);
}
