#include <gtest/gtest.h>

#include "riemprod/structure.hpp"

using namespace riemprod;

TEST(Structure, GeneratedPassesForAllSizesAndSigns) {
  for (int n = 2; n <= 6; ++n)
    for (int eps : {1, -1})
      for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const PointStructure ps = generate_structure(n, eps, seed);
        ASSERT_TRUE(validate_structure(ps, 1e-12).pass) << n << " " << eps << " " << seed;
        ASSERT_TRUE(validate_lee(ps, generate_theta(ps, seed), 1e-12).pass);
        ASSERT_TRUE(validate_H(ps, generate_H(ps, seed), 1e-12).pass);
      }
}

TEST(Structure, HundredSeedsAtNTwo) {
  for (std::uint64_t s = 0; s < 100; ++s) ASSERT_TRUE(validate_structure(generate_structure(2, 1, s)).pass);
}

TEST(Structure, Deterministic) {
  const auto a = generate_structure(3, -1, 17), b = generate_structure(3, -1, 17), c = generate_structure(3, -1, 18);
  EXPECT_EQ(a.g, b.g);
  EXPECT_EQ(a.P, b.P);
  EXPECT_NE(a.g, c.g);
}

TEST(Structure, FramesSpanEigenspaces) {
  const PointStructure ps = generate_structure(4, 1, 3);
  for (const auto& v : ps.frame_plus) EXPECT_TRUE(residual(apply(ps.P, v), v, 1e-12).pass);
  for (const auto& v : ps.frame_minus) EXPECT_TRUE(residual(apply(ps.P, v), -1.0 * v, 1e-12).pass);
}

TEST(Structure, AdaptedModelAccepted) {
  const PointStructure ps = adapted_structure(2, 1);
  EXPECT_TRUE(validate_structure(ps).pass);
  EXPECT_DOUBLE_EQ(ps.P(2, 2), -1.0);
}

TEST(Structure, RejectsBadInputs) {
  EXPECT_THROW(generate_structure(1, 1, 0), InvalidInput);
  EXPECT_THROW(generate_structure(2, 0, 0), InvalidInput);
  EXPECT_THROW(make_structure(2, 1, identity(4), identity(6)), InvalidInput);
}

TEST(Structure, TraceViolationFails) {
  Tensor02 P = identity(4);
  P(3, 3) = -1.0;
  const PointStructure ps = make_structure(2, 1, identity(4), P);
  const auto r = structure_residuals(ps, 1e-12);
  EXPECT_FALSE(r.trace_free.pass);
  EXPECT_FALSE(validate_structure(ps).pass);
}

TEST(Structure, NonSymmetricMetricFails) {
  Tensor02 g = identity(4);
  g(0, 1) = 0.1;
  Tensor02 P = identity(4);
  P(2, 2) = P(3, 3) = -1.0;
  const PointStructure ps = make_structure(2, 1, g, P);
  EXPECT_FALSE(structure_residuals(ps, 1e-12).metric_symmetric.pass);
  EXPECT_FALSE(validate_structure(ps).pass);
}

TEST(Structure, PerturbedFrameBreaksCompatibility) {
  // P built from a non-orthogonal frame: P² = I and tr P = 0, yet g(P·,P·) ≠ g
  const PointStructure good = generate_structure(2, 1, 4);
  std::vector<Vector> frame = good.frame_plus;
  frame.insert(frame.end(), good.frame_minus.begin(), good.frame_minus.end());
  frame[2] += 0.3 * frame[0];
  Tensor02 basis(4), dual(4);
  for (std::size_t k = 0; k < 4; ++k)
    for (std::size_t i = 0; i < 4; ++i) basis(i, k) = frame[k](i);
  // P = B diag(1,1,-1,-1) B^{-1}, B^{-1} from B^T g B
  const Tensor02 gram = matmul(transpose(basis), matmul(good.g, basis));
  const Tensor02 binv = matmul(spd_inverse(gram), matmul(transpose(basis), good.g));
  Tensor02 d = identity(4);
  d(2, 2) = d(3, 3) = -1.0;
  const Tensor02 P = matmul(basis, matmul(d, binv));
  const PointStructure ps = make_structure(2, 1, good.g, P);
  const auto r = structure_residuals(ps, 1e-12);
  EXPECT_TRUE(r.involution.pass);
  EXPECT_TRUE(r.trace_free.pass);
  EXPECT_FALSE(r.compatibility.pass);
}

TEST(Lee, AdaptedExample) {
  const PointStructure ps = adapted_structure(2, -1);
  Vector om(4);
  om(2) = 1.0;
  const LeeData lee = lee_from_omega(ps, om);
  EXPECT_EQ(lee.theta, om);
  EXPECT_DOUBLE_EQ(lee.theta_omega, 1.0);
  EXPECT_TRUE(validate_lee(ps, lee).pass);
}

TEST(Lee, WrongEigenspaceFailsValidation) {
  const PointStructure ps = adapted_structure(2, -1);
  Vector om(4);
  om(0) = 1.0;
  EXPECT_FALSE(validate_lee(ps, lee_from_omega(ps, om)).pass);
}

TEST(Lee, ZeroThetaAndScale) {
  const PointStructure ps = generate_structure(3, 1, 2);
  const LeeData zero = lee_from_omega(ps, Vector(6));
  EXPECT_TRUE(validate_lee(ps, zero).pass);
  EXPECT_EQ(zero.theta_omega, 0.0);
  EXPECT_THROW(generate_theta(ps, 1, 0.0), InvalidInput);
  const LeeData tiny = generate_theta(ps, 1, 1e-8);
  EXPECT_LT(tiny.theta.max_abs(), 1e-6);
  EXPECT_TRUE(validate_lee(ps, tiny).pass);
}

TEST(Lee, ThetaOmegaIsNorm) {
  const PointStructure ps = generate_structure(3, -1, 8);
  const LeeData lee = generate_theta(ps, 9);
  EXPECT_GT(lee.theta_omega, 0.0);
  EXPECT_NEAR(lee.theta_omega, bilinear(ps.g, lee.omega, lee.omega), 1e-14);
  EXPECT_TRUE(residual(lee_from_theta(ps, lee.theta).omega, lee.omega, 1e-12).pass);
}

TEST(H, ProjectionOfMetric) {
  for (int eps : {1, -1}) {
    const PointStructure ps = generate_structure(3, eps, 6);
    const Tensor02 h = admissible_h(ps, ps.g);
    EXPECT_TRUE(residual(h, 0.5 * (ps.g + double(eps) * ps.g_tilde), 1e-12).pass);
  }
}

TEST(H, AntisymmetricInputVanishes) {
  const PointStructure ps = generate_structure(2, 1, 1);
  Rng rng(3);
  Tensor02 a(4);
  for (double& v : a.entries()) v = rng.uniform(-1, 1);
  EXPECT_LT(admissible_h(ps, a - transpose(a)).max_abs(), 1e-15);
}

TEST(H, Idempotent) {
  for (int eps : {1, -1}) {
    const PointStructure ps = generate_structure(4, eps, 11);
    const Tensor02 h = generate_H(ps, 12).H;
    EXPECT_TRUE(residual(admissible_h(ps, h), h, 1e-12).pass);
    EXPECT_GT(h.max_abs(), 1e-3);
  }
}
