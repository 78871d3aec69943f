#include <gtest/gtest.h>

#include "oracle.hpp"
#include "riemprod/connection.hpp"

using namespace riemprod;

namespace {

Vector basis(std::size_t dim, std::size_t i) {
  Vector v(dim);
  v(i) = 1.0;
  return v;
}

struct Instance {
  PointStructure ps;
  LeeData lee;
  NablaThetaData h;
  Tensor04 rprime;
  ConnectionParams cp;
};

Instance instance(int n, int eps, std::uint64_t seed, bool zero_h = false) {
  Instance in;
  in.ps = generate_structure(n, eps, seed);
  in.lee = generate_theta(in.ps, seed + 1);
  in.h = zero_h ? NablaThetaData{Tensor02(in.ps.dim())} : generate_H(in.ps, seed + 2);
  in.rprime = random_p_tensor(in.ps, seed + 3).L;
  Rng rng(seed + 4);
  in.cp = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
  return in;
}

}  // namespace

TEST(Params, Presets) {
  EXPECT_DOUBLE_EQ(ConnectionParams::canonical(2).mu, -0.125);
  EXPECT_DOUBLE_EQ(ConnectionParams::canonical(3).lambda, 0.0);
  EXPECT_DOUBLE_EQ(ConnectionParams::d_connection().mu, 0.0);
}

TEST(Torsion, AdaptedExample) {
  const PointStructure ps = adapted_structure(2, 1);
  const LeeData lee = lee_from_omega(ps, basis(4, 0));
  const Tensor03 t = torsion(ps, lee, ConnectionParams::d_connection());
  EXPECT_DOUBLE_EQ(t(0, 1, 1), 0.25);
  const Tensor03 q = q_from_torsion(t);
  EXPECT_DOUBLE_EQ(q(1, 0, 1), t(1, 1, 0));
  EXPECT_DOUBLE_EQ(q(1, 0, 1), 0.0);
}

TEST(Torsion, ZeroThetaGivesZero) {
  const PointStructure ps = generate_structure(3, 1, 2);
  const LeeData lee = lee_from_omega(ps, Vector(6));
  EXPECT_EQ(torsion(ps, lee, {0.3, -0.7}).max_abs(), 0.0);
  EXPECT_EQ(q_from_torsion(Tensor03(6)).max_abs(), 0.0);
}

TEST(Torsion, AntisymmetricAndMatchesOracle) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Instance in = instance(2 + static_cast<int>(seed % 3), seed % 2 ? 1 : -1, seed * 10);
    const Tensor03 t = torsion(in.ps, in.lee, in.cp);
    const Tensor03 swapped =
        Tensor03::generate(t.dim(), [&](std::size_t x, std::size_t y, std::size_t z) { return -t(y, x, z); });
    EXPECT_TRUE(residual(t, swapped, 1e-14).pass);
    EXPECT_TRUE(residual(t, oracle::torsion(in.ps, in.lee.theta, in.cp.lambda, in.cp.mu), 1e-13).pass);
  }
}

TEST(Torsion, CyclicPermutationHasOrderThree) {
  const Instance in = instance(2, 1, 5);
  const Tensor03 t = torsion(in.ps, in.lee, in.cp);
  EXPECT_EQ(q_from_torsion(q_from_torsion(q_from_torsion(t))), t);
}

TEST(PQ, CanonicalWorkedExample) {
  const PointStructure ps = adapted_structure(2, -1);
  const LeeData lee = lee_from_omega(ps, basis(4, 2));
  const PQData d = pq_vectors(ps, lee, ConnectionParams::canonical(2));
  EXPECT_DOUBLE_EQ(d.p(2), -0.125);
  EXPECT_DOUBLE_EQ(d.q(2), -0.125);
  EXPECT_DOUBLE_EQ(d.gpp, 1.0 / 64.0);
  EXPECT_DOUBLE_EQ(d.gqq, 1.0 / 64.0);
  EXPECT_DOUBLE_EQ(-ps.epsilon * d.gpq, 1.0 / 64.0);
}

TEST(PQ, DPresetExample) {
  const PointStructure ps = adapted_structure(2, -1);
  const LeeData lee = lee_from_omega(ps, basis(4, 2));
  const PQData d = pq_vectors(ps, lee, ConnectionParams::d_connection());
  EXPECT_DOUBLE_EQ(d.p(2), -0.25);
  EXPECT_EQ(d.q.max_abs(), 0.0);
  const STensors s = s_tensors(ps, lee, ConnectionParams::d_connection(), {Tensor02(4)});
  EXPECT_EQ(s.s_prime.max_abs(), 0.0);
  EXPECT_EQ(s.s_double.max_abs(), 0.0);
}

TEST(PQ, SpecializedRejectsMixedTheta) {
  const PointStructure ps = adapted_structure(2, 1);
  const LeeData lee = lee_from_omega(ps, basis(4, 2));
  EXPECT_THROW(pq_vectors(ps, lee, {}, PQMode::specialized), InvalidInput);
  EXPECT_NO_THROW(pq_vectors(ps, lee, {}, PQMode::general));
}

TEST(PQ, GeneralAndSpecializedAgree) {
  for (int n = 2; n <= 5; ++n)
    for (int eps : {1, -1})
      for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Instance in = instance(n, eps, seed * 31 + n);
        const PQData a = pq_vectors(in.ps, in.lee, in.cp, PQMode::general);
        const PQData b = pq_vectors(in.ps, in.lee, in.cp, PQMode::specialized);
        ASSERT_TRUE(residual(a.p, b.p, 1e-12).pass);
        ASSERT_TRUE(residual(a.q, b.q, 1e-12).pass);
        const STensors sa = s_tensors(in.ps, in.lee, in.cp, in.h, PQMode::general);
        const STensors sb = s_tensors(in.ps, in.lee, in.cp, in.h, PQMode::specialized);
        ASSERT_TRUE(residual(sa.s_prime, sb.s_prime, 1e-12).pass);
        ASSERT_TRUE(residual(sa.s_double, sb.s_double, 1e-12).pass);
        ASSERT_TRUE(residual(sa.s, sb.s, 1e-12).pass);
      }
}

TEST(S, CanonicalCancellation) {
  for (int eps : {1, -1}) {
    const Instance in = instance(3, eps, 8);
    const auto cp = ConnectionParams::canonical(3);
    const STensors s = s_tensors(in.ps, in.lee, cp, in.h);
    const double k = in.lee.theta_omega / (32.0 * 9.0);
    EXPECT_TRUE(residual(s.s, k * (in.ps.g - double(eps) * in.ps.g_tilde), 1e-12).pass);
  }
}

TEST(S, ParallelTorsionForms) {
  const Instance in = instance(3, -1, 12, true);
  const STensors s = s_tensors(in.ps, in.lee, in.cp, in.h);
  const double b = (in.cp.mu + in.ps.epsilon * in.cp.lambda) / 6.0;
  const Tensor02 tt = Tensor02::generate(6, [&](std::size_t i, std::size_t j) { return in.lee.theta(i) * in.lee.theta(j); });
  EXPECT_TRUE(residual(s.s_prime, -b * tt, 1e-14).pass);
  EXPECT_TRUE(residual(s.s_double, b * tt, 1e-14).pass);
  EXPECT_LT((s.s_prime + s.s_double).max_abs(), 1e-15);
}

TEST(KFromR, Examples) {
  const PointStructure ps = generate_structure(3, 1, 13);
  const PiTensors pi = pi_tensors(ps);
  EXPECT_TRUE(residual(k_from_r(pi.pi1, ps), 0.5 * (pi.pi1 + pi.pi2), 1e-12).pass);
  EXPECT_TRUE(residual(k_from_r(pi.pi3, ps), pi.pi3, 1e-12).pass);
  const Tensor04 l = random_p_tensor(ps, 14).L;
  EXPECT_TRUE(residual(k_from_r(l, ps), l, 1e-12).pass);
  Tensor04 bad = l;
  bad(0, 1, 2, 3) += 1.0;
  EXPECT_THROW(k_from_r(bad, ps), InvalidInput);
}

TEST(RFromRPrime, TrivialAndDPreset) {
  const Instance in = instance(3, 1, 20, true);
  const LeeData zero = lee_from_omega(in.ps, Vector(6));
  EXPECT_TRUE(residual(r_from_rprime(in.rprime, in.ps, zero, in.cp, in.h), in.rprime, 1e-14).pass);
  EXPECT_TRUE(residual(k_from_rprime(in.rprime, in.ps, zero, in.cp, in.h), in.rprime, 1e-14).pass);
  const Tensor04 r = r_from_rprime(in.rprime, in.ps, in.lee, ConnectionParams::d_connection(), in.h);
  EXPECT_TRUE(residual(r, in.rprime - (in.lee.theta_omega / 36.0) * pi_tensors(in.ps).pi1, 1e-12).pass);
}

TEST(RFromRPrime, RejectsNonPTensor) {
  const Instance in = instance(2, 1, 3);
  EXPECT_THROW(r_from_rprime(pi_tensors(in.ps).pi1, in.ps, in.lee, in.cp, in.h), InvalidInput);
  EXPECT_THROW(k_from_rprime(pi_tensors(in.ps).pi1, in.ps, in.lee, in.cp, in.h), InvalidInput);
  Tensor02 h = in.h.H;
  h(0, 1) += 0.5;
  EXPECT_THROW(k_from_rprime(in.rprime, in.ps, in.lee, in.cp, {h}), InvalidInput);
}

TEST(RFromRPrime, MatchesGeneralFormOracleAndIsCurvatureLike) {
  for (int n = 2; n <= 4; ++n)
    for (int eps : {1, -1}) {
      const Instance in = instance(n, eps, 40 + n);
      const Tensor04 r = r_from_rprime(in.rprime, in.ps, in.lee, in.cp, in.h);
      const Tensor04 ref = oracle::r_of_rprime(in.rprime, in.ps, in.lee.theta, in.cp.lambda, in.cp.mu, in.h.H);
      EXPECT_TRUE(residual(r, ref, 1e-12).pass);
      EXPECT_TRUE(is_curvature_like(r, 1e-10).pass);
    }
}

TEST(KFromRPrime, TheoremLoopAndCanonicalForm) {
  for (int n = 2; n <= 5; ++n)
    for (int eps : {1, -1}) {
      const Instance in = instance(n, eps, 60 + n);
      const Tensor04 k = k_from_rprime(in.rprime, in.ps, in.lee, in.cp, in.h);
      EXPECT_TRUE(is_p_tensor(k, in.ps, 1e-9).pass);
      const Tensor04 ref =
          oracle::k_of_r(oracle::r_of_rprime(in.rprime, in.ps, in.lee.theta, in.cp.lambda, in.cp.mu, in.h.H), in.ps);
      EXPECT_TRUE(residual(k, ref, 1e-9).pass);

      const auto cp = ConnectionParams::canonical(n);
      const PiTensors pi = pi_tensors(in.ps);
      const Tensor04 kc = k_from_rprime(in.rprime, in.ps, in.lee, cp, in.h);
      const double c = in.lee.theta_omega / (16.0 * n * n);
      EXPECT_TRUE(residual(kc, in.rprime - c * (pi.pi1 + pi.pi2 - double(eps) * pi.pi3), 1e-9).pass);
    }
}

TEST(KFromRPrime, ParallelTorsionPi3SignIsMinus) {
  const Instance in = instance(3, 1, 90, true);
  const PQData pq = pq_vectors(in.ps, in.lee, in.cp);
  const PiTensors pi = pi_tensors(in.ps);
  const Tensor04 k = k_from_rprime(in.rprime, in.ps, in.lee, in.cp, in.h);
  const Tensor04 base = in.rprime - (0.5 * (pq.gpp + pq.gqq)) * (pi.pi1 + pi.pi2);
  EXPECT_TRUE(residual(k, base - pq.gpq * pi.pi3, 1e-9).pass);
  EXPECT_GT(std::abs(pq.gpq), 1e-3);
  EXPECT_FALSE(residual(k, base + pq.gpq * pi.pi3, 1e-9).pass);
}
