#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "compop/maps.hpp"

using namespace compop;

namespace {

CVector vec(std::initializer_list<Complex> v) {
  CVector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (Complex x : v) out(i++) = x;
  return out;
}

LinearFractionalMap disk_witness() {
  CMatrix A(1, 1);
  A << -1.0;
  return {A, vec({0.0}), vec({-1.0}), 2.0};
}

LinearFractionalMap ball_witness() {
  CMatrix A(2, 2);
  A << -1.0, 0.0, 0.0, 1.0;
  return {A, vec({0.0, 0.0}), vec({-1.0, 0.0}), 2.0};
}

LinearFractionalMap slice_witness() {
  CMatrix A(2, 2);
  A << -1.0, 0.0, 0.0, 0.5;
  return {A, vec({0.5, 0.0}), vec({-0.5, 0.0}), 1.0};
}

// Point with |z| < radius_cap from a seeded generator.
CVector random_interior(std::mt19937_64& gen, std::size_t N, double radius_cap = 0.95) {
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> ud(0.0, radius_cap);
  CVector z(static_cast<Eigen::Index>(N));
  for (auto& c : z) c = Complex(nd(gen), nd(gen));
  return z * (ud(gen) / z.norm());
}

CMatrix random_unitary(std::mt19937_64& gen, std::size_t N) {
  std::normal_distribution<double> nd;
  const auto n = static_cast<Eigen::Index>(N);
  CMatrix M(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) M(i, j) = Complex(nd(gen), nd(gen));
  Eigen::HouseholderQR<CMatrix> qr(M);
  return qr.householderQ() * CMatrix::Identity(n, n);
}

}  // namespace

TEST(LinearFractionalMap, ValidatesShape) {
  EXPECT_THROW(LinearFractionalMap(CMatrix::Identity(2, 2), vec({0.0}), vec({0.0, 0.0}), 1.0), argument_error);
  EXPECT_THROW(LinearFractionalMap(CMatrix::Identity(1, 1), vec({0.0}), vec({0.0}), 0.0), domain_error);
}

TEST(Evaluate, Examples) {
  const CVector z = vec({Complex(0.1, 0.2), Complex(-0.3, 0.1)});
  EXPECT_LT((evaluate(LinearFractionalMap::identity(2), z) - z).norm(), 1e-15);
  EXPECT_LT(evaluate(involution(vec({0.5, 0.0})), vec({0.5, 0.0})).norm(), 1e-15);
  EXPECT_NEAR(std::abs(evaluate(disk_witness(), vec({1.0}))(0) - Complex(-1.0)), 0.0, 1e-15);
  EXPECT_THROW(evaluate(disk_witness(), vec({2.0})), singularity_error);
}

TEST(Involution, Examples) {
  const auto phi0 = involution(vec({0.0, 0.0}));
  const CVector z = vec({0.3, Complex(0, 0.2)});
  EXPECT_LT((evaluate(phi0, z) + z).norm(), 1e-15);
  EXPECT_LT((evaluate(involution(vec({0.5, 0.0})), vec({0.0, 0.0})) - vec({0.5, 0.0})).norm(), 1e-15);
  EXPECT_NEAR(std::abs(evaluate(involution(vec({0.5})), vec({0.2}))(0) - 1.0 / 3.0), 0.0, 1e-15);
  EXPECT_THROW(involution(vec({1.0, 0.0})), domain_error);
}

TEST(Involution, IsInvolutiveAndSatisfiesKeyIdentity) {
  std::mt19937_64 gen(7);
  for (std::size_t N = 1; N <= 3; ++N) {
    for (int i = 0; i < 100; ++i) {
      const CVector a = random_interior(gen, N);
      const CVector z = random_interior(gen, N);
      const auto phi = involution(a);
      EXPECT_LT((evaluate(phi, a)).norm(), 1e-12);
      EXPECT_LT((evaluate(phi, CVector::Zero(static_cast<Eigen::Index>(N))) - a).norm(), 1e-12);
      EXPECT_LT((evaluate(phi, evaluate(phi, z)) - z).norm(), 1e-12);
      // 1 - <φ_a(z), a> = (1 - |a|²)/(1 - <z, a>)
      const Complex lhs = 1.0 - inner(evaluate(phi, z), a);
      const Complex rhs = (1.0 - a.squaredNorm()) / (1.0 - inner(z, a));
      EXPECT_LT(std::abs(lhs - rhs), 1e-12);
    }
  }
}

TEST(AdjointMap, Examples) {
  const auto sp1 = SpaceSpec::hardy(1);
  const auto cs = adjoint_map(disk_witness(), sp1);
  for (double x : {0.0, 0.3, -0.7}) {
    const CVector z = vec({x});
    EXPECT_NEAR(std::abs(evaluate(cs.sigma, z)(0) - (1.0 - x) / 2.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(cs.g(z) - 0.5), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(cs.h(z) - (2.0 - x)), 0.0, 1e-15);
  }
  EXPECT_DOUBLE_EQ(cs.h_sup(), 3.0);

  std::mt19937_64 gen(3);
  const CMatrix U = random_unitary(gen, 2);
  const auto cu = adjoint_map(LinearFractionalMap::unitary(U), SpaceSpec::bergman(2, 0.5));
  EXPECT_LT(projective_distance(cu.sigma, LinearFractionalMap::unitary(U.adjoint())), 1e-12);
  EXPECT_DOUBLE_EQ(cu.h_sup(), 1.0);
  EXPECT_EQ(cu.t, 3.5);
}

TEST(AdjointMap, InvolutionIsSelfAdjoint) {
  const auto phi = involution(vec({0.3, Complex(0.1, -0.4)}));
  EXPECT_LT(projective_distance(adjoint_map(phi, SpaceSpec::hardy(2)).sigma, phi), 1e-12);
}

TEST(AdjointMap, DoubleAdjointReproducesMap) {
  std::mt19937_64 gen(11);
  const auto sp = SpaceSpec::hardy(3);
  for (int i = 0; i < 20; ++i) {
    const auto phi = compose(involution(random_interior(gen, 3)), LinearFractionalMap::unitary(random_unitary(gen, 3)));
    const auto back = adjoint_map(adjoint_map(phi, sp).sigma, sp).sigma;
    EXPECT_LT(projective_distance(back, phi), 1e-12);
  }
}

TEST(Compose, Examples) {
  const auto phi = involution(vec({0.2, Complex(0.3, 0.1)}));
  EXPECT_TRUE(is_identity_map(compose(phi, phi), 1e-12));
  CMatrix A(1, 1);
  A << 1.0;
  const LinearFractionalMap sq(A, vec({0.0}), vec({-1.0}), 4.0);  // z/(4-z)
  EXPECT_LT(projective_distance(compose(disk_witness(), disk_witness()), sq), 1e-15);
  EXPECT_LT(projective_distance(compose(phi, LinearFractionalMap::identity(2)), phi), 1e-15);
  EXPECT_LT(projective_distance(iterate(disk_witness(), 2), sq), 1e-15);
}

TEST(Compose, ProjectivelyAssociative) {
  std::mt19937_64 gen(5);
  for (int i = 0; i < 20; ++i) {
    const auto f = involution(random_interior(gen, 2));
    const auto g = LinearFractionalMap::unitary(random_unitary(gen, 2));
    const auto h = involution(random_interior(gen, 2));
    EXPECT_LT(projective_distance(compose(compose(f, g), h), compose(f, compose(g, h))), 1e-12);
    const CVector z = random_interior(gen, 2, 0.5);
    EXPECT_LT((evaluate(compose(f, g), z) - evaluate(f, evaluate(g, z))).norm(), 1e-12);
  }
}

TEST(Jacobian, Examples) {
  EXPECT_LT((jacobian(LinearFractionalMap::identity(3), CVector::Zero(3)) - CMatrix::Identity(3, 3)).norm(), 1e-15);
  EXPECT_NEAR(std::abs(jacobian(disk_witness(), vec({0.0}))(0, 0) - (-0.5)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(jacobian(involution(vec({0.5})), vec({0.0}))(0, 0) - (-0.75)), 0.0, 1e-15);
  EXPECT_THROW(jacobian(disk_witness(), vec({2.0})), singularity_error);
}

TEST(Jacobian, MatchesCentralDifferences) {
  std::mt19937_64 gen(9);
  const double h = 1e-5;
  for (int i = 0; i < 20; ++i) {
    const auto phi = compose(involution(random_interior(gen, 2, 0.8)), LinearFractionalMap::unitary(random_unitary(gen, 2)));
    const CVector z = random_interior(gen, 2, 0.8);
    const CMatrix J = jacobian(phi, z);
    for (Eigen::Index j = 0; j < 2; ++j) {
      CVector e = CVector::Zero(2);
      e(j) = h;
      // Holomorphic: the derivative along real and imaginary directions agree.
      const CVector dre = (evaluate(phi, z + e) - evaluate(phi, z - e)) / (2 * h);
      const CVector dim = (evaluate(phi, z + Complex(0, 1) * e) - evaluate(phi, z - Complex(0, 1) * e)) / (2 * h);
      EXPECT_LT((dre - J.col(j)).norm(), 1e-6);
      EXPECT_LT((dim / Complex(0, 1) - J.col(j)).norm(), 1e-6);
    }
  }
}

TEST(FixedPoints, Examples) {
  const auto w = interior_fixed_points(disk_witness());
  ASSERT_EQ(w.size(), 1u);
  EXPECT_LT(w[0].norm(), 1e-12);

  const auto inv = interior_fixed_points(involution(vec({0.5})));
  ASSERT_EQ(inv.size(), 1u);
  EXPECT_NEAR(std::abs(inv[0](0) - (2.0 - std::sqrt(3.0))), 0.0, 1e-12);

  const Complex rot = std::polar(1.0, 0.7);
  const auto u = interior_fixed_points(LinearFractionalMap::unitary(rot * CMatrix::Identity(2, 2)));
  ASSERT_EQ(u.size(), 1u);
  EXPECT_LT(u[0].norm(), 1e-12);

  EXPECT_THROW(interior_fixed_points(LinearFractionalMap::identity(2)), degenerate_error);
}

TEST(FixedPoints, AreFixed) {
  std::mt19937_64 gen(13);
  for (std::size_t N = 1; N <= 3; ++N) {
    for (int i = 0; i < 20; ++i) {
      const auto phi = involution(random_interior(gen, N));
      for (const auto& z : interior_fixed_points(phi)) EXPECT_LT((evaluate(phi, z) - z).norm(), 1e-10);
    }
  }
}

TEST(UnitarySpaceDim, Examples) {
  std::mt19937_64 gen(17);
  EXPECT_EQ(unitary_space_dim(LinearFractionalMap::unitary(random_unitary(gen, 3)), CVector::Zero(3)), 3u);
  EXPECT_EQ(unitary_space_dim(ball_witness(), CVector::Zero(2)), 0u);
  const auto inv = involution(vec({0.5}));
  EXPECT_EQ(unitary_space_dim(inv, interior_fixed_points(inv).front()), 1u);
  EXPECT_THROW(unitary_space_dim(inv, vec({0.0})), argument_error);
}

TEST(SupNorm, Examples) {
  std::mt19937_64 gen(19);
  const auto u = sup_norm(LinearFractionalMap::unitary(random_unitary(gen, 2)));
  EXPECT_NEAR(u.value, 1.0, 1e-12);
  EXPECT_TRUE(u.attains_one);

  const auto w = sup_norm(disk_witness());
  EXPECT_NEAR(w.value, 1.0, 1e-9);
  EXPECT_TRUE(w.attains_one);
  EXPECT_NEAR(std::abs(w.argmax(0) - 1.0), 0.0, 1e-4);

  const auto sq = sup_norm(compose(disk_witness(), disk_witness()));
  EXPECT_NEAR(sq.value, 1.0 / 3.0, 1e-6);
  EXPECT_FALSE(sq.attains_one);

  EXPECT_NEAR(sup_norm(ball_witness()).value, 1.0, 1e-6);
}

TEST(SelfMapCheck, Examples) {
  EXPECT_TRUE(self_map_check(involution(vec({0.4, Complex(0.1, 0.3)}))));
  CMatrix two(1, 1);
  two << 2.0;
  EXPECT_FALSE(self_map_check(LinearFractionalMap(two, vec({0.0}), vec({0.0}), 1.0)));
  EXPECT_TRUE(self_map_check(slice_witness()));
  EXPECT_TRUE(self_map_check(ball_witness()));
}

TEST(SliceRestriction, Witness) {
  const auto sr = slice_restriction_check(slice_witness(), 1);
  ASSERT_TRUE(sr.has_value());
  EXPECT_TRUE(sr->is_automorphism);
  EXPECT_TRUE(sr->is_nonrotation_automorphism);
  ASSERT_TRUE(sr->zero_preimage.has_value());
  EXPECT_NEAR(sr->zero_preimage->norm(), 0.5, 1e-15);
  EXPECT_LT(projective_distance(sr->reduced, involution(vec({0.5}))), 1e-15);
}

TEST(SliceRestriction, RotationAndNoStructure) {
  CMatrix U(2, 2);
  U << std::polar(1.0, 0.3), 0.0, 0.0, std::polar(1.0, -1.1);
  const auto rot = slice_restriction_check(LinearFractionalMap::unitary(U), 1);
  ASSERT_TRUE(rot.has_value());
  EXPECT_TRUE(rot->is_automorphism);
  EXPECT_FALSE(rot->is_nonrotation_automorphism);

  CMatrix A(2, 2);
  A << 0.5, 0.0, 0.0, 0.5;
  EXPECT_FALSE(slice_restriction_check(LinearFractionalMap(A, vec({0.0, 0.2}), vec({0.0, 0.0}), 1.0), 1));
  EXPECT_THROW(slice_restriction_check(slice_witness(), 2), argument_error);
}

TEST(SliceRestriction, ScaledDenominatorIsNormalized) {
  const auto phi = slice_witness();
  const Complex s(0.0, 3.0);
  const LinearFractionalMap scaled(phi.A() * s, phi.B() * s, phi.C() * std::conj(s), phi.d() * s);
  const auto sr = slice_restriction_check(scaled, 1);
  ASSERT_TRUE(sr.has_value());
  EXPECT_TRUE(sr->is_nonrotation_automorphism);
  EXPECT_NEAR(sr->zero_preimage->norm(), 0.5, 1e-14);
}
