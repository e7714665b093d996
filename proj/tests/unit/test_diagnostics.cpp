#include <cmath>

#include <gtest/gtest.h>

#include "compop/diagnostics.hpp"

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

bool monotone(const std::vector<std::pair<double, double>>& table) {
  bool up = true, down = true;
  for (std::size_t i = 1; i < table.size(); ++i) {
    up = up && table[i].second >= table[i - 1].second;
    down = down && table[i].second <= table[i - 1].second;
  }
  return up || down;
}

std::vector<double> fixture_radii() { return {0.9, 0.95, 0.99, 0.995, 0.999, 0.9999, 0.99999, 1 - 1e-6}; }

}  // namespace

TEST(AutomorphismVerdict, Examples) {
  for (const auto& sp : {SpaceSpec::hardy(2), SpaceSpec::bergman(2, 0.5)}) {
    EXPECT_EQ(automorphism_verdict(sp, CVector::Zero(2)).status, VerdictStatus::EssentiallyNormal);
  }
  const auto disk = automorphism_verdict(SpaceSpec::bergman(1, 0), vec({0.5}));
  EXPECT_EQ(disk.status, VerdictStatus::NotEssentiallyNormal);
  EXPECT_NEAR(*disk.gap, 2.0, 1e-12);
  const auto ball = automorphism_verdict(SpaceSpec::hardy(2), vec({0.3, Complex(0, 0.4)}));
  EXPECT_EQ(ball.status, VerdictStatus::NotEssentiallyNormal);
  EXPECT_NEAR(*ball.gap, 2.0, 1e-12);
  EXPECT_FALSE(ball.witness.empty());
  EXPECT_THROW(automorphism_verdict(SpaceSpec::hardy(1), vec({1.0})), domain_error);
}

TEST(AutomorphismVerdict, GapEqualsLimitDifference) {
  for (const auto& sp : {SpaceSpec::hardy(1), SpaceSpec::hardy(3), SpaceSpec::bergman(2, -0.5), SpaceSpec::bergman(1, 2)}) {
    for (double r : {0.1, 0.5, 0.9}) {
      CVector a = CVector::Zero(static_cast<Eigen::Index>(sp.dim()));
      a(0) = r;
      const auto v = automorphism_verdict(sp, a);
      const double t = exponent_t(sp);
      ASSERT_EQ(v.status, VerdictStatus::NotEssentiallyNormal);
      EXPECT_NEAR(*v.gap, adjoint_limit(t, r) - forward_limit(t, r), 1e-12 * *v.gap + 1e-12);
    }
  }
}

TEST(AutomorphismVerdict, NeverReportsTinyGap) {
  const auto v = automorphism_verdict(SpaceSpec::hardy(1), vec({1e-8}));
  EXPECT_NE(v.status, VerdictStatus::NotEssentiallyNormal);
}

TEST(SliceVerdict, Witness) {
  const auto v = slice_verdict(slice_witness(), SpaceSpec::hardy(2));
  EXPECT_EQ(v.status, VerdictStatus::NotEssentiallyNormal);
  ASSERT_TRUE(v.slice_k.has_value());
  EXPECT_EQ(*v.slice_k, 1u);
  ASSERT_TRUE(v.reduced_space.has_value());
  EXPECT_EQ(*v.reduced_space, SpaceSpec::bergman(1, 0));
  EXPECT_NEAR(*v.gap, 2.0, 1e-9);
  // Same code path as the automorphism verdict on the reduced space.
  EXPECT_EQ(*v.gap, *automorphism_verdict(SpaceSpec::bergman(1, 0), vec({0.5})).gap);
  EXPECT_TRUE(v.all_hypotheses_pass());
}

TEST(SliceVerdict, BergmanBall) {
  const auto v = slice_verdict(slice_witness(), SpaceSpec::bergman(2, 1.0));
  EXPECT_EQ(v.status, VerdictStatus::NotEssentiallyNormal);
  EXPECT_EQ(*v.reduced_space, SpaceSpec::bergman(1, 2.0));
  EXPECT_NEAR(*v.gap, gap_limit(4.0, 0.5), 1e-15);
}

TEST(SliceVerdict, InconclusiveCases) {
  CMatrix U(2, 2);
  U << 0.0, 1.0, 1.0, 0.0;
  EXPECT_EQ(slice_verdict(LinearFractionalMap::unitary(U), SpaceSpec::hardy(2)).status, VerdictStatus::Inconclusive);
  CMatrix D(2, 2);
  D << std::polar(1.0, 0.4), 0.0, 0.0, 1.0;
  EXPECT_EQ(slice_verdict(LinearFractionalMap::unitary(D), SpaceSpec::hardy(2)).status, VerdictStatus::Inconclusive);
  EXPECT_EQ(slice_verdict(disk_witness(), SpaceSpec::hardy(1)).status, VerdictStatus::Inconclusive);
}

TEST(KernelBoundScan, DiskWitness) {
  const auto scan = kernel_bound_scan(disk_witness(), SpaceSpec::hardy(1), vec({1.0}), fixture_radii());
  EXPECT_EQ(scan.verdict.status, VerdictStatus::NotEssentiallyNormal);
  EXPECT_TRUE(scan.verdict.all_hypotheses_pass());
  ASSERT_EQ(scan.table.size(), fixture_radii().size());
  EXPECT_NEAR(scan.table.back().second, 0.5, 1e-3);
  EXPECT_TRUE(monotone(scan.table));
  ASSERT_GE(scan.iterate_sup_norms.size(), 2u);
  EXPECT_NEAR(scan.iterate_sup_norms[1], 1.0 / 3.0, 1e-6);
  EXPECT_EQ(scan.first_contracting_iterate, 2u);
}

TEST(KernelBoundScan, BallWitness) {
  const auto scan = kernel_bound_scan(ball_witness(), SpaceSpec::hardy(2), vec({1.0, 0.0}), fixture_radii());
  EXPECT_EQ(scan.verdict.status, VerdictStatus::NotEssentiallyNormal);
  EXPECT_NEAR(scan.table.back().second, 0.25, 1e-3);
  // The bound is ((1+r)(2-r)²/4)² minus a term of order (1-r)²; the first
  // factor decreases to 1/2 from above, so the limit 1/4 is approached from
  // above and the scan peaks near r = 0.99 before decreasing.
  std::vector<std::pair<double, double>> tail(scan.table.begin() + 2, scan.table.end());
  ASSERT_NEAR(tail.front().first, 0.99, 1e-15);
  EXPECT_TRUE(monotone(tail));
  EXPECT_GT(tail.front().second, tail.back().second);
  for (const auto& [r, b] : scan.table) {
    const double f = (1 + r) * (2 - r) * (2 - r) / 4;
    const double sig = (1 - r) / 2;
    const double second = (81.0 / 16.0) * std::pow((1 - r * r) / (1 - sig * sig), 2);
    // 1 - r² loses digits like eps/(1-r).
    EXPECT_NEAR(b, f * f - second, 1e-12 + 1e-15 / (1 - r)) << r;
  }
}

TEST(KernelBoundScan, DefaultRadii) {
  const auto r = default_radii();
  ASSERT_EQ(r.size(), 6u);
  EXPECT_NEAR(r.front(), 0.9, 1e-15);
  EXPECT_NEAR(r.back(), 1 - 1e-6, 1e-15);
  const auto scan = kernel_bound_scan(disk_witness(), SpaceSpec::hardy(1), vec({1.0}));
  EXPECT_EQ(scan.verdict.status, VerdictStatus::NotEssentiallyNormal);
}

TEST(KernelBoundScan, UnitaryIsInconclusive) {
  CMatrix U(2, 2);
  U << std::polar(1.0, 0.5), 0.0, 0.0, std::polar(1.0, 1.3);
  const auto scan = kernel_bound_scan(LinearFractionalMap::unitary(U), SpaceSpec::hardy(2), vec({1.0, 0.0}));
  EXPECT_EQ(scan.verdict.status, VerdictStatus::Inconclusive);
  bool named = false;
  for (const auto& h : scan.verdict.hypotheses) named = named || (h.name == "dim L_U = 0" && !h.passed);
  EXPECT_TRUE(named);
  EXPECT_NE(scan.verdict.witness.find("hypothesis failed"), std::string::npos);

  const auto id = kernel_bound_scan(LinearFractionalMap::identity(2), SpaceSpec::hardy(2), vec({1.0, 0.0}));
  EXPECT_EQ(id.verdict.status, VerdictStatus::Inconclusive);
}

TEST(KernelBoundScan, ContractiveMapFailsSupHypothesis) {
  CMatrix A(1, 1);
  A << 0.5;
  const LinearFractionalMap half(A, vec({0.0}), vec({0.0}), 1.0);
  const auto scan = kernel_bound_scan(half, SpaceSpec::hardy(1), vec({1.0}));
  EXPECT_EQ(scan.verdict.status, VerdictStatus::Inconclusive);
  EXPECT_EQ(scan.first_contracting_iterate, 1u);
}

TEST(KernelBoundScan, RejectsBadInput) {
  EXPECT_THROW(kernel_bound_scan(disk_witness(), SpaceSpec::hardy(1), vec({0.5})), argument_error);
  EXPECT_THROW(kernel_bound_scan(disk_witness(), SpaceSpec::hardy(1), vec({1.0}), {1.0}), argument_error);
}
