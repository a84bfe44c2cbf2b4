#include <gtest/gtest.h>

#include <cmath>

#include "qharm/regularity.hpp"

using namespace qharm;

namespace {

const RegularityProfile& disk_profile() {
  static const RegularityProfile prof =
      regularity_profile(sample_shape(Disk{Point(0, 0), 1.0}, 0.05), Point(0, 0), 0.5, 16, 4);
  return prof;
}

}  // namespace

TEST(Bernstein, ConstraintSetContainsBall) {
  const double r = 0.4;
  Point x0(0.1, -0.2);
  auto E = sample_shape(Disk{x0, r}, r / 10);
  for (int m : {1, 3, 6}) EXPECT_NEAR(bernstein_ratio(E, x0, r, m).ratio, 1.0, 1e-7) << m;
}

TEST(Bernstein, SegmentIsAnnihilated) {
  auto seg = sample_shape(Segment{Point(-1, 0), Point(1, 0)}, 0.05);
  auto res = bernstein_ratio(seg, Point(0, 0), 0.5, 3);
  EXPECT_EQ(res.ratio, kRatioSentinel);
  ASSERT_TRUE(res.witness.has_value());
  EXPECT_LT(res.witness_on_E, 1e-10);
  EXPECT_NEAR(sup_norm(*res.witness, sample_shape(Disk{Point(0, 0), 0.5}, 0.05)), 1.0, 1e-12);
}

TEST(Bernstein, CircleMatchesRefinedOracleAndPowerLaw) {
  // For a concentric circle of radius r/2 the extremal polynomial is Re z^m,
  // so the ratio is 2^m up to discretization.
  auto coarse = bernstein_ratio(sample_shape(Circle{Point(0, 0), 0.25}, 0.05), Point(0, 0), 0.5, 5).ratio;
  RegularityParams fine;
  fine.ball_mesh = 0.025;
  auto refined = bernstein_ratio(sample_shape(Circle{Point(0, 0), 0.25}, 0.025), Point(0, 0), 0.5, 5, fine).ratio;
  EXPECT_NEAR(coarse, refined, 0.1 * refined);
  EXPECT_NEAR(refined, 32.0, 0.1 * 32.0);
  EXPECT_GE(refined, 32.0 * (1 - 1e-6));
}

TEST(Bernstein, MonotoneInSet) {
  auto small = sample_shape(Circle{Point(0, 0), 0.25}, 0.05);
  auto big = merge(small, sample_shape(Circle{Point(0, 0), 0.4}, 0.05), "E2");
  for (int m : {2, 4, 6}) {
    double a = bernstein_ratio(small, Point(0, 0), 0.5, m).ratio;
    double b = bernstein_ratio(big, Point(0, 0), 0.5, m).ratio;
    EXPECT_LE(b, a * (1 + 1e-7)) << m;
  }
}

TEST(Bernstein, Errors) {
  auto E = sample_shape(Disk{Point(0, 0), 0.2}, 0.05);
  EXPECT_THROW(bernstein_ratio(E, Point(2, 2), 0.5, 3), std::invalid_argument);
  EXPECT_THROW(bernstein_ratio(E, Point(0, 0), -1.0, 3), std::invalid_argument);
  EXPECT_THROW(regularity_profile(E, Point(0, 0), 0.5, 4, 5), std::invalid_argument);
  EXPECT_THROW(regularity_profile(E, Point(0, 0), 0.5, 41, 5), std::invalid_argument);
}

TEST(Regularity, DiskProfile) {
  const auto& prof = disk_profile();
  ASSERT_EQ(prof.ratios.size(), 16u);
  for (std::size_t i = 0; i < prof.ratios.size(); ++i) {
    EXPECT_GE(prof.ratios[i], 1 - 1e-9);
    if (i > 0) EXPECT_GE(prof.ratios[i], prof.ratios[i - 1] * (1 - 1e-7));
  }
  EXPECT_EQ(prof.verdict, RegularityVerdict::regular_evidence);
  EXPECT_LE(prof.growth_estimate, 1.1);
  EXPECT_GE(prof.growth_estimate, 1.0);
  EXPECT_FALSE(prof.witness.has_value());
}

TEST(Regularity, DiskRootsStabilize) {
  const auto& prof = disk_profile();
  for (int m : {8})
    EXPECT_LT(std::abs(std::pow(prof.ratios[m - 1], 1.0 / m) - std::pow(prof.ratios[2 * m - 1], 1.0 / (2 * m))), 0.05);
}

TEST(Regularity, SegmentDegenerate) {
  auto seg = sample_shape(Segment{Point(-1, 0), Point(1, 0)}, 0.05);
  auto prof = regularity_profile(seg, Point(0, 0), 0.5, 6, 3);
  EXPECT_EQ(prof.verdict, RegularityVerdict::degenerate_annihilated);
  EXPECT_EQ(prof.witness_degree, 1);
  for (double v : prof.ratios) EXPECT_EQ(v, kRatioSentinel);
  EXPECT_LT(prof.witness_on_E, 1e-10);
  EXPECT_GT(prof.witness_on_ball, 0.1);
}

TEST(Regularity, SinglePointDegenerate) {
  Point x0(0.2, 0.1);
  auto pt = sample_shape(FinitePoints{{x0}}, 0.1);
  auto prof = regularity_profile(pt, x0, 0.5, 3, 2);
  EXPECT_EQ(prof.verdict, RegularityVerdict::degenerate_annihilated);
  EXPECT_LT(prof.witness_on_E, 1e-10);
}

TEST(Regularity, SmallCircleIrregular) {
  // A circle of radius r/4: growth near 4 never settles below 1 + theta.
  auto E = sample_shape(Circle{Point(0, 0), 0.125}, 0.02);
  auto prof = regularity_profile(E, Point(0, 0), 0.5, 6, 3);
  EXPECT_EQ(prof.verdict, RegularityVerdict::irregular_evidence);
  EXPECT_GT(prof.growth_estimate, 3.0);
}

TEST(Regularity, Scan) {
  auto disk = sample_shape(Disk{Point(0, 0), 1.0}, 0.05);
  auto scan = regularity_scan(disk, Point(0, 0), 0.5, 6, 3);
  EXPECT_EQ(scan.verdict, RegularityVerdict::regular_evidence);
  ASSERT_EQ(scan.profiles.size(), 3u);
  EXPECT_DOUBLE_EQ(scan.profiles[2].r, 0.125);
  auto seg = sample_shape(Segment{Point(-1, 0), Point(1, 0)}, 0.05);
  EXPECT_EQ(regularity_scan(seg, Point(0, 0), 0.5, 4, 2).verdict, RegularityVerdict::degenerate_annihilated);
}

TEST(Regularity, Ball3D) {
  Point x0(0, 0, 0);
  RegularityParams p;
  p.ball_mesh = 0.1;
  auto E = sample_shape(Disk{x0, 0.5}, 0.1);
  for (int m : {1, 3}) EXPECT_NEAR(bernstein_ratio(E, x0, 0.5, m, p).ratio, 1.0, 1e-7);
}
