#include <gtest/gtest.h>

#include <random>

#include "qharm/minimax.hpp"

using namespace qharm;

namespace {

const SampledSet& unit_disk() {
  static const SampledSet k = sample_shape(Disk{Point(0, 0), 1.0}, 0.05);
  return k;
}

}  // namespace

TEST(Minimax, ConstantAtDegreeZero) {
  auto r = best_approx(targets::constant(3.5), unit_disk(), {2, 0});
  EXPECT_LT(r.deviation, 1e-12);
  EXPECT_TRUE(r.is_exact);
  EXPECT_NEAR(r.poly.coeffs()(0), 3.5, 1e-12);
}

TEST(Minimax, LinearFunctionAtDegreeZero) {
  // Best constant for x on the unit disk is 0, deviation max|x| = 1.
  auto r = best_approx(targets::coordinate(0), unit_disk(), {2, 0});
  EXPECT_NEAR(r.deviation, 1.0, 1e-12);
  EXPECT_NEAR(r.poly.coeffs()(0), 0.0, 1e-12);
}

TEST(Minimax, RecoversRandomHarmonicPolynomials) {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> g;
  for (int t = 0; t < 10; ++t) {
    int deg = 1 + t % 8;
    BasisSpec s{2, deg};
    Eigen::VectorXd c(basis_size(s));
    for (auto& v : c) v = g(rng);
    auto r = best_approx(targets::harmonic(HarmonicPoly(s, c)), unit_disk(), s);
    EXPECT_LT(r.deviation, 1e-8) << "degree " << deg;
  }
}

TEST(Minimax, DeviationIsSupOfResidual) {
  auto f = targets::abs_coordinate(0);
  auto r = best_approx(f, unit_disk(), {2, 4});
  double sup = 0.0;
  for (const auto& p : unit_disk().points) sup = std::max(sup, std::abs(f(p) - r.poly(p)));
  EXPECT_NEAR(r.deviation, sup, 1e-10);
}

TEST(Minimax, SequenceNonincreasing) {
  for (auto f : {targets::abs_coordinate(0), targets::pole(2.0), targets::pole(1.3)}) {
    auto seq = deviation_sequence(f, unit_disk(), 15);
    ASSERT_EQ(seq.size(), 16u);
    for (std::size_t m = 1; m < seq.size(); ++m) {
      EXPECT_LE(seq[m].deviation, seq[m - 1].deviation) << f.label << " m " << m;
      EXPECT_EQ(seq[m].degree, static_cast<int>(m));
    }
  }
}

TEST(Minimax, AbsX1RespectsMeanValueBound) {
  // For any harmonic p, p(0) is the mean of p on the unit circle, so the
  // deviation from |x1| is at least (mean |cos| - 0) / 2 = 1/pi.
  auto seq = deviation_sequence(targets::abs_coordinate(0), unit_disk(), 20);
  for (const auto& r : seq) EXPECT_GE(r.deviation, 1.0 / M_PI - 2e-3);
}

TEST(Minimax, PoleRateNearHalf) {
  auto seq = deviation_sequence(targets::pole(2.0), unit_disk(), 20);
  double ratio = seq[20].deviation / seq[19].deviation;
  EXPECT_NEAR(ratio, 0.5, 0.05);
}

TEST(Minimax, TranslationInvariance) {
  // Moving K and the basis center together leaves the deviation unchanged.
  auto f = [](const Point& p) { return std::exp(p[0]) * std::cos(p[1]) + p[0] * p[0]; };
  auto k0 = sample_shape(Disk{Point(0, 0), 1.0}, 0.1);
  auto k1 = sample_shape(Disk{Point(3, -2), 1.0}, 0.1);
  TargetFunction f0{"f", f};
  TargetFunction f1{"f", [f](const Point& p) { return f(Point(p[0] - 3, p[1] + 2)); }};
  auto a = best_approx(f0, k0, {2, 5});
  auto b = best_approx(f1, k1, {2, 5, {3, -2, 0}});
  EXPECT_NEAR(a.deviation, b.deviation, 1e-9);
}

TEST(Minimax, Works3D) {
  auto ball = sample_shape(Disk{Point(0, 0, 0), 1.0}, 0.2);
  BasisSpec s{3, 3};
  Eigen::VectorXd c = Eigen::VectorXd::LinSpaced(basis_size(s), -1, 1);
  auto r = best_approx(targets::harmonic(HarmonicPoly(s, c)), ball, s);
  EXPECT_LT(r.deviation, 1e-8);
  auto lower = best_approx(targets::harmonic(HarmonicPoly(s, c)), ball, {3, 2});
  EXPECT_GT(lower.deviation, 1e-3);
}

TEST(Minimax, Errors) {
  SampledSet empty;
  EXPECT_THROW(best_approx(targets::zero(), empty, {2, 1}), std::invalid_argument);
  EXPECT_THROW(best_approx(targets::zero(), unit_disk(), {2, 41}), std::invalid_argument);
  EXPECT_THROW(best_approx(targets::pole(0.5), unit_disk(), {2, 1}), std::domain_error);
  EXPECT_THROW(best_approx(targets::zero(), unit_disk(), {3, 1}), std::invalid_argument);
}

TEST(Minimax, TableTarget) {
  auto k = sample_shape(Circle{Point(0, 0), 1.0}, 0.1);
  std::vector<double> v;
  for (const auto& p : k.points) v.push_back(p[0] * p[0] - p[1] * p[1]);
  auto r = best_approx(targets::table(k.points, v), k, {2, 2});
  EXPECT_LT(r.deviation, 1e-10);
  EXPECT_THROW(targets::table(k.points, v)(Point(5, 5)), std::out_of_range);
}

TEST(Minimax, BracketRefinesTowardContinuum) {
  auto k = sample_shape(Disk{Point(0, 0), 1.0}, 0.1);
  auto b = deviation_bracket(targets::abs_coordinate(0), k, {2, 6});
  // Finer samples add constraints, so the deviation can only grow.
  EXPECT_GE(b.fine, b.coarse - 1e-10);
  EXPECT_LT(b.fine - b.coarse, 0.05);
}

TEST(Minimax, PoleTailIsTaylorRemainder) {
  Point x(0.3, -0.4);
  double full = targets::pole(2.0)(x);
  std::complex<double> z(0.3, -0.4), taylor = 0;
  for (int k = 0; k <= 5; ++k) taylor += std::pow(z, k) / std::pow(2.0, k + 1);
  EXPECT_NEAR(targets::pole_tail(2.0, 5)(x), full - taylor.real(), 1e-15);
}
