#include <gtest/gtest.h>

#include <cmath>

#include "qharm/rates.hpp"

using namespace qharm;

namespace {

std::vector<double> geometric(double c, double r, int m_max) {
  std::vector<double> d;
  for (int m = 0; m <= m_max; ++m) d.push_back(c * std::pow(r, m));
  return d;
}

}  // namespace

TEST(Rates, Geometric) {
  auto rr = root_rate(std::vector<double>{1, 0.5, 0.25, 0.125});
  EXPECT_TRUE(std::isnan(rr.rates[0]));
  for (int m = 1; m <= 3; ++m) EXPECT_NEAR(rr.rates[m], 0.5, 1e-15);
}

TEST(Rates, ZeroFlagged) {
  auto rr = root_rate(std::vector<double>{1, 0.5, 0.25, 0.0});
  EXPECT_EQ(rr.rates[3], 0.0);
  EXPECT_TRUE(rr.exact[3]);
  EXPECT_FALSE(rr.exact[2]);
}

TEST(Rates, HarmonicDecay) {
  std::vector<double> d{1.0};
  for (int m = 1; m <= 20; ++m) d.push_back(1.0 / m);
  auto rr = root_rate(d);
  EXPECT_GE(rr.rates[20], 0.8);
  EXPECT_LE(rr.rates[20], 1.0);
  EXPECT_NEAR(rr.rates[20], std::pow(1.0 / 20, 1.0 / 20), 1e-15);
}

TEST(Rates, RejectsNegative) { EXPECT_THROW(root_rate(std::vector<double>{1, -0.1}), std::invalid_argument); }

TEST(Classify, Extendable) {
  auto rep = classify(geometric(1.0, 0.5, 20), 6);
  EXPECT_EQ(rep.classification, DecayClass::harmonically_extendable);
  EXPECT_NEAR(rep.limsup_estimate, 0.5, 1e-12);
  EXPECT_EQ(rep.window_first, 15);
  EXPECT_EQ(rep.window_last, 20);
}

TEST(Classify, ExactlyPolynomial) {
  auto rep = classify(std::vector<double>{1, 0.3, 1e-14, 1e-15, 0.0}, 3);
  EXPECT_EQ(rep.classification, DecayClass::exactly_polynomial);
  std::vector<double> d{1, 0.3, 5e-11, 5e-11, 5e-11};
  bool hint[] = {false, false, true, true, true};
  EXPECT_EQ(classify(d, 3).classification, DecayClass::harmonically_extendable);
  EXPECT_EQ(classify(d, 3, kDefaultTheta, hint).classification, DecayClass::exactly_polynomial);
}

TEST(Classify, LiminfVersusLimsup) {
  // Alternating fast and slow decay: only the liminf is below 1 - theta.
  std::vector<double> d{1.0};
  for (int m = 1; m <= 20; ++m) d.push_back(m % 2 ? 0.9 : std::pow(0.5, m));
  auto rep = classify(d, 6);
  EXPECT_EQ(rep.classification, DecayClass::quasiharmonic_only);
  EXPECT_LE(rep.liminf_estimate, rep.limsup_estimate);
  std::vector<double> slow{1.0};
  for (int m = 1; m <= 20; ++m) slow.push_back(0.9);
  EXPECT_EQ(classify(slow, 6).classification, DecayClass::not_quasiharmonic);
}

TEST(Classify, WindowErrors) {
  auto d = geometric(1.0, 0.5, 5);
  EXPECT_THROW(classify(d, 2), std::invalid_argument);
  EXPECT_THROW(classify(d, 6), std::invalid_argument);
  EXPECT_NO_THROW(classify(d, 5));
}

TEST(Classify, GeometricEstimatesConverge) {
  // (c r^m)^{1/m} = c^{1/m} r, so the 5% band at m = 20 holds for c within
  // a factor 2 of one; c in [0.1, 10] needs a window starting past m = 47.
  for (double r : {0.3, 0.5, 0.8})
    for (double c : {0.5, 0.8, 1.0, 1.5, 2.0}) {
      auto rep = classify(geometric(c, r, 20), 6);
      EXPECT_LT(std::abs(rep.limsup_estimate - r), 0.05 * r);
      EXPECT_LT(std::abs(rep.liminf_estimate - r), 0.05 * r);
    }
  for (double r : {0.7, 0.8, 0.9})
    for (double c : {0.1, 1.0, 10.0}) {
      auto rep = classify(geometric(c, r, 52), 3);
      EXPECT_LT(std::abs(rep.limsup_estimate - r), 0.05 * r);
      EXPECT_LT(std::abs(rep.liminf_estimate - r), 0.05 * r);
    }
}

TEST(Classify, ScaleRobust) {
  std::vector<std::vector<double>> seqs{geometric(1.0, 0.5, 24), geometric(0.3, 0.7, 24)};
  std::vector<double> flat{1.0}, alt{1.0};
  for (int m = 1; m <= 24; ++m) {
    flat.push_back(0.9);
    alt.push_back(m % 2 ? 0.95 : std::pow(0.4, m));
  }
  seqs.push_back(flat);
  seqs.push_back(alt);
  for (const auto& d : seqs) {
    auto base = classify(d, 4).classification;
    for (double lambda : {0.5, 0.75, 1.5, 2.0}) {
      std::vector<double> s = d;
      for (auto& v : s) v *= lambda;
      EXPECT_EQ(classify(s, 4).classification, base);
    }
  }
}
