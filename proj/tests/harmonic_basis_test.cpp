#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qharm/harmonic_basis.hpp"

using namespace qharm;

TEST(Basis, Sizes) {
  EXPECT_EQ(basis_size({2, 0}), 1);
  EXPECT_EQ(basis_size({2, 5}), 11);
  EXPECT_EQ(basis_size({3, 3}), 16);
  for (int d : {2, 3})
    for (int m = 0; m <= 8; ++m) EXPECT_EQ(eval_basis({d, m}, d == 2 ? Point(0.1, 0.2) : Point(0.1, 0.2, 0.3)).size(),
                                           basis_size({d, m}));
}

TEST(Basis, DegreeCaps) {
  EXPECT_THROW(check_spec({2, kMaxDegree2D + 1}), std::invalid_argument);
  EXPECT_THROW(check_spec({3, kMaxDegree3D + 1}), std::invalid_argument);
  EXPECT_THROW(check_spec({4, 1}), std::invalid_argument);
  EXPECT_THROW(check_spec({2, -1}), std::invalid_argument);
  EXPECT_NO_THROW(check_spec({2, kMaxDegree2D}));
}

TEST(Basis, ElementDegree) {
  EXPECT_EQ(element_degree({2, 3}, 0), 0);
  EXPECT_EQ(element_degree({2, 3}, 1), 1);
  EXPECT_EQ(element_degree({2, 3}, 2), 1);
  EXPECT_EQ(element_degree({2, 3}, 6), 3);
  EXPECT_EQ(element_degree({3, 3}, 0), 0);
  EXPECT_EQ(element_degree({3, 3}, 3), 1);
  EXPECT_EQ(element_degree({3, 3}, 4), 2);
  EXPECT_EQ(element_degree({3, 3}, 15), 3);
}

TEST(Basis, Origin) {
  auto v = eval_basis({2, 6}, Point(0, 0));
  EXPECT_EQ(v(0), 1.0);
  for (int i = 1; i < v.size(); ++i) EXPECT_EQ(v(i), 0.0);
}

TEST(Basis, OnePlusI) {
  auto v = eval_basis({2, 2}, Point(1, 1));
  EXPECT_NEAR(v(3), 0.0, 1e-15);
  EXPECT_NEAR(v(4), 2.0, 1e-15);
}

TEST(Basis, MatchesBinomialExpansion) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.2, 1.2);
  BasisSpec s{2, 12};
  for (int t = 0; t < 100; ++t) {
    Point x(u(rng), u(rng));
    auto v = eval_basis(s, x);
    for (int k = 1; k <= 12; ++k) {
      auto [re, im] = oracle::binomial_power(x[0], x[1], k);
      EXPECT_NEAR(v(2 * k - 1), re, 1e-12 * (1 + std::abs(re)));
      EXPECT_NEAR(v(2 * k), im, 1e-12 * (1 + std::abs(im)));
    }
  }
}

TEST(Basis, LowDegreeSolidHarmonics) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  const double r3 = std::sqrt(3.0);
  for (int t = 0; t < 20; ++t) {
    double x = u(rng), y = u(rng), z = u(rng);
    auto v = eval_basis({3, 2}, Point(x, y, z));
    double r2 = x * x + y * y + z * z;
    EXPECT_NEAR(v(0), 1.0, 1e-14);
    EXPECT_NEAR(v(1), z, 1e-14);
    EXPECT_NEAR(v(2), x, 1e-14);
    EXPECT_NEAR(v(3), y, 1e-14);
    EXPECT_NEAR(v(4), (3 * z * z - r2) / 2, 1e-14);
    EXPECT_NEAR(v(5), r3 * x * z, 1e-14);
    EXPECT_NEAR(v(6), r3 * y * z, 1e-14);
    EXPECT_NEAR(v(7), r3 / 2 * (x * x - y * y), 1e-14);
    EXPECT_NEAR(v(8), r3 * x * y, 1e-14);
  }
}

TEST(Basis, Harmonicity) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-0.9, 0.9);
  for (int dim : {2, 3}) {
    BasisSpec s{dim, 10};
    const int n = basis_size(s);
    for (int t = 0; t < 50; ++t) {
      Point x = dim == 2 ? Point(u(rng), u(rng)) : Point(u(rng), u(rng), u(rng));
      for (int j = 0; j < n; ++j) {
        auto f = [&](const Point& p) { return eval_basis(s, p)(j); };
        double lap = oracle::fd_laplacian(f, x, 1e-3);
        EXPECT_LT(std::abs(lap), 1e-6 * (1 + std::abs(f(x)))) << "dim " << dim << " element " << j;
      }
    }
  }
}

TEST(Basis, CenterShift) {
  BasisSpec s{2, 3, {0.5, -0.25, 0.0}};
  auto a = eval_basis(s, Point(0.7, 0.1));
  auto b = eval_basis({2, 3}, Point(0.2, 0.35));
  EXPECT_LT((a - b).lpNorm<Eigen::Infinity>(), 1e-15);
}

TEST(Poly, RejectsBadCoefficients) {
  EXPECT_THROW(HarmonicPoly({2, 2}, Eigen::VectorXd::Zero(4)), std::invalid_argument);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(5);
  c(1) = std::nan("");
  EXPECT_THROW(HarmonicPoly({2, 2}, c), std::invalid_argument);
}

TEST(Poly, EvalAndSupNorm) {
  auto circle = sample_shape(Circle{Point(0, 0), 1.0}, 0.05);
  EXPECT_EQ(sup_norm(HarmonicPoly::zero({2, 4}), circle), 0.0);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(9);
  c(0) = -2.5;
  EXPECT_DOUBLE_EQ(sup_norm(HarmonicPoly({2, 4}, c), circle), 2.5);
  c(0) = 1.0;
  EXPECT_DOUBLE_EQ(eval(HarmonicPoly({2, 4}, c), Point(0.3, 9.0)), 1.0);
  c.setZero();
  c(1) = 1.0;  // Re z
  EXPECT_NEAR(sup_norm(HarmonicPoly({2, 4}, c), circle), 1.0, 0.05 * 0.05);
}

TEST(Poly, SupNormRefinement) {
  Eigen::VectorXd c(7);
  c << 0.1, -0.4, 0.7, 0.3, 0.2, -0.6, 0.25;
  HarmonicPoly p({2, 3}, c);
  auto coarse = sample_shape(Disk{Point(0, 0), 1.0}, 0.05);
  auto fine = sample_shape(Disk{Point(0, 0), 1.0}, 0.025);
  // Coarse never exceeds the refined scan; the gap is bounded by mesh times a Lipschitz bound.
  double lip = 0.0;
  for (int k = 1; k <= 3; ++k) lip += k * (std::abs(c(2 * k - 1)) + std::abs(c(2 * k)));
  EXPECT_LE(sup_norm(p, coarse), sup_norm(p, fine) + 0.05 * lip);
  EXPECT_GE(sup_norm(p, coarse), sup_norm(p, fine) - 0.05 * lip);
}

TEST(Poly, MaximumPrincipleSurrogate) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (int dim : {2, 3}) {
    BasisSpec s{dim, 6};
    Point o = Point::origin(dim);
    auto inner = sample_shape(Circle{o, 0.6}, 0.05);
    auto outer = sample_shape(Circle{o, 1.0}, 0.05);
    for (int t = 0; t < 10; ++t) {
      Eigen::VectorXd c(basis_size(s));
      for (auto& v : c) v = g(rng);
      HarmonicPoly p(s, c);
      EXPECT_LE(sup_norm(p, inner), sup_norm(p, outer) * (1 + 0.05));
    }
  }
}

TEST(Poly, DegreeGrowth) {
  for (int m : {1, 3, 6, 10}) {
    BasisSpec s{2, m};
    for (int j : {2 * m - 1, 2 * m}) {
      Eigen::VectorXd c = Eigen::VectorXd::Zero(basis_size(s));
      c(j) = 1.0;
      HarmonicPoly p(s, c);
      std::vector<double> lr, ln;
      for (double r : {1.0, 2.0, 4.0}) {
        auto circ = sample_shape(Circle{Point(0, 0), r}, 0.01 * r);
        lr.push_back(std::log(r));
        ln.push_back(std::log(sup_norm(p, circ)));
      }
      double slope = (ln[2] - ln[0]) / (lr[2] - lr[0]);
      EXPECT_NEAR(slope, m, 0.01 * m);
    }
  }
  // 3D: solid harmonics are homogeneous of degree l.
  BasisSpec s{3, 5};
  Point x(0.3, -0.2, 0.4);
  auto a = eval_basis(s, x);
  auto b = eval_basis(s, 2.0 * x);
  for (int j = 0; j < basis_size(s); ++j)
    EXPECT_NEAR(b(j), std::pow(2.0, element_degree(s, j)) * a(j), 1e-12 * (1 + std::abs(b(j))));
}
