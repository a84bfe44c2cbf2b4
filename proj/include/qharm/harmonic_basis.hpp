#pragma once

// Real bases of harmonic polynomials of degree <= m.
//
//   2D: {1, Re z^k, Im z^k : k = 1..m},           size 2m + 1
//   3D: real solid harmonics r^l Y_l^m, l = 0..m,  size (m + 1)^2
//
// The 3D elements are Schmidt semi-normalized, which keeps them of order one
// on the unit sphere around the basis center. Element order within degree l
// is [m=0, cos m=1, sin m=1, cos m=2, sin m=2, ...].

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qharm/geometry.hpp"

namespace qharm {

inline constexpr int kMaxDegree2D = 40;
inline constexpr int kMaxDegree3D = 20;

struct BasisSpec {
  int dim = 2;
  int max_degree = 0;
  // Expansion point; elements are polynomials in (x - center).
  std::array<double, 3> center{0.0, 0.0, 0.0};

  friend bool operator==(const BasisSpec&, const BasisSpec&) = default;
};

inline void check_spec(const BasisSpec& s) {
  if (s.dim != 2 && s.dim != 3) throw std::invalid_argument("basis dimension must be 2 or 3");
  if (s.max_degree < 0) throw std::invalid_argument("basis degree must be >= 0");
  int cap = s.dim == 2 ? kMaxDegree2D : kMaxDegree3D;
  if (s.max_degree > cap)
    throw std::invalid_argument("basis degree " + std::to_string(s.max_degree) + " exceeds cap " +
                                std::to_string(cap) + " for dimension " + std::to_string(s.dim));
}

inline int basis_size(const BasisSpec& s) {
  return s.dim == 2 ? 2 * s.max_degree + 1 : (s.max_degree + 1) * (s.max_degree + 1);
}

/// Total degree of element j.
inline int element_degree(const BasisSpec& s, int j) {
  if (s.dim == 2) return (j + 1) / 2;
  return static_cast<int>(std::sqrt(static_cast<double>(j)) + 1e-9);
}

inline void eval_basis_into(const BasisSpec& s, const Point& x, std::span<double> out) {
  if (x.dim() != s.dim) throw std::invalid_argument("eval_basis: point dimension does not match basis");
  const double u = x[0] - s.center[0];
  const double v = x[1] - s.center[1];
  const int m = s.max_degree;
  out[0] = 1.0;
  if (s.dim == 2) {
    double re = 1.0, im = 0.0;
    for (int k = 1; k <= m; ++k) {
      double nre = u * re - v * im;
      double nim = u * im + v * re;
      re = nre;
      im = nim;
      out[2 * k - 1] = re;
      out[2 * k] = im;
    }
    return;
  }
  const double w = x[2] - s.center[2];
  const double r2 = u * u + v * v + w * w;
  // cs[k] + i sn[k] = (u + i v)^k
  double cs = 1.0, sn = 0.0;
  double double_factorial = 1.0;  // (2k - 1)!!
  for (int k = 0; k <= m; ++k) {
    if (k > 0) {
      double ncs = u * cs - v * sn;
      double nsn = u * sn + v * cs;
      cs = ncs;
      sn = nsn;
      double_factorial *= 2 * k - 1;
    }
    // Q_l^k(w, r^2) with r^l P_l^k = Q_l^k * rho^k, climbing l from k.
    double q_prev = 0.0;
    double q = double_factorial;
    for (int l = k; l <= m; ++l) {
      if (l == k + 1) {
        q_prev = q;
        q = (2 * k + 1) * w * q;
      } else if (l > k + 1) {
        double next = ((2 * l - 1) * w * q - (l + k - 1) * r2 * q_prev) / (l - k);
        q_prev = q;
        q = next;
      }
      const int base = l * l;
      if (k == 0) {
        out[base] = q;
      } else {
        double norm = std::sqrt(2.0 * std::exp(std::lgamma(l - k + 1.0) - std::lgamma(l + k + 1.0)));
        out[base + 2 * k - 1] = norm * q * cs;
        out[base + 2 * k] = norm * q * sn;
      }
    }
  }
}

inline Eigen::VectorXd eval_basis(const BasisSpec& s, const Point& x) {
  check_spec(s);
  Eigen::VectorXd out(basis_size(s));
  eval_basis_into(s, x, {out.data(), static_cast<std::size_t>(out.size())});
  return out;
}

/// Row i holds the basis evaluated at points[i].
inline Eigen::MatrixXd basis_matrix(const BasisSpec& s, std::span<const Point> points) {
  check_spec(s);
  const int n = basis_size(s);
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rows(
      static_cast<Eigen::Index>(points.size()), n);
  for (std::size_t i = 0; i < points.size(); ++i)
    eval_basis_into(s, points[i], {rows.row(static_cast<Eigen::Index>(i)).data(), static_cast<std::size_t>(n)});
  return rows;
}

inline Eigen::MatrixXd basis_matrix(const BasisSpec& s, const SampledSet& set) {
  return basis_matrix(s, std::span<const Point>(set.points));
}

class HarmonicPoly {
 public:
  HarmonicPoly(BasisSpec spec, Eigen::VectorXd coeffs) : spec_(spec), coeffs_(std::move(coeffs)) {
    check_spec(spec_);
    if (coeffs_.size() != basis_size(spec_))
      throw std::invalid_argument("HarmonicPoly: coefficient count " + std::to_string(coeffs_.size()) +
                                  " does not match basis size " + std::to_string(basis_size(spec_)));
    if (!coeffs_.allFinite()) throw std::invalid_argument("HarmonicPoly: coefficients must be finite");
  }

  static HarmonicPoly zero(BasisSpec spec) {
    check_spec(spec);
    return {spec, Eigen::VectorXd::Zero(basis_size(spec))};
  }

  const BasisSpec& spec() const { return spec_; }
  const Eigen::VectorXd& coeffs() const { return coeffs_; }
  int degree() const { return spec_.max_degree; }

  double operator()(const Point& x) const { return eval_basis(spec_, x).dot(coeffs_); }

  Eigen::VectorXd values_on(const SampledSet& s) const { return basis_matrix(spec_, s) * coeffs_; }

 private:
  BasisSpec spec_;
  Eigen::VectorXd coeffs_;
};

inline double eval(const HarmonicPoly& p, const Point& x) { return p(x); }

inline double sup_norm(const HarmonicPoly& p, const SampledSet& s) {
  if (s.empty()) throw std::invalid_argument("sup_norm: empty set");
  return p.values_on(s).cwiseAbs().maxCoeff();
}

}  // namespace qharm
