#pragma once

// Least deviation l_m(f, K) of a function from harmonic polynomials of degree
// <= m on a sampled compact, with the best approximant. Solved as the LP
//   min t  s.t.  -t <= f(x_i) - sum_j c_j phi_j(x_i) <= t  for all samples x_i.

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qharm/geometry.hpp"
#include "qharm/harmonic_basis.hpp"
#include "qharm/lp.hpp"

namespace qharm {

struct TargetFunction {
  std::string label;
  std::function<double(const Point&)> evaluator;

  double operator()(const Point& x) const { return evaluator(x); }
};

namespace targets {

inline TargetFunction zero() {
  return {"zero", [](const Point&) { return 0.0; }};
}

inline TargetFunction constant(double c) {
  return {"constant", [c](const Point&) { return c; }};
}

inline TargetFunction harmonic(HarmonicPoly p) {
  return {"harmonic_poly", [p = std::move(p)](const Point& x) { return p(x); }};
}

inline TargetFunction coordinate(int axis) {
  return {"coordinate", [axis](const Point& x) { return x[axis]; }};
}

inline TargetFunction abs_coordinate(int axis) {
  return {"abs_coordinate", [axis](const Point& x) { return std::abs(x[axis]); }};
}

/// Re 1/(q - z) with z = x1 + i x2 and real q.
inline TargetFunction pole(double q) {
  return {"pole", [q](const Point& x) { return std::real(1.0 / (q - std::complex<double>(x[0], x[1]))); }};
}

/// Re 1/(q - z) minus its Taylor polynomial of degree `degree` at 0, i.e.
/// Re z^(degree+1) / (q^(degree+1) (q - z)).
inline TargetFunction pole_tail(double q, int degree) {
  return {"pole_tail", [q, degree](const Point& x) {
            std::complex<double> z(x[0], x[1]);
            return std::real(std::pow(z / q, degree + 1) / (q - z));
          }};
}

/// Values prescribed on sample points; evaluating elsewhere is an error.
inline TargetFunction table(const std::vector<Point>& pts, const std::vector<double>& values) {
  if (pts.size() != values.size()) throw std::invalid_argument("table target: size mismatch");
  using Key = std::array<long long, 3>;
  auto key = [](const Point& p) {
    Key k{0, 0, 0};
    for (int a = 0; a < p.dim(); ++a) k[a] = std::llround(p[a] * 1e9);
    return k;
  };
  std::map<Key, double> lookup;
  for (std::size_t i = 0; i < pts.size(); ++i) lookup[key(pts[i])] = values[i];
  return {"table", [lookup = std::move(lookup), key](const Point& x) {
            auto it = lookup.find(key(x));
            if (it == lookup.end()) throw std::out_of_range("table target: point not in table");
            return it->second;
          }};
}

}  // namespace targets

struct ApproxResult {
  int degree = 0;
  HarmonicPoly poly;
  double deviation = 0.0;  // sup over K of |f - poly|
  bool is_exact = false;   // deviation < 1e-9
};

inline constexpr double kExactDeviation = 1e-9;

inline Eigen::VectorXd sample_values(const TargetFunction& f, const SampledSet& s) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = f(s.points[i]);
    if (!std::isfinite(v(static_cast<Eigen::Index>(i))))
      throw std::domain_error("target '" + f.label + "' is not finite at a sample point");
  }
  return v;
}

namespace detail {

inline ApproxResult fit(const Eigen::VectorXd& values, const Eigen::MatrixXd& phi, const BasisSpec& spec) {
  const Eigen::Index pts = phi.rows();
  const Eigen::Index n = phi.cols();
  lp::Problem p;
  p.objective = Eigen::VectorXd::Zero(n + 1);
  p.objective(n) = -1.0;
  p.constraints.resize(2 * pts, n + 1);
  p.bounds.resize(2 * pts);
  p.constraints.topLeftCorner(pts, n) = phi;
  p.constraints.bottomLeftCorner(pts, n) = -phi;
  p.constraints.col(n).setConstant(-1.0);
  p.bounds.head(pts) = values;
  p.bounds.tail(pts) = -values;
  auto sol = lp::solve_by_rows(p);
  if (sol.status != lp::Status::optimal)
    throw std::logic_error(std::string("best_approx: minimax LP reported ") + lp::to_string(sol.status));
  HarmonicPoly poly(spec, sol.x.head(n));
  double dev = (values - phi * poly.coeffs()).cwiseAbs().maxCoeff();
  return {spec.max_degree, std::move(poly), dev, dev < kExactDeviation};
}

}  // namespace detail

/// Best uniform approximation of f on the samples of K by harmonic
/// polynomials of degree <= spec.max_degree.
inline ApproxResult best_approx(const TargetFunction& f, const SampledSet& K, const BasisSpec& spec) {
  if (K.empty()) throw std::invalid_argument("best_approx: empty sample set");
  if (K.dim() != spec.dim) throw std::invalid_argument("best_approx: basis dimension does not match K");
  check_spec(spec);
  return detail::fit(sample_values(f, K), basis_matrix(spec, K), spec);
}

/// Results for m = 0..m_max. A degree-m approximant is admissible at degree
/// m + 1, so each entry is at least as good as its predecessor.
inline std::vector<ApproxResult> deviation_sequence(const TargetFunction& f, const SampledSet& K, int m_max,
                                                    BasisSpec base = {}) {
  if (K.empty()) throw std::invalid_argument("deviation_sequence: empty sample set");
  base.dim = K.dim();
  base.max_degree = m_max;
  check_spec(base);
  const Eigen::VectorXd values = sample_values(f, K);
  const Eigen::MatrixXd full = basis_matrix(base, K);
  std::vector<ApproxResult> out;
  for (int m = 0; m <= m_max; ++m) {
    BasisSpec spec = base;
    spec.max_degree = m;
    auto r = detail::fit(values, full.leftCols(basis_size(spec)), spec);
    if (!out.empty() && r.deviation > out.back().deviation) {
      Eigen::VectorXd padded = Eigen::VectorXd::Zero(basis_size(spec));
      padded.head(out.back().poly.coeffs().size()) = out.back().poly.coeffs();
      r = {m, HarmonicPoly(spec, std::move(padded)), out.back().deviation, out.back().is_exact};
    }
    out.push_back(std::move(r));
  }
  return out;
}

struct DeviationBracket {
  double coarse = 0.0;  // on K's samples
  double fine = 0.0;    // on K's shape resampled at half mesh
};

/// Discretization check: re-solves on the source shape at half the mesh.
inline DeviationBracket deviation_bracket(const TargetFunction& f, const SampledSet& K, const BasisSpec& spec) {
  if (!K.source) throw std::invalid_argument("deviation_bracket: K has no source shape to refine");
  auto fine = sample_shape(*K.source, K.mesh / 2);
  return {best_approx(f, K, spec).deviation, best_approx(f, fine, spec).deviation};
}

}  // namespace qharm
