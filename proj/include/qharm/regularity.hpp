#pragma once

// Bernstein ratios
//
//   rho_m = sup { ||P||_B / ||P||_{E ∩ B} : P harmonic, deg P <= m },  B = B(x0, r)
//
// and their m-th root growth, the observable behind H-regularity at x0.
// ||P||_B is read on the bounding sphere of B (maximum principle), so each
// sphere sample y costs one LP: maximize P(y) subject to |P| <= 1 on E ∩ B.
// P -> -P covers the other sign.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qharm/chi_measure.hpp"
#include "qharm/geometry.hpp"
#include "qharm/harmonic_basis.hpp"
#include "qharm/lp.hpp"

namespace qharm {

enum class RegularityVerdict { regular_evidence, irregular_evidence, degenerate_annihilated };

inline const char* to_string(RegularityVerdict v) {
  switch (v) {
    case RegularityVerdict::regular_evidence: return "regular_evidence";
    case RegularityVerdict::irregular_evidence: return "irregular_evidence";
    case RegularityVerdict::degenerate_annihilated: return "degenerate_annihilated";
  }
  return "?";
}

inline constexpr double kRatioSentinel = std::numeric_limits<double>::infinity();

struct RegularityParams {
  double ball_mesh = 0.0;  // 0 picks r / 10
  double theta = 0.1;
  double annihilation_tol = 1e-10;
};

struct BernsteinResult {
  double ratio = 1.0;  // kRatioSentinel when a polynomial vanishes on E ∩ B
  // Set with the sentinel; scaled so its sup over the ball samples is 1.
  std::optional<HarmonicPoly> witness;
  double witness_on_E = 0.0;
};

struct RegularityProfile {
  Point x0;
  double r = 0.0;
  std::vector<double> ratios;  // rho_1 .. rho_{m_max}
  double growth_estimate = 1.0;
  RegularityVerdict verdict = RegularityVerdict::regular_evidence;
  int window = 0;
  std::optional<HarmonicPoly> witness;
  int witness_degree = 0;
  double witness_on_E = 0.0;
  double witness_on_ball = 0.0;
};

namespace detail {

struct BallProblem {
  SampledSet constraint;  // E ∩ B
  SampledSet sphere;      // objective samples
  SampledSet ball;        // full ball, for witness norms
};

inline BallProblem ball_problem(const SampledSet& E, const Point& x0, double r, const RegularityParams& p) {
  if (!(r > 0)) throw std::invalid_argument("regularity: r must be > 0");
  if (E.empty()) throw std::invalid_argument("regularity: E has no samples");
  if (x0.dim() != E.dim()) throw std::invalid_argument("regularity: x0 dimension differs from E");
  const double mesh = p.ball_mesh > 0 ? p.ball_mesh : r / 10;
  BallProblem bp;
  bp.constraint = filter(E, [&](const Point& y) { return distance(y, x0) <= r * (1 + 1e-12); }, "E_cap_B");
  if (bp.constraint.empty()) throw std::invalid_argument("regularity: no constraint set (E misses the ball)");
  bp.ball = sample_shape(Disk{x0, r}, mesh);
  bp.sphere = sample_shape(Circle{x0, r}, mesh);  // a sphere in 3D
  return bp;
}

inline BernsteinResult ratio_on(const BallProblem& bp, const BasisSpec& spec, const RegularityParams& p) {
  BernsteinResult out;
  auto sentinel = [&](Eigen::VectorXd c) {
    HarmonicPoly w(spec, std::move(c));
    const double on_ball = sup_norm(w, bp.ball);
    if (on_ball > 0) w = HarmonicPoly(spec, w.coeffs() / on_ball);
    out.ratio = kRatioSentinel;
    out.witness_on_E = sup_norm(w, bp.constraint);
    out.witness = std::move(w);
    return out;
  };
  auto ann = annihilation_test(bp.constraint, spec, p.annihilation_tol);
  if (ann.annihilated) return sentinel(ann.witness->coeffs());

  const Eigen::MatrixXd phi = basis_matrix(spec, bp.constraint);
  lp::Problem prob;
  prob.constraints.resize(2 * phi.rows(), phi.cols());
  prob.constraints << phi, -phi;
  prob.bounds = Eigen::VectorXd::Ones(2 * phi.rows());
  std::vector<Eigen::Index> warm;
  double best = 1.0;
  for (const auto& y : bp.sphere.points) {
    prob.objective = eval_basis(spec, y);
    auto s = lp::solve_by_rows(prob, {}, warm);
    if (s.status == lp::Status::unbounded) {
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(phi, Eigen::ComputeThinV);
      return sentinel(svd.matrixV().col(phi.cols() - 1));
    }
    if (s.status != lp::Status::optimal) throw std::runtime_error("regularity: LP infeasible");
    best = std::max(best, s.objective_value);
    warm = s.basis;
  }
  out.ratio = best;
  return out;
}

inline BasisSpec centered_spec(const Point& x0, int m) {
  return {x0.dim(), m, {x0[0], x0[1], x0.dim() == 3 ? x0[2] : 0.0}};
}

}  // namespace detail

inline BernsteinResult bernstein_ratio(const SampledSet& E, const Point& x0, double r, int m,
                                       const RegularityParams& p = {}) {
  if (m < 0) throw std::invalid_argument("regularity: degree must be >= 0");
  auto bp = detail::ball_problem(E, x0, r, p);
  auto spec = detail::centered_spec(x0, m);
  check_spec(spec);
  return detail::ratio_on(bp, spec, p);
}

inline RegularityProfile regularity_profile(const SampledSet& E, const Point& x0, double r, int m_max, int window,
                                            const RegularityParams& p = {}) {
  if (m_max < 1) throw std::invalid_argument("regularity: m_max must be >= 1");
  if (window < 1 || window > m_max) throw std::invalid_argument("regularity: window must lie in [1, m_max]");
  if (!(p.theta > 0)) throw std::invalid_argument("regularity: theta must be > 0");
  auto top = detail::centered_spec(x0, m_max);
  check_spec(top);
  auto bp = detail::ball_problem(E, x0, r, p);

  RegularityProfile prof;
  prof.x0 = x0;
  prof.r = r;
  prof.window = window;
  for (int m = 1; m <= m_max; ++m) {
    BasisSpec spec = top;
    spec.max_degree = m;
    if (!prof.ratios.empty() && prof.ratios.back() == kRatioSentinel) {
      // A witness of lower degree still annihilates.
      prof.ratios.push_back(kRatioSentinel);
      continue;
    }
    auto res = detail::ratio_on(bp, spec, p);
    if (res.witness) {
      prof.witness = res.witness;
      prof.witness_degree = m;
      prof.witness_on_E = res.witness_on_E;
      prof.witness_on_ball = sup_norm(*res.witness, bp.ball);
    }
    prof.ratios.push_back(res.ratio);
  }

  double growth = 0.0;
  for (int m = m_max - window + 1; m <= m_max; ++m) growth = std::max(growth, std::pow(prof.ratios[m - 1], 1.0 / m));
  prof.growth_estimate = growth;
  if (prof.witness)
    prof.verdict = RegularityVerdict::degenerate_annihilated;
  else if (growth <= 1 + p.theta)
    prof.verdict = RegularityVerdict::regular_evidence;
  else
    prof.verdict = RegularityVerdict::irregular_evidence;
  return prof;
}

struct RegularityScan {
  std::vector<RegularityProfile> profiles;  // r, r/2, r/4
  RegularityVerdict verdict = RegularityVerdict::regular_evidence;
};

/// Profiles over {r, r/2, r/4}. The radius is existential, so one regular
/// profile suffices; otherwise annihilation outranks plain growth.
inline RegularityScan regularity_scan(const SampledSet& E, const Point& x0, double r, int m_max, int window,
                                      const RegularityParams& p = {}) {
  RegularityScan scan;
  bool any_regular = false, any_degenerate = false;
  for (double rr : {r, r / 2, r / 4}) {
    RegularityProfile prof;
    try {
      prof = regularity_profile(E, x0, rr, m_max, window, p);
    } catch (const std::invalid_argument&) {
      if (rr == r) throw;
      continue;  // the smaller ball misses E's samples
    }
    any_regular |= prof.verdict == RegularityVerdict::regular_evidence;
    any_degenerate |= prof.verdict == RegularityVerdict::degenerate_annihilated;
    scan.profiles.push_back(std::move(prof));
  }
  scan.verdict = any_regular      ? RegularityVerdict::regular_evidence
                 : any_degenerate ? RegularityVerdict::degenerate_annihilated
                                  : RegularityVerdict::irregular_evidence;
  return scan;
}

}  // namespace qharm
