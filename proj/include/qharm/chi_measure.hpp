#pragma once

// The extremal function
//
//   chi_eps(x, E, D) = sup { alpha ln|u(x)| : 0 < alpha < eps, u harmonic on D,
//                            ||u||_E <= 1, ||u||_D <= e^{1/alpha} }
//
// with u restricted to harmonic polynomials of degree <= N, and its limit
// chi_0 as eps -> 0 (read off the last eps of a decreasing grid).
//
// T = e^{1/alpha} is used as the D bound directly while T <= e^30. Beyond
// that the LP is solved for w = u / T (D bound 1, E bound 1/T) and
// alpha ln u(x) = 1 + alpha ln w(x), so nothing overflows at alpha = 1/700.
// Past e^30 double precision no longer resolves the E bound, but by then a
// bounded E-only problem has usually saturated (see alpha_profile).
// The objective is odd in u, so maximizing u(x) covers both signs.

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qharm/geometry.hpp"
#include "qharm/harmonic_basis.hpp"
#include "qharm/lp.hpp"

namespace qharm {

inline constexpr double kAlphaMin = 1.0 / 700.0;
inline constexpr double kMaxDirectLogBound = 30.0;

struct ChiParams {
  std::vector<double> epsilon_grid{0.4, 0.3, 0.2};
  int alpha_per_epsilon = 6;
  int surrogate_degree = 10;
  double tolerance = 0.01;
};

inline void check_params(const ChiParams& p, int dim = 2) {
  if (p.epsilon_grid.empty()) throw std::invalid_argument("chi: epsilon_grid is empty");
  for (std::size_t i = 0; i < p.epsilon_grid.size(); ++i) {
    double e = p.epsilon_grid[i];
    if (!(e > 0 && e < 1)) throw std::invalid_argument("chi: epsilon values must lie in (0, 1)");
    if (i > 0 && !(e < p.epsilon_grid[i - 1])) throw std::invalid_argument("chi: epsilon_grid must be strictly decreasing");
  }
  if (p.alpha_per_epsilon < 1) throw std::invalid_argument("chi: alpha_per_epsilon must be >= 1");
  if (p.surrogate_degree < 1) throw std::invalid_argument("chi: surrogate degree N must be >= 1");
  check_spec({dim, p.surrogate_degree});
  if (!(p.tolerance > 0)) throw std::invalid_argument("chi: tolerance must be > 0");
}

/// Geometric alpha samples in [max(eps/64, 1/700), eps (1 - 1/64)].
inline std::vector<double> alpha_grid(double eps, int count) {
  const double lo = std::max(eps / 64, kAlphaMin);
  const double hi = eps * (1 - 1.0 / 64);
  std::vector<double> out;
  if (count == 1 || hi <= lo) return {hi};
  for (int i = 0; i < count; ++i) out.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1)));
  return out;
}

struct Chi0Result {
  std::vector<double> chi_eps;  // one per epsilon_grid entry
  double chi0 = 0.0;
  bool converged = false;
};

struct Annihilation {
  bool annihilated = false;
  std::optional<HarmonicPoly> witness;  // vanishes on the samples, unit coefficient norm
  double relative_singular_value = 1.0;
};

/// Whether some nonzero polynomial of the basis vanishes on every sample of E.
inline Annihilation annihilation_test(const SampledSet& E, const BasisSpec& spec, double rel_tol = 1e-10) {
  Eigen::MatrixXd phi = basis_matrix(spec, E);
  const Eigen::Index n = phi.cols();
  if (phi.rows() < n) {
    // Fewer samples than unknowns: a null vector always exists.
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(phi, Eigen::ComputeFullV);
    return {true, HarmonicPoly(spec, svd.matrixV().col(n - 1)), 0.0};
  }
  // Column scaling so a large-degree element does not hide a small one.
  Eigen::VectorXd scale = phi.colwise().lpNorm<Eigen::Infinity>().transpose();
  for (auto& s : scale)
    if (s == 0) s = 1;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(phi * scale.cwiseInverse().asDiagonal(), Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  double rel = sv(n - 1) / sv(0);
  if (rel >= rel_tol) return {false, std::nullopt, rel};
  Eigen::VectorXd c = scale.cwiseInverse().asDiagonal() * svd.matrixV().col(n - 1);
  return {true, HarmonicPoly(spec, c / c.norm()), rel};
}

class ChiSolver {
 public:
  ChiSolver(const SampledSet& E, const SampledSet& D, ChiParams params, std::array<double, 3> center = {0, 0, 0})
      : params_(std::move(params)), d_index_(D) {
    if (E.empty()) throw std::invalid_argument("chi: E has no samples");
    if (D.empty()) throw std::invalid_argument("chi: D has no samples");
    if (E.dim() != D.dim()) throw std::invalid_argument("chi: E and D dimensions differ");
    check_params(params_, E.dim());
    spec_ = {E.dim(), params_.surrogate_degree, center};
    d_mesh_ = D.mesh > 0 ? D.mesh : 0.1;
    phi_e_ = basis_matrix(spec_, E);
    phi_d_ = basis_matrix(spec_, D);
    for (double eps : params_.epsilon_grid)
      for (double a : alpha_grid(eps, params_.alpha_per_epsilon)) alphas_.push_back(a);
    std::sort(alphas_.begin(), alphas_.end());
    alphas_.erase(std::unique(alphas_.begin(), alphas_.end()), alphas_.end());

    const Eigen::Index ne = phi_e_.rows(), nd = phi_d_.rows(), n = phi_e_.cols();
    full_.constraints.resize(2 * (ne + nd), n);
    full_.constraints << phi_e_, -phi_e_, phi_d_, -phi_d_;
    full_.bounds = Eigen::VectorXd::Ones(2 * (ne + nd));
    e_only_.constraints.resize(2 * ne, n);
    e_only_.constraints << phi_e_, -phi_e_;
    e_only_.bounds = Eigen::VectorXd::Ones(2 * ne);
  }

  const ChiParams& params() const { return params_; }
  const BasisSpec& spec() const { return spec_; }
  const std::vector<double>& alphas() const { return alphas_; }

  /// alpha ln u*(x) for every alpha sample (floored at 0), ascending alpha.
  std::vector<double> alpha_profile(const Point& x) const {
    if (x.dim() != spec_.dim) throw std::invalid_argument("chi: point dimension mismatch");
    if (d_index_.distance_to(x) > d_mesh_ * (1 + 1e-9))
      throw std::invalid_argument("chi: evaluation point lies outside D's region");
    const Eigen::VectorXd obj = eval_basis(spec_, x);
    const Eigen::Index ne = phi_e_.rows();

    // With only the E constraints the maximum is V_inf, attained by some u*
    // with ||u*||_D = T*; every T >= T* then gives the same V.
    double v_inf = std::numeric_limits<double>::infinity();
    double log_t_star = std::numeric_limits<double>::infinity();
    // The E-only optimal rows keep their indices in full_ and their
    // multipliers do not depend on the bounds, so they are a fallback start.
    std::vector<Eigen::Index> e_basis;
    {
      lp::Problem p = e_only_;
      p.objective = obj;
      auto s = lp::solve_by_rows(p);
      if (s.status == lp::Status::optimal) {
        v_inf = s.objective_value;
        double t_star = (phi_d_ * s.x).lpNorm<Eigen::Infinity>();
        log_t_star = std::log(std::max(t_star, 1.0));
        e_basis = s.basis;
      } else if (s.status == lp::Status::infeasible) {
        throw std::logic_error("chi: E-only LP infeasible");
      }
    }

    // Descending alpha, so each solve starts from the previous optimum with
    // the mildest possible change of bound ratio e^{1/alpha}.
    std::vector<double> out(alphas_.size(), 0.0);
    std::vector<Eigen::Index> warm;
    auto attempt = [](const lp::Problem& p, const std::vector<Eigen::Index>& start) -> std::optional<lp::Solution> {
      try {
        auto s = lp::solve_by_rows(p, {}, start);
        if (s.status == lp::Status::optimal) return s;
      } catch (const lp::IterationLimit&) {
      } catch (const std::logic_error&) {
      }
      return std::nullopt;
    };
    for (std::size_t i = alphas_.size(); i-- > 0;) {
      const double a = alphas_[i];
      double value;
      if (1.0 / a >= log_t_star) {
        value = v_inf > 0 ? a * std::log(v_inf) : 0.0;
      } else {
        lp::Problem p = full_;
        p.objective = obj;
        const bool direct = 1.0 / a <= kMaxDirectLogBound;
        if (direct)
          p.bounds.tail(p.bounds.size() - 2 * ne).setConstant(std::exp(1.0 / a));
        else
          p.bounds.head(2 * ne).setConstant(std::exp(-1.0 / a));
        // u = 0 is always feasible, so any other status is numerical.
        auto s = attempt(p, warm);
        if (!s && !warm.empty()) s = attempt(p, {});
        if (!s && !e_basis.empty()) s = attempt(p, e_basis);
        if (!s) throw std::logic_error("chi: extremal LP failed at alpha = " + std::to_string(a));
        warm = s->basis;
        if (s->objective_value <= 0)
          value = 0.0;
        else
          value = direct ? a * std::log(s->objective_value) : 1.0 + a * std::log(s->objective_value);
      }
      out[i] = std::max(0.0, value);
    }
    return out;
  }

  double chi_eps_at(const Point& x, double eps) const {
    auto prof = alpha_profile(x);
    return reduce(prof, eps);
  }

  Chi0Result chi0_at(const Point& x) const {
    auto prof = alpha_profile(x);
    Chi0Result r;
    for (double eps : params_.epsilon_grid) r.chi_eps.push_back(reduce(prof, eps));
    for (std::size_t i = 1; i < r.chi_eps.size(); ++i)
      if (r.chi_eps[i] > r.chi_eps[i - 1] + 10 * params_.tolerance)
        throw std::runtime_error("chi: epsilon monotonicity violated beyond 10x tolerance; discretization too coarse");
    r.chi0 = r.chi_eps.back();
    r.converged = r.chi_eps.size() >= 2 && std::abs(r.chi_eps[r.chi_eps.size() - 1] - r.chi_eps[r.chi_eps.size() - 2]) <
                                               params_.tolerance;
    return r;
  }

 private:
  // sup over the sampled alphas inside (0, eps).
  double reduce(const std::vector<double>& prof, double eps) const {
    if (!(eps > 0 && eps < 1)) throw std::invalid_argument("chi: eps must lie in (0, 1)");
    double best = 0.0;
    bool any = false;
    for (std::size_t i = 0; i < alphas_.size(); ++i)
      if (alphas_[i] < eps) {
        best = std::max(best, prof[i]);
        any = true;
      }
    if (!any) throw std::invalid_argument("chi: no alpha sample below eps = " + std::to_string(eps));
    return best;
  }

  ChiParams params_;
  BasisSpec spec_;
  NearestIndex d_index_;
  double d_mesh_ = 0.1;
  Eigen::MatrixXd phi_e_, phi_d_;
  std::vector<double> alphas_;
  lp::Problem full_, e_only_;
};

inline double chi_eps_at(const Point& x, const SampledSet& E, const SampledSet& D, double eps, const ChiParams& p) {
  return ChiSolver(E, D, p).chi_eps_at(x, eps);
}

inline Chi0Result chi0_at(const Point& x, const SampledSet& E, const SampledSet& D, const ChiParams& p) {
  return ChiSolver(E, D, p).chi0_at(x);
}

// ---------------------------------------------------------------------------

struct GridSpec {
  Point lo, hi;
  std::array<int, 3> counts{20, 20, 1};
};

/// Tensor grid over the box, keeping the points of D's region (or, for a D
/// without a source shape, the points within D.mesh of its samples).
inline std::vector<Point> grid_points(const GridSpec& g, const SampledSet& D) {
  const int dim = g.lo.dim();
  if (g.hi.dim() != dim) throw std::invalid_argument("grid: corner dimensions differ");
  if (D.dim() != dim) throw std::invalid_argument("grid: dimension differs from D");
  for (int a = 0; a < dim; ++a) {
    if (g.counts[a] < 1) throw std::invalid_argument("grid: counts must be >= 1");
    if (!(g.lo[a] <= g.hi[a])) throw std::invalid_argument("grid: lo must be <= hi");
  }
  NearestIndex index(D);
  const double keep = (D.mesh > 0 ? D.mesh : 0.1) * (1 + 1e-9);
  auto coord = [&](int a, int i) {
    return g.counts[a] == 1 ? (g.lo[a] + g.hi[a]) / 2 : g.lo[a] + (g.hi[a] - g.lo[a]) * i / (g.counts[a] - 1);
  };
  std::vector<Point> out;
  const int nz = dim == 3 ? g.counts[2] : 1;
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < g.counts[1]; ++j)
      for (int i = 0; i < g.counts[0]; ++i) {
        Point p = dim == 2 ? Point(coord(0, i), coord(1, j)) : Point(coord(0, i), coord(1, j), coord(2, k));
        if (D.source ? contains(*D.source, p) : index.distance_to(p) <= keep) out.push_back(p);
      }
  return out;
}

inline double grid_spacing(const GridSpec& g) {
  double h = 0.0;
  for (int a = 0; a < g.lo.dim(); ++a)
    if (g.counts[a] > 1) h = std::max(h, (g.hi[a] - g.lo[a]) / (g.counts[a] - 1));
  return h;
}

struct ChiField {
  std::vector<double> epsilon_grid;
  std::vector<Point> grid;
  std::vector<std::vector<double>> chi_eps;  // [point][eps]
  std::vector<double> chi0;
  std::vector<bool> converged;
};

inline ChiField chi_field(const std::vector<Point>& pts, const ChiSolver& solver) {
  ChiField f;
  f.epsilon_grid = solver.params().epsilon_grid;
  f.grid = pts;
  for (const auto& x : pts) {
    auto r = solver.chi0_at(x);
    f.chi_eps.push_back(std::move(r.chi_eps));
    f.chi0.push_back(r.chi0);
    f.converged.push_back(r.converged);
  }
  return f;
}

inline ChiField chi_field(const GridSpec& g, const SampledSet& E, const SampledSet& D, const ChiParams& p) {
  return chi_field(grid_points(g, D), ChiSolver(E, D, p));
}

/// Grid points with chi_0 < alpha. May be empty.
inline SampledSet sublevel(const ChiField& f, double alpha) {
  if (!(alpha > 0 && alpha < 1)) throw std::invalid_argument("sublevel: alpha must lie in (0, 1)");
  SampledSet s{"chi_sublevel", {}, std::nullopt, 0.0};
  for (std::size_t i = 0; i < f.grid.size(); ++i)
    if (f.chi0[i] < alpha) s.points.push_back(f.grid[i]);
  return s;
}

struct NullChiEvidence {
  bool is_null = false;        // min chi_0 over the tested points > 1 - 2 tol
  bool annihilated = false;    // some degree-N polynomial vanishes on E's samples
  double min_chi0 = 1.0;
  Point witness;               // point attaining min_chi0
  std::size_t points_tested = 0;
  std::size_t points_excluded = 0;  // grid points too close to E
  std::optional<HarmonicPoly> null_polynomial;
  ChiField field;
};

/// Evidence for chi_0(., E, D) == 1 read off an existing field. Grid points
/// within `gap` of E are left out: there chi_0 is pinned near 0 by sample
/// proximity, which the upper regularization of the definition would not see
/// for a null set.
inline NullChiEvidence null_chi_evidence(const ChiField& field, const SampledSet& E, const ChiSolver& solver,
                                         double gap) {
  if (field.grid.empty()) throw std::invalid_argument("is_null_chi: no grid point lies in D's region");
  NearestIndex e_index(E);
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < field.grid.size(); ++i)
    if (e_index.distance_to(field.grid[i]) > gap) kept.push_back(i);
  NullChiEvidence ev;
  ev.points_excluded = field.grid.size() - kept.size();
  if (kept.empty()) {
    kept.resize(field.grid.size());
    std::iota(kept.begin(), kept.end(), std::size_t{0});
    ev.points_excluded = 0;
  }
  ev.field.epsilon_grid = field.epsilon_grid;
  for (auto i : kept) {
    ev.field.grid.push_back(field.grid[i]);
    ev.field.chi_eps.push_back(field.chi_eps[i]);
    ev.field.chi0.push_back(field.chi0[i]);
    ev.field.converged.push_back(field.converged[i]);
  }
  ev.points_tested = kept.size();
  auto it = std::min_element(ev.field.chi0.begin(), ev.field.chi0.end());
  ev.min_chi0 = *it;
  ev.witness = ev.field.grid[static_cast<std::size_t>(it - ev.field.chi0.begin())];
  ev.is_null = ev.min_chi0 > 1 - 2 * solver.params().tolerance;
  auto ann = annihilation_test(E, solver.spec());
  ev.annihilated = ann.annihilated;
  ev.null_polynomial = ann.witness;
  return ev;
}

inline double null_chi_gap(const GridSpec& g, const SampledSet& E) { return std::max(grid_spacing(g) / 2, E.mesh); }

/// Same, evaluating chi only where it is needed.
inline NullChiEvidence is_null_chi(const SampledSet& E, const SampledSet& D, const ChiParams& p, const GridSpec& g) {
  ChiSolver solver(E, D, p);
  auto pts = grid_points(g, D);
  if (pts.empty()) throw std::invalid_argument("is_null_chi: no grid point lies in D's region");
  NearestIndex e_index(E);
  const double gap = null_chi_gap(g, E);
  std::vector<Point> kept;
  for (const auto& x : pts)
    if (e_index.distance_to(x) > gap) kept.push_back(x);
  if (kept.empty()) kept = pts;
  auto ev = null_chi_evidence(chi_field(kept, solver), E, solver, gap);
  ev.points_excluded = pts.size() - kept.size();
  return ev;
}

}  // namespace qharm
