#pragma once

// Dense linear programming:  maximize c.x  subject to  A x <= b,  x free.
//
// The solver runs a revised primal simplex on the dual
// standard form  min b.y  s.t.  A^T y = c, y >= 0.  Every problem we solve has
// few variables and many rows, so the working basis is only n_vars wide and
// each iteration costs one pass over A. The primal solution is read off the
// simplex multipliers; the dual vector y doubles as an optimality certificate.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qharm::lp {

enum class Status { optimal, infeasible, unbounded };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::optimal: return "optimal";
    case Status::infeasible: return "infeasible";
    case Status::unbounded: return "unbounded";
  }
  return "?";
}

struct Problem {
  Eigen::VectorXd objective;    // maximize objective . x
  Eigen::MatrixXd constraints;  // one row per inequality
  Eigen::VectorXd bounds;       // constraints * x <= bounds

  Eigen::Index n_vars() const { return objective.size(); }
  Eigen::Index n_rows() const { return constraints.rows(); }
};

struct Solution {
  Status status = Status::infeasible;
  Eigen::VectorXd x;
  double objective_value = 0.0;
  // Nonnegative multipliers with A^T y = c (meaningful when optimal).
  Eigen::VectorXd dual;
  int iterations = 0;
  // Rows whose constraints are tight at the returned vertex (optimal only);
  // feed back through `warm` to restart a related problem.
  std::vector<Eigen::Index> basis;
};

struct Options {
  double pivot_tol = 1e-9;
  double feasibility_tol = 1e-8;
  double optimality_tol = 1e-9;
  int max_iterations = 0;  // 0 picks a size-dependent cap
  int refactor_every = 50;
  bool bland_only = false;  // skip Dantzig pricing entirely
  int verbosity = 0;
  std::ostream* log = nullptr;
};

class IterationLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

class DualSimplex {
 public:
  // cols: n x m, column j is the (scaled) j-th constraint row; rhs is the
  // primal objective and cost the primal bounds.
  DualSimplex(const Eigen::MatrixXd& cols, const Eigen::VectorXd& rhs, const Eigen::VectorXd& cost,
              const Options& opt)
      : a_(cols), rhs_(rhs), cost_(cost), opt_(opt), n_(cols.rows()), m_(cols.cols()) {
    max_iter_ = opt.max_iterations > 0 ? opt.max_iterations
                                       : static_cast<int>(std::max<Eigen::Index>(20000, 60 * (n_ + m_)));
  }

  enum class Outcome { optimal, dual_infeasible, dual_unbounded };

  // `warm` lists column indices of a candidate starting basis; when it is
  // nonsingular and feasible, phase 1 is skipped.
  Outcome run(const std::vector<Eigen::Index>& warm = {}) {
    if (try_warm_start(warm)) {
      if (!iterate(/*phase=*/2)) return Outcome::dual_unbounded;
      return Outcome::optimal;
    }
    init_artificial_basis();
    if (!iterate(/*phase=*/1)) throw std::logic_error("lp: phase 1 reported unbounded");
    double infeas = 0.0;
    for (Eigen::Index r = 0; r < n_; ++r)
      if (is_artificial(basis_[r])) infeas += std::max(0.0, xb_(r));
    if (infeas > opt_.feasibility_tol * std::max(1.0, rhs_.lpNorm<Eigen::Infinity>()))
      return Outcome::dual_infeasible;
    drive_out_artificials();
    if (!iterate(/*phase=*/2)) return Outcome::dual_unbounded;
    return Outcome::optimal;
  }

  std::vector<Eigen::Index> basis() const {
    std::vector<Eigen::Index> out;
    for (auto j : basis_)
      if (!is_artificial(j)) out.push_back(j);
    return out;
  }

  // Simplex multipliers for the equality rows (the primal point).
  Eigen::VectorXd multipliers() const { return pi_; }

  Eigen::VectorXd dual_values() const {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(m_);
    for (Eigen::Index r = 0; r < n_; ++r)
      if (!is_artificial(basis_[r])) y(basis_[r]) = std::max(0.0, xb_(r));
    return y;
  }

  int iterations() const { return iterations_; }

 private:
  bool is_artificial(Eigen::Index j) const { return j >= m_; }

  Eigen::VectorXd column(Eigen::Index j) const {
    if (!is_artificial(j)) return a_.col(j);
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n_);
    e(j - m_) = sign_(j - m_);
    return e;
  }

  double phase_cost(Eigen::Index j, int phase) const {
    if (is_artificial(j)) return phase == 1 ? 1.0 : 0.0;
    return phase == 1 ? 0.0 : cost_(j);
  }

  void init_artificial_basis() {
    sign_.resize(n_);
    basis_.resize(static_cast<std::size_t>(n_));
    in_basis_.assign(static_cast<std::size_t>(m_), 0);
    for (Eigen::Index i = 0; i < n_; ++i) {
      sign_(i) = rhs_(i) >= 0 ? 1.0 : -1.0;
      basis_[i] = m_ + i;
    }
    binv_ = sign_.asDiagonal();
    xb_ = rhs_.cwiseAbs();
    since_refactor_ = 0;
  }

  bool try_warm_start(const std::vector<Eigen::Index>& warm) {
    if (static_cast<Eigen::Index>(warm.size()) != n_ || n_ == 0) return false;
    sign_ = Eigen::VectorXd::Ones(n_);
    basis_.assign(warm.begin(), warm.end());
    in_basis_.assign(static_cast<std::size_t>(m_), 0);
    for (auto j : basis_) {
      if (j < 0 || j >= m_ || in_basis_[j]) return false;
      in_basis_[j] = 1;
    }
    Eigen::MatrixXd b(n_, n_);
    for (Eigen::Index r = 0; r < n_; ++r) b.col(r) = a_.col(basis_[r]);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(b);
    if (lu.rank() < n_ || lu.rcond() < 1e-12) return false;
    binv_ = lu.inverse();
    xb_ = binv_ * rhs_;
    if (!xb_.allFinite() || xb_.minCoeff() < -opt_.feasibility_tol * std::max(1.0, rhs_.lpNorm<Eigen::Infinity>()))
      return false;
    xb_ = xb_.cwiseMax(0.0);
    since_refactor_ = 0;
    return true;
  }

  void refactor() {
    Eigen::MatrixXd b(n_, n_);
    for (Eigen::Index r = 0; r < n_; ++r) b.col(r) = column(basis_[r]);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(b);
    binv_ = lu.inverse();
    xb_ = binv_ * rhs_;
    since_refactor_ = 0;
  }

  void compute_multipliers(int phase) {
    Eigen::VectorXd cb(n_);
    for (Eigen::Index r = 0; r < n_; ++r) cb(r) = phase_cost(basis_[r], phase);
    pi_ = binv_.transpose() * cb;
  }

  void pivot(Eigen::Index r, Eigen::Index q, const Eigen::VectorXd& u) {
    double theta = std::max(0.0, xb_(r)) / u(r);
    xb_ -= theta * u;
    xb_(r) = theta;
    for (Eigen::Index i = 0; i < n_; ++i)
      if (i != r && xb_(i) < 0) xb_(i) = std::max(xb_(i), 0.0);
    const Eigen::RowVectorXd pivot_row = binv_.row(r) / u(r);
    for (Eigen::Index i = 0; i < n_; ++i)
      if (i != r && u(i) != 0.0) binv_.row(i) -= u(i) * pivot_row;
    binv_.row(r) = pivot_row;
    if (!is_artificial(basis_[r])) in_basis_[basis_[r]] = 0;
    basis_[r] = q;
    in_basis_[q] = 1;
    ++since_refactor_;
    ++iterations_;
    if (since_refactor_ >= opt_.refactor_every) refactor();
  }

  // Returns false when the phase objective is unbounded below.
  //
  // Pricing is Dantzig's rule with a Harris ratio test, which keeps pivots
  // large. A long run of degenerate steps switches to Bland's rule until the
  // objective moves again, which rules out cycling.
  bool iterate(int phase) {
    bool fresh = false;
    int degenerate_run = 0;
    double best_obj = cost_of_basis(phase);
    std::vector<Eigen::Index> rejected;  // columns whose apparent ray failed the recheck
    while (true) {
      if (iterations_ >= max_iter_)
        throw IterationLimit("lp: iteration cap " + std::to_string(max_iter_) + " exceeded");
      const bool bland = opt_.bland_only || degenerate_run > 2 * n_ + 10;
      compute_multipliers(phase);
      Eigen::VectorXd d = -(a_.transpose() * pi_);
      if (phase == 2) d += cost_;
      Eigen::Index q = -1;
      double most = 0.0;
      for (Eigen::Index j = 0; j < m_; ++j) {
        if (in_basis_[j] || std::find(rejected.begin(), rejected.end(), j) != rejected.end()) continue;
        const double tol = opt_.optimality_tol * (phase == 2 ? std::max(1.0, std::abs(cost_(j))) : 1.0);
        if (d(j) >= -tol) continue;
        if (bland) {
          q = j;
          break;
        }
        if (q < 0 || d(j) < most) {
          q = j;
          most = d(j);
        }
      }
      if (q < 0) {
        // Confirm optimality against a fresh factorization before stopping.
        if (fresh || since_refactor_ == 0) return true;
        refactor();
        fresh = true;
        continue;
      }
      fresh = false;
      Eigen::VectorXd u = binv_ * a_.col(q);
      Eigen::Index r = bland ? ratio_test_bland(u) : ratio_test_harris(u);
      if (r < 0 && since_refactor_ > 0) {
        // Recheck the ray against a fresh factorization.
        refactor();
        compute_multipliers(phase);
        u = binv_ * a_.col(q);
        r = bland ? ratio_test_bland(u) : ratio_test_harris(u);
      }
      if (r < 0) {
        // A genuine ray lowers the objective when priced directly along it;
        // otherwise the negative reduced cost was rounding, so skip q.
        double slope = phase_cost(q, phase);
        for (Eigen::Index i = 0; i < n_; ++i) slope -= u(i) * phase_cost(basis_[i], phase);
        const double tol = opt_.optimality_tol * (phase == 2 ? std::max(1.0, std::abs(cost_(q))) : 1.0);
        if (slope < -tol) return false;
        rejected.push_back(q);
        continue;
      }
      rejected.clear();
      const double step = std::max(0.0, xb_(r)) / u(r);
      if (opt_.verbosity > 0 && opt_.log)
        *opt_.log << "phase " << phase << " it " << iterations_ << " enter " << q << " leave " << basis_[r]
                  << " step " << step << (bland ? " bland" : "") << '\n';
      if (opt_.verbosity > 1 && opt_.log) {
        *opt_.log << "  basis:";
        for (auto j : basis_) *opt_.log << ' ' << j;
        *opt_.log << "\n  values: " << xb_.transpose() << '\n';
      }
      // Stalling is judged on the recomputed objective relative to its best
      // value; rounding can make nominally improving pivots drift backwards.
      pivot(r, q, u);
      const double obj = cost_of_basis(phase);
      if (obj < best_obj - 1e-11 * std::max(1.0, std::abs(best_obj))) {
        best_obj = obj;
        degenerate_run = 0;
      } else {
        ++degenerate_run;
      }
    }
  }

  double cost_of_basis(int phase) const {
    double obj = 0.0;
    for (Eigen::Index i = 0; i < n_; ++i) obj += phase_cost(basis_[i], phase) * xb_(i);
    return obj;
  }

  double pivot_floor(const Eigen::VectorXd& u) const {
    return opt_.pivot_tol * std::max(1.0, u.lpNorm<Eigen::Infinity>());
  }

  Eigen::Index ratio_test_harris(const Eigen::VectorXd& u) const {
    const double tol = pivot_floor(u);
    const double slack = opt_.feasibility_tol * 1e-1;
    double bound = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n_; ++i)
      if (u(i) > tol) bound = std::min(bound, (std::max(0.0, xb_(i)) + slack) / u(i));
    Eigen::Index r = -1;
    for (Eigen::Index i = 0; i < n_; ++i) {
      if (u(i) <= tol || std::max(0.0, xb_(i)) / u(i) > bound) continue;
      if (r < 0 || u(i) > u(r) || (u(i) == u(r) && leaves_before(basis_[i], basis_[r]))) r = i;
    }
    return r;
  }

  Eigen::Index ratio_test_bland(const Eigen::VectorXd& u) const {
    const double tol = pivot_floor(u);
    Eigen::Index r = -1;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n_; ++i) {
      if (u(i) <= tol) continue;
      double ratio = std::max(0.0, xb_(i)) / u(i);
      if (r < 0 || ratio < best - 1e-14 * std::max(1.0, best)) {
        best = ratio;
        r = i;
      } else if (ratio <= best + 1e-14 * std::max(1.0, best) && leaves_before(basis_[i], basis_[r])) {
        r = i;
      }
    }
    return r;
  }

  // Fixed leaving order for ties: artificials first, then by column index.
  bool leaves_before(Eigen::Index a, Eigen::Index b) const {
    bool aa = is_artificial(a), ab = is_artificial(b);
    if (aa != ab) return aa;
    return a < b;
  }

  void drive_out_artificials() {
    for (Eigen::Index r = 0; r < n_; ++r) {
      if (!is_artificial(basis_[r])) continue;
      Eigen::VectorXd alpha = a_.transpose() * binv_.row(r).transpose();
      Eigen::Index q = -1;
      double best = opt_.pivot_tol * 100;
      for (Eigen::Index j = 0; j < m_; ++j)
        if (!in_basis_[j] && std::abs(alpha(j)) > best) {
          best = std::abs(alpha(j));
          q = j;
        }
      // No candidate: the equality row is redundant and the artificial stays at zero.
      if (q < 0) continue;
      // Degenerate pivot at zero level, so the sign of u(r) does not matter.
      Eigen::VectorXd u = binv_ * a_.col(q);
      xb_(r) = 0.0;
      const Eigen::RowVectorXd pivot_row = binv_.row(r) / u(r);
      for (Eigen::Index i = 0; i < n_; ++i)
        if (i != r && u(i) != 0.0) binv_.row(i) -= u(i) * pivot_row;
      binv_.row(r) = pivot_row;
      basis_[r] = q;
      in_basis_[q] = 1;
      ++iterations_;
    }
    refactor();
  }

  const Eigen::MatrixXd& a_;
  const Eigen::VectorXd& rhs_;
  const Eigen::VectorXd& cost_;
  Options opt_;
  Eigen::Index n_, m_;
  int max_iter_ = 0;
  int iterations_ = 0;
  int since_refactor_ = 0;
  Eigen::VectorXd sign_;
  std::vector<Eigen::Index> basis_;
  std::vector<char> in_basis_;
  Eigen::MatrixXd binv_;
  Eigen::VectorXd xb_;
  Eigen::VectorXd pi_;
};

}  // namespace detail

inline void check_problem(const Problem& p) {
  if (p.constraints.cols() != p.n_vars())
    throw std::invalid_argument("lp: constraint matrix has " + std::to_string(p.constraints.cols()) +
                                " columns, expected " + std::to_string(p.n_vars()));
  if (p.bounds.size() != p.constraints.rows())
    throw std::invalid_argument("lp: bounds length does not match constraint rows");
  if (!p.objective.allFinite() || !p.constraints.allFinite() || !p.bounds.allFinite())
    throw std::invalid_argument("lp: non-finite problem data");
}

namespace detail {

inline Solution solve_once(const Problem& p, const Options& opt, const std::vector<Eigen::Index>& warm) {
  const Eigen::Index n = p.n_vars();
  const Eigen::Index rows = p.n_rows();
  Solution sol;
  sol.dual = Eigen::VectorXd::Zero(rows);

  // Row equilibration; empty rows are either trivially true or infeasible.
  std::vector<Eigen::Index> active;
  Eigen::VectorXd row_scale = Eigen::VectorXd::Ones(rows);
  for (Eigen::Index j = 0; j < rows; ++j) {
    double s = rows > 0 && n > 0 ? p.constraints.row(j).lpNorm<Eigen::Infinity>() : 0.0;
    if (s == 0.0) {
      if (p.bounds(j) < -opt.feasibility_tol * (1.0 + std::abs(p.bounds(j)))) {
        sol.status = Status::infeasible;
        sol.x = Eigen::VectorXd::Zero(n);
        return sol;
      }
      continue;
    }
    row_scale(j) = s;
    active.push_back(j);
  }
  const auto m = static_cast<Eigen::Index>(active.size());
  Eigen::MatrixXd cols(n, m);  // scaled rows, transposed
  Eigen::VectorXd bnd(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    cols.col(k) = p.constraints.row(active[k]).transpose() / row_scale(active[k]);
    bnd(k) = p.bounds(active[k]) / row_scale(active[k]);
  }
  Eigen::VectorXd col_scale = Eigen::VectorXd::Ones(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double t = m > 0 ? cols.row(i).lpNorm<Eigen::Infinity>() : 0.0;
    if (t > 0) {
      col_scale(i) = t;
      cols.row(i) /= t;
    }
  }
  Eigen::VectorXd c_scaled = p.objective.cwiseQuotient(col_scale);

  auto finish_point = [&](const Eigen::VectorXd& xs) {
    sol.x = xs.cwiseQuotient(col_scale);
    sol.objective_value = p.objective.dot(sol.x);
  };

  std::vector<Eigen::Index> warm_local;
  if (!warm.empty()) {
    std::vector<Eigen::Index> local_of(static_cast<std::size_t>(rows), -1);
    for (Eigen::Index k = 0; k < m; ++k) local_of[active[k]] = k;
    for (auto j : warm)
      if (j >= 0 && j < rows && local_of[j] >= 0) warm_local.push_back(local_of[j]);
  }
  detail::DualSimplex dual(cols, c_scaled, bnd, opt);
  auto outcome = dual.run(warm_local);
  sol.iterations = dual.iterations();
  if (outcome == detail::DualSimplex::Outcome::optimal) {
    sol.status = Status::optimal;
    finish_point(dual.multipliers());
    for (auto k : dual.basis()) sol.basis.push_back(active[k]);
    Eigen::VectorXd ys = dual.dual_values();
    for (Eigen::Index k = 0; k < m; ++k) sol.dual(active[k]) = ys(k) / row_scale(active[k]);
    return sol;
  }
  if (outcome == detail::DualSimplex::Outcome::dual_unbounded) {
    sol.status = Status::infeasible;
    sol.x = Eigen::VectorXd::Zero(n);
    return sol;
  }
  // Dual infeasible: the primal is unbounded if it is feasible at all.
  Eigen::VectorXd zero = Eigen::VectorXd::Zero(n);
  detail::DualSimplex feas(cols, zero, bnd, opt);
  auto fo = feas.run();
  sol.iterations += feas.iterations();
  if (fo == detail::DualSimplex::Outcome::optimal) {
    sol.status = Status::unbounded;
    finish_point(feas.multipliers());
    sol.objective_value = std::numeric_limits<double>::infinity();
  } else {
    sol.status = Status::infeasible;
    sol.x = Eigen::VectorXd::Zero(n);
  }
  return sol;
}

inline bool origin_feasible(const Problem& p, double tol) {
  return p.n_rows() == 0 || p.bounds.minCoeff() >= -tol;
}

}  // namespace detail

/// max objective . x subject to constraints x <= bounds, x free.
///
/// Claims that cannot be right (infeasible although x = 0 is feasible) and
/// exhausted iteration budgets are retried cold, first with a stricter pivot
/// tolerance and then under Bland's rule alone.
inline Solution solve(const Problem& p, const Options& opt = {}, const std::vector<Eigen::Index>& warm = {}) {
  check_problem(p);
  const bool zero_ok = detail::origin_feasible(p, opt.feasibility_tol);
  auto plausible = [&](const Solution& s) { return !(s.status == Status::infeasible && zero_ok); };

  std::vector<std::pair<Options, bool>> ladder{{opt, true}};
  for (bool bland : {false, true})
    for (double tol : {1e-7, 1e-6}) {
      Options o = opt;
      o.pivot_tol = std::max(opt.pivot_tol, tol);
      o.bland_only = bland;
      ladder.push_back({o, false});
    }

  std::optional<Solution> last;
  std::string failure;
  int spent = 0;
  for (const auto& [o, use_warm] : ladder) {
    try {
      Solution s = detail::solve_once(p, o, use_warm ? warm : std::vector<Eigen::Index>{});
      spent += s.iterations;
      s.iterations = spent;
      if (plausible(s)) return s;
      last = std::move(s);
    } catch (const IterationLimit& e) {
      failure = e.what();
    } catch (const std::logic_error& e) {
      failure = e.what();
    }
  }
  if (last) return *last;
  throw IterationLimit(failure);
}

/// Same contract as solve(), for tall problems whose optimum is pinned by a
/// few rows: solves on a growing subset of rows, adding the most violated
/// rows until the subset solution satisfies every row.
inline Solution solve_by_rows(const Problem& p, const Options& opt = {}, const std::vector<Eigen::Index>& warm = {}) {
  check_problem(p);
  const Eigen::Index n = p.n_vars();
  const Eigen::Index rows = p.n_rows();
  const Eigen::Index start = std::max<Eigen::Index>(4 * n, 64);
  if (rows <= 2 * start) return solve(p, opt, warm);

  std::vector<char> in(static_cast<std::size_t>(rows), 0);
  std::vector<Eigen::Index> active;
  auto add_spread = [&](Eigen::Index count) {
    // Evenly spaced rows not yet active.
    std::vector<Eigen::Index> free_rows;
    for (Eigen::Index i = 0; i < rows; ++i)
      if (!in[i]) free_rows.push_back(i);
    count = std::min<Eigen::Index>(count, static_cast<Eigen::Index>(free_rows.size()));
    for (Eigen::Index k = 0; k < count; ++k) {
      auto i = free_rows[static_cast<std::size_t>(k * static_cast<Eigen::Index>(free_rows.size()) / count)];
      if (!in[i]) {
        in[i] = 1;
        active.push_back(i);
      }
    }
  };
  add_spread(start);
  for (auto j : warm)
    if (j >= 0 && j < rows && !in[j]) {
      in[j] = 1;
      active.push_back(j);
    }

  int total_iterations = 0;
  std::vector<Eigen::Index> sub_warm;  // full-problem row indices
  const Eigen::Index per_round = std::max<Eigen::Index>(2 * n, 16);
  while (true) {
    std::sort(active.begin(), active.end());
    Problem sub;
    sub.objective = p.objective;
    sub.constraints.resize(static_cast<Eigen::Index>(active.size()), n);
    sub.bounds.resize(static_cast<Eigen::Index>(active.size()));
    for (std::size_t k = 0; k < active.size(); ++k) {
      sub.constraints.row(static_cast<Eigen::Index>(k)) = p.constraints.row(active[k]);
      sub.bounds(static_cast<Eigen::Index>(k)) = p.bounds(active[k]);
    }
    Options o = opt;
    if (o.max_iterations > 0) o.max_iterations = std::max(1, o.max_iterations - total_iterations);
    const std::vector<Eigen::Index>& hint = sub_warm.empty() ? warm : sub_warm;
    std::vector<Eigen::Index> local;
    for (auto j : hint) {
      auto it = std::lower_bound(active.begin(), active.end(), j);
      if (it != active.end() && *it == j) local.push_back(it - active.begin());
    }
    Solution s;
    try {
      s = solve(sub, o, local);
    } catch (const IterationLimit&) {
      return solve(p, opt);  // the full problem gets its own budget
    }
    total_iterations += s.iterations;
    if (s.status == Status::infeasible && detail::origin_feasible(p, opt.feasibility_tol)) return solve(p, opt);
    if (s.status == Status::infeasible) {
      s.dual = Eigen::VectorXd::Zero(rows);
      s.iterations = total_iterations;
      return s;
    }
    if (s.status == Status::unbounded) {
      if (static_cast<Eigen::Index>(active.size()) == rows) {
        s.dual = Eigen::VectorXd::Zero(rows);
        s.iterations = total_iterations;
        return s;
      }
      add_spread(static_cast<Eigen::Index>(active.size()));
      continue;
    }
    Eigen::VectorXd r = p.constraints * s.x - p.bounds;
    std::vector<std::pair<double, Eigen::Index>> viol;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (in[i]) continue;
      double v = r(i) / std::max(1.0, std::abs(p.bounds(i)));
      if (v > opt.optimality_tol) viol.emplace_back(-v, i);
    }
    sub_warm.clear();
    for (auto k : s.basis) sub_warm.push_back(active[static_cast<std::size_t>(k)]);
    if (viol.empty()) {
      Solution out = s;
      out.dual = Eigen::VectorXd::Zero(rows);
      for (std::size_t k = 0; k < active.size(); ++k) out.dual(active[k]) = s.dual(static_cast<Eigen::Index>(k));
      out.basis = sub_warm;
      out.iterations = total_iterations;
      return out;
    }
    std::sort(viol.begin(), viol.end());
    for (std::size_t k = 0; k < viol.size() && static_cast<Eigen::Index>(k) < per_round; ++k) {
      in[viol[k].second] = 1;
      active.push_back(viol[k].second);
    }
  }
}

/// Largest violation of A x <= b, each row measured relative to 1 + |b_i|.
inline double max_relative_violation(const Problem& p, const Eigen::VectorXd& x) {
  Eigen::VectorXd r = p.constraints * x - p.bounds;
  double worst = 0.0;
  for (Eigen::Index i = 0; i < r.size(); ++i) worst = std::max(worst, r(i) / (1.0 + std::abs(p.bounds(i))));
  return worst;
}

}  // namespace qharm::lp
