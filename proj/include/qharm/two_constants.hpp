#pragma once

// Empirical checks of the two-constants inequality
//
//   ||u||_K <= C ||u||_E^{1 - alpha - eps} ||u||_D^{alpha + eps}
//
// on random and on LP-adversarial harmonic polynomials. C is measured, never
// proven; fitted_C carries a 1.5 engineering margin over the worst ratio seen.
// Polynomials stand in for all harmonic u on D, so ratios can understate C.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "qharm/chi_measure.hpp"
#include "qharm/geometry.hpp"
#include "qharm/harmonic_basis.hpp"
#include "qharm/lp.hpp"

namespace qharm {

inline constexpr double kFittedMargin = 1.5;

struct TwoConstantsReport {
  double alpha = 0.0;
  double eps = 0.0;
  std::string K_label;
  int degree = 0;
  std::uint64_t seed = 0;
  double worst_ratio = 0.0;
  double worst_T = 1.0;  // ||u||_D / ||u||_E of the worst sample
  double fitted_C = 0.0;
  int samples_tested = 0;
  int samples_skipped = 0;  // ||u||_E vanished
  int violations = 0;       // against fitted_C
  std::vector<double> ratios;
  double adversarial_ratio = std::numeric_limits<double>::quiet_NaN();
};

inline void check_exponents(double alpha, double eps) {
  if (!(alpha > 0 && alpha < 1)) throw std::invalid_argument("two-constants: alpha must lie in (0, 1)");
  if (!(eps > 0)) throw std::invalid_argument("two-constants: eps must be > 0");
  if (!(alpha + eps < 1)) throw std::invalid_argument("two-constants: alpha + eps must be < 1");
}

inline double two_constants_ratio(double norm_K, double norm_E, double norm_D, double weight) {
  return norm_K / (std::pow(norm_E, 1 - weight) * std::pow(norm_D, weight));
}

/// Seeded polynomials with i.i.d. standard normal coefficients on the basis
/// rescaled to unit sup norm on D, so no single degree swamps ||u||_D.
class RandomHarmonic {
 public:
  RandomHarmonic(const BasisSpec& spec, const SampledSet& D, std::uint64_t seed) : spec_(spec), rng_(seed) {
    check_spec(spec_);
    Eigen::MatrixXd phi = basis_matrix(spec_, D);
    scale_ = phi.colwise().lpNorm<Eigen::Infinity>().transpose();
    for (auto& s : scale_) s = s > 0 ? 1.0 / s : 1.0;
  }

  HarmonicPoly next() {
    Eigen::VectorXd c(scale_.size());
    for (Eigen::Index j = 0; j < c.size(); ++j) c(j) = normal_(rng_) * scale_(j);
    return {spec_, c};
  }

 private:
  BasisSpec spec_;
  Eigen::VectorXd scale_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

inline TwoConstantsReport verify_random(const SampledSet& E, const SampledSet& K, const SampledSet& D, double alpha,
                                        double eps, int degree, int n_samples, std::uint64_t seed,
                                        std::array<double, 3> center = {0, 0, 0}) {
  check_exponents(alpha, eps);
  if (n_samples < 1) throw std::invalid_argument("two-constants: n_samples must be >= 1");
  if (E.empty() || K.empty() || D.empty()) throw std::invalid_argument("two-constants: empty sample set");
  BasisSpec spec{E.dim(), degree, center};
  RandomHarmonic gen(spec, D, seed);
  const Eigen::MatrixXd phi_e = basis_matrix(spec, E), phi_k = basis_matrix(spec, K), phi_d = basis_matrix(spec, D);

  TwoConstantsReport rep;
  rep.alpha = alpha;
  rep.eps = eps;
  rep.K_label = K.label;
  rep.degree = degree;
  rep.seed = seed;
  const double w = alpha + eps;
  for (int i = 0; i < n_samples; ++i) {
    auto u = gen.next();
    const double ne = (phi_e * u.coeffs()).cwiseAbs().maxCoeff();
    const double nk = (phi_k * u.coeffs()).cwiseAbs().maxCoeff();
    const double nd = (phi_d * u.coeffs()).cwiseAbs().maxCoeff();
    if (!(ne > 1e-14 * nd)) {
      ++rep.samples_skipped;
      continue;
    }
    const double r = two_constants_ratio(nk, ne, nd, w);
    rep.ratios.push_back(r);
    ++rep.samples_tested;
    if (r > rep.worst_ratio) {
      rep.worst_ratio = r;
      rep.worst_T = nd / ne;
    }
  }
  rep.fitted_C = kFittedMargin * rep.worst_ratio;
  for (double r : rep.ratios) rep.violations += r > rep.fitted_C;
  return rep;
}

struct AdversarialResult {
  std::vector<double> t_grid;
  std::vector<double> best_value;  // max over y in K of u(y)
  std::vector<double> ratio;       // best_value / T^{alpha + eps}
  double adversarial_ratio = 0.0;
};

/// For each T: maximize u(y) over y in K subject to ||u||_E <= 1 and
/// ||u||_D <= T (odd objective, so one sign suffices).
inline AdversarialResult adversarial_search(const SampledSet& E, const SampledSet& K, const SampledSet& D, double alpha,
                                            double eps, int degree, const std::vector<double>& t_grid,
                                            std::array<double, 3> center = {0, 0, 0}) {
  check_exponents(alpha, eps);
  if (t_grid.empty()) throw std::invalid_argument("two-constants: empty T grid");
  for (double t : t_grid)
    if (!(t >= 1 && std::isfinite(t))) throw std::invalid_argument("two-constants: T values must be finite and >= 1");
  if (E.empty() || K.empty() || D.empty()) throw std::invalid_argument("two-constants: empty sample set");
  BasisSpec spec{E.dim(), degree, center};
  check_spec(spec);
  const Eigen::MatrixXd phi_e = basis_matrix(spec, E), phi_d = basis_matrix(spec, D), phi_k = basis_matrix(spec, K);
  const Eigen::Index ne = phi_e.rows(), nd = phi_d.rows();
  lp::Problem prob;
  prob.constraints.resize(2 * (ne + nd), phi_e.cols());
  prob.constraints << phi_e, -phi_e, phi_d, -phi_d;
  prob.bounds.resize(prob.constraints.rows());
  prob.bounds.head(2 * ne).setOnes();

  AdversarialResult out;
  out.t_grid = t_grid;
  const double w = alpha + eps;
  for (double t : t_grid) {
    prob.bounds.tail(2 * nd).setConstant(t);
    std::vector<Eigen::Index> warm;
    double best = 0.0;
    for (Eigen::Index i = 0; i < phi_k.rows(); ++i) {
      prob.objective = phi_k.row(i).transpose();
      auto s = lp::solve_by_rows(prob, {}, warm);
      if (s.status == lp::Status::unbounded)
        throw std::runtime_error("two-constants: adversarial LP unbounded (E and D annihilated)");
      if (s.status != lp::Status::optimal) throw std::runtime_error("two-constants: adversarial LP infeasible");
      best = std::max(best, s.objective_value);
      warm = s.basis;
    }
    out.best_value.push_back(best);
    out.ratio.push_back(best / std::pow(t, w));
    out.adversarial_ratio = std::max(out.adversarial_ratio, out.ratio.back());
  }
  return out;
}

struct SublevelCheck {
  bool inside = true;  // every tested K sample has chi_0 < alpha
  double max_chi0 = 0.0;
  int points_tested = 0;
};

/// Whether K sits in {chi_0(., E, D) < alpha}; tests at most max_points of
/// K's samples, evenly strided.
inline SublevelCheck check_sublevel(const SampledSet& E, const SampledSet& K, const SampledSet& D, double alpha,
                                    const ChiParams& p = {}, std::size_t max_points = 24) {
  ChiSolver solver(E, D, p);
  SublevelCheck out;
  const std::size_t stride = std::max<std::size_t>(1, (K.size() + max_points - 1) / max_points);
  for (std::size_t i = 0; i < K.size(); i += stride) {
    double c = solver.chi0_at(K.points[i]).chi0;
    out.max_chi0 = std::max(out.max_chi0, c);
    ++out.points_tested;
  }
  out.inside = out.max_chi0 < alpha;
  return out;
}

}  // namespace qharm
