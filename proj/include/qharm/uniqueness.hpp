#pragma once

// Numerical walk through the uniqueness argument for quasiharmonic f with
// zero set E in K:
//
//   (a) best approximants p_m on K, d = lim inf ||f - p_m||_K^{1/m}
//   (b) ||p_m||_E, which inherits the rate d because f = 0 on E
//   (c) ||p_m||_K <= 1 + ||f||_K once the deviation drops below 1
//   (d) ||p_m||_{U_delta} <= M b^m ||p_m||_K, with M, b fitted
//   (e) chi_0(., E, U_delta) not identically 1
//   (f) ||p_m||_U <= C ||p_m||_E^{1-a-b'} ||p_m||_{U_delta}^{a+b'}
//       (a = alpha, b' = beta; the outer norm is taken on U_delta)
//   (g) the bound decays like (d + eps)^{m (1 - 2(alpha + beta))}
//
// The output is evidence, never proof.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qharm/chi_measure.hpp"
#include "qharm/geometry.hpp"
#include "qharm/minimax.hpp"
#include "qharm/rates.hpp"
#include "qharm/regularity.hpp"
#include "qharm/two_constants.hpp"

namespace qharm {

enum class Conclusion { f_identically_zero_evidence, hypotheses_not_met, inconclusive };

inline const char* to_string(Conclusion c) {
  switch (c) {
    case Conclusion::f_identically_zero_evidence: return "f_identically_zero_evidence";
    case Conclusion::hypotheses_not_met: return "hypotheses_not_met";
    case Conclusion::inconclusive: return "inconclusive";
  }
  return "?";
}

struct UniquenessConfig {
  double delta = 0.1;
  double b = 0.0;           // 0 fits b from ||p_m||_{U_delta} / ||p_m||_K
  double alpha = 0.2;
  double beta = 0.2;
  double eps_margin = 0.0;  // 0 picks 0.1 (1 - d_estimate)
  int m_max = 20;
  int window = 6;
  double theta = kDefaultTheta;
  int surrogate_degree = 10;
  double neighborhood_mesh = 0.1;  // sampling of U_delta and U
  int chi_grid = 15;               // per axis, for the null-chi evidence
  double regularity_radius = 0.5;
  int regularity_m_max = 10;
  int regularity_window = 3;
  int two_constants_samples = 200;
  std::uint64_t seed = 1;
  double slope_slack = 0.2;  // relative
};

inline void check_config(const UniquenessConfig& c) {
  auto fail = [](const std::string& m) { throw std::invalid_argument("uniqueness: " + m); };
  if (!(c.delta > 0)) fail("delta must be > 0");
  if (!(c.alpha > 0 && c.alpha < 1)) fail("alpha must lie in (0, 1)");
  if (!(c.beta > 0 && c.beta < 1 - c.alpha)) fail("beta must lie in (0, 1 - alpha)");
  if (!(c.alpha + c.beta < 0.5)) fail("alpha + beta must be < 1/2");
  if (!(c.b == 0 || c.b > 1)) fail("b must be > 1 (or 0 to fit it)");
  if (!(c.eps_margin >= 0 && c.eps_margin < 1)) fail("eps_margin must lie in (0, 1) (or 0 for the default)");
  if (c.m_max < 3) fail("m_max must be >= 3");
  if (c.window < 3 || c.window > c.m_max) fail("window must lie in [3, m_max]");
  if (!(c.theta > 0 && c.theta < 1)) fail("theta must lie in (0, 1)");
  if (c.surrogate_degree < 1) fail("surrogate_degree must be >= 1");
  if (!(c.neighborhood_mesh > 0)) fail("neighborhood_mesh must be > 0");
  if (c.chi_grid < 2) fail("chi_grid must be >= 2");
  if (!(c.regularity_radius > 0)) fail("regularity_radius must be > 0");
  if (c.regularity_m_max < 1 || c.regularity_window < 1 || c.regularity_window > c.regularity_m_max)
    fail("regularity window must lie in [1, regularity_m_max]");
  if (c.two_constants_samples < 1) fail("two_constants_samples must be >= 1");
  if (!(c.slope_slack >= 0)) fail("slope_slack must be >= 0");
}

struct ChainRecord {
  int m = 0;
  double dev_K = 0.0;
  double norm_E = 0.0;
  double norm_K = 0.0;
  double norm_Udelta = 0.0;
  double norm_U = 0.0;           // two-constants bound
  double norm_U_measured = 0.0;  // direct sup over U's samples
  double predicted_bound = 0.0;
};

struct HypothesisChecks {
  DecayClass qh_class = DecayClass::not_quasiharmonic;
  bool E_nonnull_chi = false;
  bool E_annihilated = false;
  RegularityVerdict K_regular_evidence = RegularityVerdict::irregular_evidence;
};

struct UniquenessReport {
  std::vector<ChainRecord> records;
  DecayReport decay;
  double d_estimate = 1.0;
  double eps_margin = 0.0;
  double b = 1.0;
  double M = 1.0;
  double C = 0.0;
  double L = 0.0;
  double f_norm_K = 0.0;
  double f_norm_E = 0.0;
  double f_bound_K = 0.0;  // norm_U + dev_K at m_max
  double slope = 0.0;           // least-squares slope of ln norm_U over the window
  double predicted_slope = 0.0; // (1 - 2(alpha + beta)) ln(d + eps)
  double min_chi0 = 1.0;
  std::size_t U_size = 0;
  bool eq4_holds = true;
  bool eq5_holds = true;
  bool eq7_holds = true;
  HypothesisChecks hypothesis_checks;
  Conclusion conclusion = Conclusion::inconclusive;
  std::vector<std::string> notes;
};

namespace detail {

inline double log_slope(const std::vector<int>& m, const std::vector<double>& y) {
  const double n = static_cast<double>(m.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double x = m[i], v = std::log(y[i]);
    sx += x;
    sy += v;
    sxx += x * x;
    sxy += x * v;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline Point centroid(const SampledSet& s) {
  std::array<double, 3> c{0, 0, 0};
  for (const auto& p : s.points)
    for (int a = 0; a < p.dim(); ++a) c[a] += p[a];
  for (auto& v : c) v /= static_cast<double>(s.size());
  return s.dim() == 3 ? Point(c[0], c[1], c[2]) : Point(c[0], c[1]);
}

inline GridSpec bounding_grid(const SampledSet& s, int count) {
  std::array<double, 3> lo{0, 0, 0}, hi{0, 0, 0};
  const int dim = s.dim();
  for (int a = 0; a < dim; ++a) {
    lo[a] = hi[a] = s.points.front()[a];
    for (const auto& p : s.points) {
      lo[a] = std::min(lo[a], p[a]);
      hi[a] = std::max(hi[a], p[a]);
    }
  }
  GridSpec g;
  g.lo = dim == 3 ? Point(lo[0], lo[1], lo[2]) : Point(lo[0], lo[1]);
  g.hi = dim == 3 ? Point(hi[0], hi[1], hi[2]) : Point(hi[0], hi[1]);
  g.counts = {count, count, dim == 3 ? count : 1};
  return g;
}

}  // namespace detail

inline UniquenessReport run_pipeline(const TargetFunction& f, const Scene& scene, const UniquenessConfig& cfg) {
  check_config(cfg);
  if (scene.K.empty() || scene.E.empty()) throw std::invalid_argument("uniqueness: K and E need samples");
  UniquenessReport rep;
  const auto& K = scene.K;
  const auto& E = scene.E;
  rep.f_norm_K = sample_values(f, K).cwiseAbs().maxCoeff();
  rep.f_norm_E = sample_values(f, E).cwiseAbs().maxCoeff();

  // (a)
  auto seq = deviation_sequence(f, K, cfg.m_max);
  rep.decay = classify(seq, cfg.window, cfg.theta);
  rep.hypothesis_checks.qh_class = rep.decay.classification;
  const bool exact = rep.decay.classification == DecayClass::exactly_polynomial;
  rep.d_estimate = exact ? 0.0 : rep.decay.liminf_estimate;

  for (const auto& r : seq) {
    ChainRecord rec;
    rec.m = r.degree;
    rec.dev_K = r.deviation;
    rec.norm_E = sup_norm(r.poly, E);
    rec.norm_K = sup_norm(r.poly, K);
    rep.records.push_back(rec);
  }

  if (rep.f_norm_K < kZeroDeviation) {
    // Nothing to propagate: every approximant is zero.
    rep.conclusion = Conclusion::f_identically_zero_evidence;
    rep.notes.push_back("f vanishes on every sample of K");
    return rep;
  }
  if (rep.d_estimate >= 1 - cfg.theta) {
    rep.conclusion = Conclusion::hypotheses_not_met;
    rep.notes.push_back("f is not quasiharmonic on this evidence (d_estimate >= 1 - theta)");
    return rep;
  }
  rep.eps_margin = cfg.eps_margin > 0 ? cfg.eps_margin : 0.1 * (1 - rep.d_estimate);
  const double d_eps = rep.d_estimate + rep.eps_margin;
  if (!(d_eps < 1)) throw std::invalid_argument("uniqueness: d_estimate + eps_margin must be < 1");

  // (b), (c)
  const double tol = 1e-9 * std::max(1.0, rep.f_norm_K);
  bool past_one = false;
  for (const auto& rec : rep.records) {
    if (rep.f_norm_E <= tol && rec.norm_E > rec.dev_K + rep.f_norm_E + tol) rep.eq4_holds = false;
    past_one = past_one || rec.dev_K < 1;
    if (past_one && rec.norm_K > 1 + rep.f_norm_K + tol) rep.eq5_holds = false;
  }
  if (rep.f_norm_E > tol) rep.notes.push_back("f is not numerically zero on E");

  // (d)
  auto u_delta = delta_neighborhood(K, cfg.delta, cfg.neighborhood_mesh);
  std::vector<int> ms;
  std::vector<double> growth;
  for (std::size_t i = 0; i < rep.records.size(); ++i) {
    auto& rec = rep.records[i];
    rec.norm_Udelta = sup_norm(seq[i].poly, u_delta);
    if (rec.m >= 1 && rec.norm_K > 0 && rec.norm_Udelta > 0) {
      ms.push_back(rec.m);
      growth.push_back(rec.norm_Udelta / rec.norm_K);
    }
  }
  if (cfg.b > 0)
    rep.b = cfg.b;
  else
    rep.b = ms.size() >= 2 ? std::max(1.0 + 1e-9, std::exp(detail::log_slope(ms, growth))) : 1.0 + 1e-9;
  rep.M = 1.0;
  for (std::size_t i = 0; i < ms.size(); ++i) rep.M = std::max(rep.M, growth[i] / std::pow(rep.b, ms[i]));
  for (const auto& rec : rep.records)
    if (rec.norm_Udelta > rep.M * std::pow(rep.b, rec.m) * rec.norm_K * (1 + 1e-9) + tol) rep.eq7_holds = false;
  if (!(rep.b < 1 / d_eps)) {
    if (cfg.b > 0) throw std::invalid_argument("uniqueness: b must be < 1 / (d_estimate + eps_margin)");
    rep.notes.push_back("fitted b is not below 1 / (d + eps); shrink delta");
  }
  Point x0 = detail::centroid(K);
  auto scan = regularity_scan(K, x0, cfg.regularity_radius, cfg.regularity_m_max, cfg.regularity_window);
  rep.hypothesis_checks.K_regular_evidence = scan.verdict;

  // (e)
  ChiParams chi;
  chi.surrogate_degree = cfg.surrogate_degree;
  auto ev = is_null_chi(E, u_delta, chi, detail::bounding_grid(u_delta, cfg.chi_grid));
  rep.hypothesis_checks.E_annihilated = ev.annihilated;
  rep.hypothesis_checks.E_nonnull_chi = !ev.is_null && !ev.annihilated;
  rep.min_chi0 = ev.min_chi0;
  if (ev.annihilated) rep.notes.push_back("E appears polar / N-set-like");

  const auto& hc = rep.hypothesis_checks;
  if (!hc.E_nonnull_chi || hc.K_regular_evidence != RegularityVerdict::regular_evidence) {
    rep.conclusion = Conclusion::hypotheses_not_met;
    return rep;
  }

  // (f) U = U_{delta/2} ∩ {chi_0(., E, U_delta) < alpha}.
  ChiSolver solver(E, u_delta, chi);
  // Candidates are the lattice part of U_{delta/2}; K's own samples would
  // cost one LP each and add little.
  auto half = delta_neighborhood(K, cfg.delta / 2, cfg.neighborhood_mesh);
  auto on_lattice = [&](const Point& x) {
    for (int a = 0; a < x.dim(); ++a) {
      const double q = x[a] / cfg.neighborhood_mesh;
      if (std::abs(q - std::round(q)) > 1e-9) return false;
    }
    return true;
  };
  SampledSet U = filter(
      half, [&](const Point& x) { return on_lattice(x) && solver.chi0_at(x).chi0 < cfg.alpha; }, "U");
  if (U.empty()) {
    rep.conclusion = Conclusion::inconclusive;
    rep.notes.push_back("the chi sublevel region misses the neighborhood of K");
    return rep;
  }
  U = merge(U, E, "U");  // chi_0 vanishes on E
  rep.U_size = U.size();
  const double w = cfg.alpha + cfg.beta;
  auto tc = verify_random(E, U, u_delta, cfg.alpha, cfg.beta, cfg.m_max, cfg.two_constants_samples, cfg.seed);
  rep.C = tc.fitted_C;
  rep.L = rep.C * std::pow(rep.M, w) * std::pow(1 + rep.f_norm_K, w);
  for (std::size_t i = 0; i < rep.records.size(); ++i) {
    auto& rec = rep.records[i];
    rec.norm_U = rep.C * std::pow(rec.norm_E, 1 - w) * std::pow(rec.norm_Udelta, w);
    rec.norm_U_measured = sup_norm(seq[i].poly, U);
    rec.predicted_bound = rep.L * std::pow(d_eps, rec.m * (1 - 2 * w));
  }

  // (g)
  rep.predicted_slope = (1 - 2 * w) * std::log(d_eps);
  std::vector<int> wm;
  std::vector<double> wu;
  bool vanished = true;
  for (int m = rep.decay.window_first; m <= rep.decay.window_last; ++m) {
    const auto& rec = rep.records[static_cast<std::size_t>(m)];
    vanished = vanished && rec.norm_U < kZeroDeviation;
    wm.push_back(m);
    wu.push_back(std::max(rec.norm_U, std::numeric_limits<double>::min()));
  }
  rep.slope = vanished ? -std::numeric_limits<double>::infinity() : detail::log_slope(wm, wu);
  const auto& last = rep.records.back();
  rep.f_bound_K = last.norm_U + last.dev_K;
  const bool decays = rep.slope <= rep.predicted_slope + cfg.slope_slack * std::abs(rep.predicted_slope);
  if (!(rep.b < 1 / d_eps))
    rep.conclusion = Conclusion::inconclusive;
  else if (decays)
    rep.conclusion = Conclusion::f_identically_zero_evidence;
  else {
    rep.conclusion = Conclusion::inconclusive;
    rep.notes.push_back("norm_U does not decay at the predicted rate");
  }
  return rep;
}

}  // namespace qharm
