#pragma once

// Root rates l_m^{1/m} of a deviation sequence and the decay classification
// drawn from their trailing-window extrema.

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qharm/minimax.hpp"

namespace qharm {

enum class DecayClass { harmonically_extendable, quasiharmonic_only, not_quasiharmonic, exactly_polynomial };

inline const char* to_string(DecayClass c) {
  switch (c) {
    case DecayClass::harmonically_extendable: return "harmonically_extendable";
    case DecayClass::quasiharmonic_only: return "quasiharmonic_only";
    case DecayClass::not_quasiharmonic: return "not_quasiharmonic";
    case DecayClass::exactly_polynomial: return "exactly_polynomial";
  }
  return "?";
}

inline constexpr double kZeroDeviation = 1e-12;
inline constexpr double kDefaultTheta = 0.05;

struct RootRates {
  std::vector<double> rates;  // rates[0] is undefined (NaN)
  std::vector<bool> exact;    // deviation treated as zero
};

inline RootRates root_rate(std::span<const double> deviations) {
  RootRates out;
  out.rates.resize(deviations.size());
  out.exact.resize(deviations.size());
  for (std::size_t m = 0; m < deviations.size(); ++m) {
    const double l = deviations[m];
    if (!(l >= 0.0) || !std::isfinite(l)) throw std::invalid_argument("root_rate: deviations must be finite and >= 0");
    out.exact[m] = l < kZeroDeviation;
    if (m == 0)
      out.rates[m] = std::numeric_limits<double>::quiet_NaN();
    else
      out.rates[m] = out.exact[m] ? 0.0 : std::pow(l, 1.0 / static_cast<double>(m));
  }
  return out;
}

struct DecayReport {
  std::vector<double> deviations;
  std::vector<double> root_rates;
  std::vector<bool> exact;
  double limsup_estimate = 0.0;
  double liminf_estimate = 0.0;
  int window_first = 0;  // inclusive m range of the trailing window
  int window_last = 0;
  double theta = kDefaultTheta;
  DecayClass classification = DecayClass::not_quasiharmonic;
};

/// Trailing-window classification. `exact_hint` marks entries known to be
/// exactly representable (e.g. from the minimax solver) in addition to the
/// 1e-12 rule.
inline DecayReport classify(std::span<const double> deviations, int window, double theta = kDefaultTheta,
                            std::span<const bool> exact_hint = {}) {
  if (window < 3) throw std::invalid_argument("classify: window must be >= 3");
  const int last = static_cast<int>(deviations.size()) - 1;
  if (window > last)
    throw std::invalid_argument("classify: window " + std::to_string(window) + " exceeds the " +
                                std::to_string(last) + " available rates");
  if (!(theta > 0.0 && theta < 1.0)) throw std::invalid_argument("classify: theta must be in (0, 1)");
  if (!exact_hint.empty() && exact_hint.size() != deviations.size())
    throw std::invalid_argument("classify: exact_hint length mismatch");

  auto rr = root_rate(deviations);
  DecayReport rep;
  rep.deviations.assign(deviations.begin(), deviations.end());
  rep.theta = theta;
  rep.window_first = last - window + 1;
  rep.window_last = last;
  bool any_exact = false;
  for (std::size_t m = 0; m < deviations.size(); ++m) {
    if (!exact_hint.empty() && exact_hint[m] && !rr.exact[m]) {
      rr.exact[m] = true;
      if (m > 0) rr.rates[m] = 0.0;
    }
    any_exact = any_exact || rr.exact[m];
  }
  rep.limsup_estimate = -std::numeric_limits<double>::infinity();
  rep.liminf_estimate = std::numeric_limits<double>::infinity();
  for (int m = rep.window_first; m <= last; ++m) {
    rep.limsup_estimate = std::max(rep.limsup_estimate, rr.rates[m]);
    rep.liminf_estimate = std::min(rep.liminf_estimate, rr.rates[m]);
  }
  rep.root_rates = std::move(rr.rates);
  rep.exact = std::move(rr.exact);

  if (any_exact)
    rep.classification = DecayClass::exactly_polynomial;
  else if (rep.limsup_estimate < 1.0 - theta)
    rep.classification = DecayClass::harmonically_extendable;
  else if (rep.liminf_estimate < 1.0 - theta)
    rep.classification = DecayClass::quasiharmonic_only;
  else
    rep.classification = DecayClass::not_quasiharmonic;
  return rep;
}

inline DecayReport classify(const std::vector<ApproxResult>& seq, int window, double theta = kDefaultTheta) {
  std::vector<double> dev(seq.size());
  auto hint = std::make_unique<bool[]>(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    dev[i] = seq[i].deviation;
    hint[i] = seq[i].is_exact;
  }
  return classify(dev, window, theta, std::span<const bool>(hint.get(), seq.size()));
}

}  // namespace qharm
