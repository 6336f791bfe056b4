#pragma once

#include <cstddef>
#include <span>

#include "cce/series.hpp"

namespace cce {

// Mean and population second central moment of a score segment.
struct MomentStats {
  double mean = 0.0;
  double m2 = 0.0;
  std::size_t count = 0;
};

// Method-of-moments Beta fit. When the moments admit no valid shape pair
// (m2 == 0 or m2 >= mean*(1-mean)) the fit is marked unfittable and the
// uncertainty falls back to min(m2, 0.25), which keeps the value inside the
// range a Beta variance can take and keeps it 1-Lipschitz in m2.
struct BetaFit {
  double alpha = 0.0;  // meaningful only when fittable
  double beta = 0.0;   // meaningful only when fittable
  bool fittable = false;
  double uncertainty = 0.0;  // variance proxy, always in [0, 0.25]
};

/// Two-pass moments of a segment of normalized scores.
/// Throws std::invalid_argument on an empty segment or values outside [0, 1].
MomentStats moments(std::span<const double> segment);

/// Fits Beta shape parameters by moment matching; see BetaFit.
BetaFit fit_beta(const MomentStats& stats);

/// Analytic variance alpha*beta / ((alpha+beta)^2 (alpha+beta+1)).
/// Throws std::invalid_argument unless both shapes are positive.
double beta_variance(double alpha, double beta);

/// Uncertainty of one event's score segment: fit_beta(moments(...)).uncertainty.
/// The event range must lie inside the score span.
double event_uncertainty(std::span<const double> scores, const Event& event);

}  // namespace cce
