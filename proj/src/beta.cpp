#include "cce/beta.hpp"

#include <algorithm>
#include <stdexcept>

namespace cce {

MomentStats moments(std::span<const double> segment) {
  if (segment.empty()) {
    throw std::invalid_argument("moments: empty segment");
  }
  double sum = 0.0;
  for (const double v : segment) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument("moments: score outside [0, 1]");
    }
    sum += v;
  }
  MomentStats st;
  st.count = segment.size();
  st.mean = sum / static_cast<double>(st.count);
  // second pass keeps m2 non-negative, which a one-pass E[x^2] - mean^2
  // formulation cannot guarantee
  double acc = 0.0;
  for (const double v : segment) {
    const double d = v - st.mean;
    acc += d * d;
  }
  st.m2 = acc / static_cast<double>(st.count);
  return st;
}

BetaFit fit_beta(const MomentStats& stats) {
  BetaFit fit;
  const double spread = stats.mean * (1.0 - stats.mean);
  if (stats.m2 <= 0.0 || stats.m2 >= spread) {
    fit.fittable = false;
    fit.uncertainty = std::min(stats.m2, 0.25);
    return fit;
  }
  const double nu = spread / stats.m2 - 1.0;
  fit.alpha = stats.mean * nu;
  fit.beta = (1.0 - stats.mean) * nu;
  fit.fittable = true;
  fit.uncertainty = beta_variance(fit.alpha, fit.beta);
  return fit;
}

double beta_variance(double alpha, double beta) {
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw std::invalid_argument("beta_variance: shapes must be positive");
  }
  const double s = alpha + beta;
  return (alpha * beta) / (s * s * (s + 1.0));
}

double event_uncertainty(std::span<const double> scores, const Event& event) {
  if (event.begin >= event.end || event.end > scores.size()) {
    throw std::invalid_argument("event_uncertainty: event outside the series");
  }
  return fit_beta(moments(scores.subspan(event.begin, event.length())))
      .uncertainty;
}

}  // namespace cce
