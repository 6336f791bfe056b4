#include "cce/cce.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cce/beta.hpp"

namespace cce {

namespace {

double segment_mean(std::span<const double> scores, const Event& event) {
  if (event.begin >= event.end || event.end > scores.size()) {
    throw std::invalid_argument("confidence: event outside the series");
  }
  double sum = 0.0;
  for (std::size_t i = event.begin; i < event.end; ++i) sum += scores[i];
  return sum / static_cast<double>(event.length());
}

double confidence_from_mean(double mean, EventKind kind, double tau,
                            CceMode mode) {
  const double conf =
      kind == EventKind::Anomaly ? mean - tau : (1.0 - tau) - mean;
  return mode == CceMode::Strict ? std::max(conf, 0.0) : conf;
}

// Moments of all points of one class, traversed in event order. Matches the
// result of materializing the pooled segment and calling moments() on it.
MomentStats pooled_moments(std::span<const double> scores,
                           const EventPartition& partition, EventKind kind) {
  MomentStats st;
  double sum = 0.0;
  for (const Event& ev : partition.events) {
    if (ev.kind != kind) continue;
    for (std::size_t i = ev.begin; i < ev.end; ++i) sum += scores[i];
    st.count += ev.length();
  }
  st.mean = sum / static_cast<double>(st.count);
  double acc = 0.0;
  for (const Event& ev : partition.events) {
    if (ev.kind != kind) continue;
    for (std::size_t i = ev.begin; i < ev.end; ++i) {
      const double d = scores[i] - st.mean;
      acc += d * d;
    }
  }
  st.m2 = acc / static_cast<double>(st.count);
  return st;
}

// Mixes the two class scores; a class with no support passes its whole weight
// to the other one.
double mix_classes(double anom, bool has_anom, double norm, bool has_norm,
                   double anom_weight) {
  if (!has_anom) return norm;
  if (!has_norm) return anom;
  return anom_weight * anom + (1.0 - anom_weight) * norm;
}

}  // namespace

void validate(const CceConfig& config) {
  if (!(config.tau > 0.0 && config.tau < 1.0)) {
    throw std::invalid_argument("cce: tau must lie strictly inside (0, 1)");
  }
  if (!(config.alpha >= 0.0 && config.alpha <= 1.0)) {
    throw std::invalid_argument("cce: alpha must lie in [0, 1]");
  }
  if (!(config.eta >= 0.0 && config.eta <= 1.0)) {
    throw std::invalid_argument("cce: eta must lie in [0, 1]");
  }
}

double anomaly_confidence(std::span<const double> scores, const Event& event,
                          double tau, CceMode mode) {
  return confidence_from_mean(segment_mean(scores, event), EventKind::Anomaly,
                              tau, mode);
}

double normal_confidence(std::span<const double> scores, const Event& event,
                         double tau, CceMode mode) {
  return confidence_from_mean(segment_mean(scores, event), EventKind::Normal,
                              tau, mode);
}

double consistency(std::span<const double> scores, const Event& event) {
  return std::exp(-event_uncertainty(scores, event));
}

EventLevelResult event_level_score(std::span<const double> scores,
                                   const EventPartition& partition,
                                   const CceConfig& config) {
  EventLevelResult result;
  result.event_scores.reserve(partition.events.size());
  double anom_sum = 0.0, norm_sum = 0.0;
  for (const Event& ev : partition.events) {
    const auto fit =
        fit_beta(moments(scores.subspan(ev.begin, ev.length())));
    EventScore es;
    es.event = ev;
    es.confidence = confidence_from_mean(segment_mean(scores, ev), ev.kind,
                                         config.tau, config.mode);
    es.uncertainty = fit.uncertainty;
    es.consistency = std::exp(-fit.uncertainty);
    es.score = es.confidence * es.consistency;
    es.fallback = !fit.fittable;
    if (es.fallback) ++result.fallback_events;
    if (ev.kind == EventKind::Anomaly) anom_sum += es.score;
    else norm_sum += es.score;
    result.event_scores.push_back(es);
  }
  const bool has_anom = partition.anomaly_events > 0;
  const bool has_norm = partition.normal_events > 0;
  if (has_anom) {
    result.s_anom = anom_sum / static_cast<double>(partition.anomaly_events);
  }
  if (has_norm) {
    result.s_norm = norm_sum / static_cast<double>(partition.normal_events);
  }
  result.s_event =
      mix_classes(result.s_anom, has_anom, result.s_norm, has_norm, config.alpha);
  return result;
}

GlobalResult global_score(std::span<const double> scores,
                          const EventPartition& partition,
                          const CceConfig& config) {
  GlobalResult result;
  const bool has_anom = partition.anomaly_points > 0;
  const bool has_norm = partition.normal_points > 0;
  if (has_anom) {
    const auto st = pooled_moments(scores, partition, EventKind::Anomaly);
    const auto fit = fit_beta(st);
    if (!fit.fittable) ++result.fallback_segments;
    result.s_anom =
        confidence_from_mean(st.mean, EventKind::Anomaly, config.tau,
                             config.mode) *
        std::exp(-fit.uncertainty);
  }
  if (has_norm) {
    const auto st = pooled_moments(scores, partition, EventKind::Normal);
    const auto fit = fit_beta(st);
    if (!fit.fittable) ++result.fallback_segments;
    result.s_norm =
        confidence_from_mean(st.mean, EventKind::Normal, config.tau,
                             config.mode) *
        std::exp(-fit.uncertainty);
  }
  result.s_global =
      mix_classes(result.s_anom, has_anom, result.s_norm, has_norm, config.eta);
  return result;
}

CceBreakdown cce(std::span<const double> scores,
                 std::span<const std::uint8_t> labels,
                 const CceConfig& config) {
  validate(config);
  if (scores.empty()) {
    throw std::invalid_argument("cce: empty input");
  }
  if (scores.size() != labels.size()) {
    throw std::invalid_argument("cce: scores and labels differ in length");
  }
  CceBreakdown bd;
  if (config.normalize_scores) {
    bd.normalized = normalize(scores);
  } else {
    for (const double v : scores) {
      if (!(v >= 0.0 && v <= 1.0)) {
        throw std::invalid_argument(
            "cce: scores must lie in [0, 1] when normalization is disabled");
      }
    }
    bd.normalized.assign(scores.begin(), scores.end());
  }
  const EventPartition partition = extract_events(labels);
  bd.anomaly_class_absent = partition.anomaly_events == 0;
  bd.normal_class_absent = partition.normal_events == 0;
  bd.event_level = event_level_score(bd.normalized, partition, config);
  bd.global = global_score(bd.normalized, partition, config);
  bd.s_cce = bd.event_level.s_event + bd.global.s_global;
  return bd;
}

}  // namespace cce
