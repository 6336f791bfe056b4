#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cce/series.hpp"

namespace cce {

// Strict clamps negative confidences to zero; Relaxed keeps the sign so that
// confidently wrong detectors are penalized rather than zeroed out.
enum class CceMode { Strict, Relaxed };

struct CceConfig {
  double tau = 0.5;    // confidence threshold
  double alpha = 0.5;  // event-level weight of the anomaly class
  double eta = 0.5;    // global weight of the anomaly class
  CceMode mode = CceMode::Relaxed;
  // Escape hatch for perturbation-stability tests that must control the exact
  // score values; when false the input must already lie in [0, 1].
  bool normalize_scores = true;
};

struct EventScore {
  Event event;
  double confidence = 0.0;
  double uncertainty = 0.0;
  double consistency = 0.0;
  double score = 0.0;  // confidence * consistency
  bool fallback = false;  // uncertainty came from the unfittable-moments fallback
};

struct EventLevelResult {
  double s_event = 0.0;
  double s_anom = 0.0;  // mean over anomaly events (0 when the class is absent)
  double s_norm = 0.0;  // mean over normal events (0 when the class is absent)
  std::vector<EventScore> event_scores;
  std::size_t fallback_events = 0;
};

struct GlobalResult {
  double s_global = 0.0;
  double s_anom = 0.0;  // pooled anomaly timesteps (0 when the class is absent)
  double s_norm = 0.0;  // pooled normal timesteps (0 when the class is absent)
  std::size_t fallback_segments = 0;
};

struct CceBreakdown {
  double s_cce = 0.0;  // s_event + s_global
  EventLevelResult event_level;
  GlobalResult global;
  bool anomaly_class_absent = false;
  bool normal_class_absent = false;
  ScoreSeries normalized;  // the scores the pipeline actually evaluated
};

/// Confidence of an anomaly event: mean - tau, clamped at 0 in Strict mode.
double anomaly_confidence(std::span<const double> scores, const Event& event,
                          double tau, CceMode mode);

/// Confidence of a normal event: 1 - tau - mean, clamped at 0 in Strict mode.
double normal_confidence(std::span<const double> scores, const Event& event,
                         double tau, CceMode mode);

/// exp(-U) for the event's segment; always in [exp(-0.25), 1].
double consistency(std::span<const double> scores, const Event& event);

/// Per-event confidence*consistency, averaged per class and mixed by alpha.
/// When one class has no events its weight is reassigned to the other.
/// Scores must already be normalized.
EventLevelResult event_level_score(std::span<const double> scores,
                                   const EventPartition& partition,
                                   const CceConfig& config);

/// Same quantity over the two pooled class segments, mixed by eta.
GlobalResult global_score(std::span<const double> scores,
                          const EventPartition& partition,
                          const CceConfig& config);

/// Full pipeline: validate, normalize, extract events, score.
/// With default weights (tau 0.5, alpha = eta = 0.5): Strict s_cce is in
/// [0, 1], Relaxed in [-1, 1]. Throws std::invalid_argument on empty input,
/// length mismatch, non-binary labels, bad config, or (when normalization is
/// disabled) scores outside [0, 1].
CceBreakdown cce(std::span<const double> scores,
                 std::span<const std::uint8_t> labels,
                 const CceConfig& config = {});

void validate(const CceConfig& config);

}  // namespace cce
