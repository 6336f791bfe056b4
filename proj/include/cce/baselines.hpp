#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "cce/series.hpp"

namespace cce {

struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;
};

ConfusionCounts confusion(std::span<const std::uint8_t> predictions,
                          std::span<const std::uint8_t> labels);

/// 2PR/(P+R); defined as 0 when precision + recall == 0.
double f1_from_counts(const ConfusionCounts& counts);

/// Pointwise F1 with predictions = (score >= theta). Scores are expected to
/// be normalized; theta defaults to 0.5 in the metric registry.
double f1(std::span<const double> scores, std::span<const std::uint8_t> labels,
          double theta);

/// Point adjustment: any hit inside a ground-truth anomaly event marks the
/// whole event as predicted positive. Normal points are untouched.
LabelSeries point_adjust(std::span<const std::uint8_t> predictions,
                         const EventPartition& partition);

/// Pointwise F1 after point adjustment.
double f1_pa(std::span<const double> scores,
             std::span<const std::uint8_t> labels, double theta);

/// After point adjustment each ground-truth anomaly event counts exactly once
/// (one TP if detected, one FN if missed); false positives stay pointwise on
/// normal regions.
double reduced_f1(std::span<const double> scores,
                  std::span<const std::uint8_t> labels, double theta);

/// Rank-statistic AUC; tied scores count 0.5. Returns nullopt when either
/// class is empty (undefined, not zero).
std::optional<double> auc_roc(std::span<const double> scores,
                              std::span<const std::uint8_t> labels);

}  // namespace cce
