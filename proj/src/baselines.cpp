#include "cce/baselines.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace cce {

namespace {

LabelSeries threshold_predictions(std::span<const double> scores,
                                  double theta) {
  LabelSeries pred(scores.size(), 0);
  for (std::size_t i = 0; i < scores.size(); ++i) {
    pred[i] = scores[i] >= theta ? 1 : 0;
  }
  return pred;
}

void check_same_length(std::size_t a, std::size_t b, const char* what) {
  if (a != b || a == 0) {
    throw std::invalid_argument(std::string(what) +
                                ": inputs must be non-empty and equal length");
  }
}

}  // namespace

ConfusionCounts confusion(std::span<const std::uint8_t> predictions,
                          std::span<const std::uint8_t> labels) {
  check_same_length(predictions.size(), labels.size(), "confusion");
  ConfusionCounts c;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i]) {
      if (predictions[i]) ++c.tp;
      else ++c.fn;
    } else {
      if (predictions[i]) ++c.fp;
      else ++c.tn;
    }
  }
  return c;
}

double f1_from_counts(const ConfusionCounts& counts) {
  const double p_den = static_cast<double>(counts.tp + counts.fp);
  const double r_den = static_cast<double>(counts.tp + counts.fn);
  const double precision = p_den > 0.0 ? counts.tp / p_den : 0.0;
  const double recall = r_den > 0.0 ? counts.tp / r_den : 0.0;
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

double f1(std::span<const double> scores, std::span<const std::uint8_t> labels,
          double theta) {
  check_same_length(scores.size(), labels.size(), "f1");
  return f1_from_counts(confusion(threshold_predictions(scores, theta), labels));
}

LabelSeries point_adjust(std::span<const std::uint8_t> predictions,
                         const EventPartition& partition) {
  check_same_length(predictions.size(), partition.series_length,
                    "point_adjust");
  LabelSeries adjusted(predictions.begin(), predictions.end());
  for (const Event& ev : partition.events) {
    if (ev.kind != EventKind::Anomaly) continue;
    const bool hit = std::any_of(
        predictions.begin() + static_cast<std::ptrdiff_t>(ev.begin),
        predictions.begin() + static_cast<std::ptrdiff_t>(ev.end),
        [](std::uint8_t v) { return v != 0; });
    if (hit) {
      std::fill(adjusted.begin() + static_cast<std::ptrdiff_t>(ev.begin),
                adjusted.begin() + static_cast<std::ptrdiff_t>(ev.end), 1);
    }
  }
  return adjusted;
}

double f1_pa(std::span<const double> scores,
             std::span<const std::uint8_t> labels, double theta) {
  check_same_length(scores.size(), labels.size(), "f1_pa");
  const auto partition = extract_events(labels);
  const auto adjusted =
      point_adjust(threshold_predictions(scores, theta), partition);
  return f1_from_counts(confusion(adjusted, labels));
}

double reduced_f1(std::span<const double> scores,
                  std::span<const std::uint8_t> labels, double theta) {
  check_same_length(scores.size(), labels.size(), "reduced_f1");
  const auto partition = extract_events(labels);
  const auto pred = threshold_predictions(scores, theta);
  ConfusionCounts c;
  for (const Event& ev : partition.events) {
    if (ev.kind == EventKind::Anomaly) {
      // the whole event collapses to a single detection outcome
      bool hit = false;
      for (std::size_t i = ev.begin; i < ev.end && !hit; ++i) hit = pred[i];
      if (hit) ++c.tp;
      else ++c.fn;
    } else {
      for (std::size_t i = ev.begin; i < ev.end; ++i) {
        if (pred[i]) ++c.fp;
        else ++c.tn;
      }
    }
  }
  return f1_from_counts(c);
}

std::optional<double> auc_roc(std::span<const double> scores,
                              std::span<const std::uint8_t> labels) {
  check_same_length(scores.size(), labels.size(), "auc_roc");
  const std::size_t n = scores.size();
  std::size_t positives = 0;
  for (const auto y : labels) {
    if (y > 1) throw std::invalid_argument("auc_roc: labels must be 0 or 1");
    positives += y;
  }
  const std::size_t negatives = n - positives;
  if (positives == 0 || negatives == 0) return std::nullopt;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] < scores[b];
  });

  // midranks for ties, then the Mann-Whitney rank-sum statistic
  double positive_rank_sum = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    const double midrank = 0.5 * static_cast<double>(i + 1 + j);  // 1-based
    for (std::size_t k = i; k < j; ++k) {
      if (labels[order[k]]) positive_rank_sum += midrank;
    }
    i = j;
  }
  const double np = static_cast<double>(positives);
  const double nn = static_cast<double>(negatives);
  return (positive_rank_sum - np * (np + 1.0) / 2.0) / (np * nn);
}

}  // namespace cce
