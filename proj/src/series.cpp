#include "cce/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cce {

ScoreSeries normalize(std::span<const double> scores) {
  if (scores.empty()) {
    throw std::invalid_argument("normalize: empty score series");
  }
  double lo = scores[0];
  double hi = scores[0];
  for (const double v : scores) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("normalize: non-finite score");
    }
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  ScoreSeries out(scores.size());
  if (lo == hi) {
    std::fill(out.begin(), out.end(), 0.5);
    return out;
  }
  const double range = hi - lo;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    out[i] = (scores[i] - lo) / range;
  }
  return out;
}

EventPartition extract_events(std::span<const std::uint8_t> labels) {
  if (labels.empty()) {
    throw std::invalid_argument("extract_events: empty label series");
  }
  EventPartition part;
  part.series_length = labels.size();
  std::size_t begin = 0;
  for (std::size_t i = 0; i <= labels.size(); ++i) {
    if (i < labels.size() && labels[i] > 1) {
      throw std::invalid_argument("extract_events: labels must be 0 or 1");
    }
    if (i == labels.size() || labels[i] != labels[begin]) {
      Event ev;
      ev.begin = begin;
      ev.end = i;
      ev.kind = labels[begin] ? EventKind::Anomaly : EventKind::Normal;
      if (ev.kind == EventKind::Anomaly) {
        ++part.anomaly_events;
        part.anomaly_points += ev.length();
      } else {
        ++part.normal_events;
        part.normal_points += ev.length();
      }
      part.events.push_back(ev);
      begin = i;
    }
  }
  return part;
}

LabelSeries to_labels(const EventPartition& partition) {
  LabelSeries labels(partition.series_length, 0);
  for (const Event& ev : partition.events) {
    if (ev.kind == EventKind::Anomaly) {
      std::fill(labels.begin() + static_cast<std::ptrdiff_t>(ev.begin),
                labels.begin() + static_cast<std::ptrdiff_t>(ev.end), 1);
    }
  }
  return labels;
}

}  // namespace cce
