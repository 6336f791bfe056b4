#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace cce {

using ScoreSeries = std::vector<double>;
using LabelSeries = std::vector<std::uint8_t>;  // elements are 0 or 1

enum class EventKind : std::uint8_t { Normal = 0, Anomaly = 1 };

// Maximal run of identical labels, half-open index range [begin, end).
struct Event {
  std::size_t begin = 0;
  std::size_t end = 0;
  EventKind kind = EventKind::Normal;

  std::size_t length() const noexcept { return end - begin; }
};

// Ordered disjoint events covering [0, series_length).
struct EventPartition {
  std::vector<Event> events;
  std::size_t series_length = 0;
  std::size_t anomaly_events = 0;
  std::size_t normal_events = 0;
  std::size_t anomaly_points = 0;
  std::size_t normal_points = 0;
};

/// Min-max rescale into [0, 1]. A constant series maps to all 0.5 so that
/// downstream confidences degrade to zero instead of blowing up.
/// Throws std::invalid_argument on empty input or non-finite values.
ScoreSeries normalize(std::span<const double> scores);

/// Splits a binary label series into maximal constant runs.
/// Throws std::invalid_argument on empty input or labels other than 0/1.
EventPartition extract_events(std::span<const std::uint8_t> labels);

/// Inverse of extract_events.
LabelSeries to_labels(const EventPartition& partition);

}  // namespace cce
