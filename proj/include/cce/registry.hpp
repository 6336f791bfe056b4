#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cce/cce.hpp"
#include "cce/series.hpp"

namespace cce {

// Parameters shared by every registered metric. Thresholded baselines use
// `threshold` on normalized scores; the cce entry uses the embedded config.
struct MetricParams {
  double threshold = 0.5;
  CceConfig cce;
};

struct MetricValue {
  std::string metric;
  std::optional<double> value;  // nullopt = undefined on this input
  std::string detail;           // short parameter echo, e.g. "theta=0.5"
};

using MetricFn = std::function<MetricValue(
    std::span<const double>, std::span<const std::uint8_t>, const MetricParams&)>;

struct MetricEntry {
  std::string name;
  MetricFn fn;
  bool higher_is_better = true;
};

// Uniform (scores, labels, params) -> MetricValue interface over CCE, the
// baselines, and any user-supplied metric. Insertion order is preserved and
// used for report layout.
class MetricRegistry {
 public:
  /// Throws std::invalid_argument on a duplicate name.
  void add(MetricEntry entry);
  void add(std::string name, MetricFn fn, bool higher_is_better = true);

  bool contains(std::string_view name) const;

  /// Throws std::invalid_argument listing the registered names.
  const MetricEntry& at(std::string_view name) const;

  std::vector<std::string> names() const;
  const std::vector<MetricEntry>& entries() const { return entries_; }

 private:
  std::vector<MetricEntry> entries_;
};

/// cce, auc_roc, f1, f1_pa, reduced_f1. Baselines normalize internally so the
/// registry interface takes raw scores everywhere.
MetricRegistry default_registry();

}  // namespace cce
