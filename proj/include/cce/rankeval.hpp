#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cce/asgm.hpp"
#include "cce/registry.hpp"

namespace cce {

// Synthetic ranking tasks. Each sweeps one generator parameter over a model
// grid; the ground-truth ranking follows that parameter.
//   AccQ / LowDisAccQ  sweep accuracy q (larger is better)
//   PreQNegP_Q         sweep anomaly precision q at fixed p (larger is better)
//   PreQNegP_P         sweep false-positive rate p at fixed q (smaller is better)
enum class RankTask { AccQ, LowDisAccQ, PreQNegP_Q, PreQNegP_P };

std::string task_name(RankTask task);
RankTask task_from_name(std::string_view name);
const std::vector<RankTask>& all_tasks();

struct TaskSpec {
  RankTask task = RankTask::AccQ;
  std::vector<AsgmSpec> models;  // grid order; sigma/seed filled in by run_task
  std::vector<double> sigmas = {0.0, 0.05, 0.1};
  std::vector<SynthDatasetSpec> datasets;
  std::uint64_t seed = 0;  // echoed into reports
};

/// Accuracy/precision grid {0.1,...,1.0}; false-positive grid
/// {0.01, 0.05, 0.1, 0.3}. Non-ranked parameters: PreQNegP_Q holds p = 0.10,
/// PreQNegP_P holds q = 0.9.
std::vector<AsgmSpec> default_model_grid(RankTask task);

/// Six 10^4-point datasets: 2seg-500L, 10seg-100L, 10seg-100H, 20seg-50L,
/// 20seg-50H, 50seg-20L. Dataset seeds are derived from the master seed and
/// the pattern name.
std::vector<SynthDatasetSpec> default_dataset_suite(std::uint64_t master_seed);

TaskSpec default_task(RankTask task, std::uint64_t master_seed);

/// Short per-model labels for reports, e.g. "q=0.10" / "p=0.30".
std::vector<std::string> model_labels(const TaskSpec& spec);

/// Ground-truth ranks (1 = best) of the grid models under the task's swept
/// parameter. Throws std::invalid_argument when two models tie on it.
std::vector<int> expected_ranking(RankTask task,
                                  std::span<const AsgmSpec> models);
std::vector<int> expected_ranking(const TaskSpec& spec);

/// Ranks (1 = best) by value descending; exact ties keep grid order and set
/// *had_ties.
std::vector<int> rank_descending(std::span<const double> values,
                                 bool* had_ties = nullptr);

// Rank agreement statistics over two permutations of 1..n.
// Throw std::invalid_argument on size mismatch, n < 2, or non-permutations.
double spearman(std::span<const int> expected, std::span<const int> actual);
double kendall(std::span<const int> expected, std::span<const int> actual);
double mean_rank_deviation(std::span<const int> expected,
                           std::span<const int> actual);

// One (metric, dataset, sigma) evaluation cell.
struct RankCell {
  std::string metric;
  std::string dataset;
  double sigma = 0.0;
  std::vector<std::optional<double>> values;  // per model, grid order
  bool defined = false;  // false when any model value is undefined
  bool had_ties = false;
  std::vector<int> ranks;  // valid when defined
  double spearman = 0.0;
  double kendall = 0.0;
  double md = 0.0;
};

// Aggregate row: per (metric, sigma); sigma == nullopt is the mean over all
// defined cells of the metric.
struct RankSummaryRow {
  std::string metric;
  std::optional<double> sigma;
  double spearman = 0.0;
  double kendall = 0.0;
  double md = 0.0;
  std::size_t cells = 0;      // defined cells aggregated
  std::size_t tie_cells = 0;  // cells where ranking hit exact ties
};

struct RankReport {
  RankTask task = RankTask::AccQ;
  std::uint64_t seed = 0;
  std::vector<std::string> metrics;
  std::vector<std::string> models;
  std::vector<int> expected;  // ground-truth ranks, grid order
  std::vector<RankCell> cells;
  std::vector<RankSummaryRow> summary;
};

/// Evaluates the selected metrics over every (dataset, sigma, model) cell:
/// labels generated once per dataset, scores per model with a shared
/// per-dataset stream, metrics ranked by value descending (inverted for
/// lower-is-better entries), rank statistics against the expected ranking,
/// arithmetic means over datasets. Metric failures leave cells undefined
/// rather than zero. Fully deterministic for a given spec.
RankReport run_task(const TaskSpec& spec, const MetricRegistry& registry,
                    const std::vector<std::string>& metric_names,
                    const MetricParams& params = {});

// ---- latency ----

struct LatencyRecord {
  std::string metric;
  std::size_t ts_length = 0;
  std::size_t segment_count = 0;
  std::size_t repetitions = 0;
  std::vector<double> times_ms;  // per repetition, warm-up excluded
  double median_ms = 0.0;
  double mean_ms = 0.0;
};

struct MachineInfo {
  std::string os;
  std::string arch;
  std::string compiler;
  int threads_used = 1;
};

MachineInfo machine_info();

/// Median/mean wall time of one metric evaluation, single-threaded, one
/// warm-up run excluded. Throws std::invalid_argument when repetitions < 5.
LatencyRecord measure_latency(const MetricEntry& metric,
                              std::span<const double> scores,
                              std::span<const std::uint8_t> labels,
                              const MetricParams& params,
                              std::size_t repetitions);

/// Convenience wrapper: times a default-registry metric on a synthetic
/// instance with `segment_count` anomaly events of length ~ts_length/(2n).
LatencyRecord measure_latency(const std::string& metric_name,
                              std::size_t ts_length, std::size_t segment_count,
                              std::size_t repetitions, std::uint64_t seed);

/// Least-squares slope of log(time) against log(length).
double loglog_slope(std::span<const LatencyRecord> records);

}  // namespace cce
