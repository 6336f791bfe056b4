#include "cce/rankeval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include <sys/utsname.h>

#include "cce/rng.hpp"

namespace cce {

namespace {

const char* kTaskNames[] = {"AccQ", "LowDisAccQ", "PreQNegP_Q", "PreQNegP_P"};

std::string two_decimals(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

void check_rank_args(std::span<const int> expected,
                     std::span<const int> actual) {
  if (expected.size() != actual.size()) {
    throw std::invalid_argument("rank statistics: size mismatch");
  }
  const std::size_t n = expected.size();
  if (n < 2) {
    throw std::invalid_argument("rank statistics: need at least two ranks");
  }
  for (const auto r : {expected, actual}) {
    std::vector<bool> seen(n, false);
    for (const int v : r) {
      if (v < 1 || static_cast<std::size_t>(v) > n || seen[v - 1]) {
        throw std::invalid_argument(
            "rank statistics: input is not a permutation of 1..n");
      }
      seen[v - 1] = true;
    }
  }
}

// The swept parameter whose value defines the ground-truth order; sign keeps
// "larger is better" semantics for rank_descending.
double ranked_parameter(RankTask task, const AsgmSpec& model) {
  return task == RankTask::PreQNegP_P ? -model.p : model.q;
}

}  // namespace

std::string task_name(RankTask task) {
  return kTaskNames[static_cast<int>(task)];
}

RankTask task_from_name(std::string_view name) {
  for (int i = 0; i < 4; ++i) {
    if (name == kTaskNames[i]) return static_cast<RankTask>(i);
  }
  throw std::invalid_argument("unknown task '" + std::string(name) +
                              "'; known: AccQ LowDisAccQ PreQNegP_Q PreQNegP_P");
}

const std::vector<RankTask>& all_tasks() {
  static const std::vector<RankTask> tasks = {
      RankTask::AccQ, RankTask::LowDisAccQ, RankTask::PreQNegP_Q,
      RankTask::PreQNegP_P};
  return tasks;
}

std::vector<AsgmSpec> default_model_grid(RankTask task) {
  std::vector<AsgmSpec> grid;
  if (task == RankTask::PreQNegP_P) {
    for (const double p : {0.01, 0.05, 0.1, 0.3}) {
      AsgmSpec m;
      m.family = AsgmFamily::PreQNegP;
      m.q = 0.9;
      m.p = p;
      grid.push_back(m);
    }
    return grid;
  }
  for (int i = 1; i <= 10; ++i) {
    AsgmSpec m;
    m.q = i / 10.0;
    switch (task) {
      case RankTask::AccQ:
        m.family = AsgmFamily::AccQ;
        break;
      case RankTask::LowDisAccQ:
        m.family = AsgmFamily::LowDisAccQ;
        break;
      default:
        m.family = AsgmFamily::PreQNegP;
        m.p = 0.10;
        break;
    }
    grid.push_back(m);
  }
  return grid;
}

std::vector<SynthDatasetSpec> default_dataset_suite(std::uint64_t master_seed) {
  struct Pattern {
    std::size_t segments, lmin, lmax;
    VarianceClass vc;
  };
  const Pattern patterns[] = {
      {2, 450, 550, VarianceClass::Low},  {10, 90, 110, VarianceClass::Low},
      {10, 1, 199, VarianceClass::High},  {20, 40, 60, VarianceClass::Low},
      {20, 1, 99, VarianceClass::High},   {50, 10, 30, VarianceClass::Low},
  };
  const std::uint64_t suite_key = rng::derive(master_seed, rng::kTagDataset);
  std::vector<SynthDatasetSpec> suite;
  for (const auto& p : patterns) {
    SynthDatasetSpec ds;
    ds.ts_length = 10000;
    ds.segments = p.segments;
    ds.seg_len_min = p.lmin;
    ds.seg_len_max = p.lmax;
    ds.variance_class = p.vc;
    ds.name = pattern_name(ds);
    ds.seed = rng::derive(suite_key, rng::hash_bytes(ds.name));
    suite.push_back(ds);
  }
  return suite;
}

TaskSpec default_task(RankTask task, std::uint64_t master_seed) {
  TaskSpec spec;
  spec.task = task;
  spec.models = default_model_grid(task);
  spec.datasets = default_dataset_suite(master_seed);
  spec.seed = master_seed;
  return spec;
}

std::vector<std::string> model_labels(const TaskSpec& spec) {
  std::vector<std::string> labels;
  labels.reserve(spec.models.size());
  for (const auto& m : spec.models) {
    if (spec.task == RankTask::PreQNegP_P) {
      labels.push_back("p=" + two_decimals(m.p));
    } else {
      labels.push_back("q=" + two_decimals(m.q));
    }
  }
  return labels;
}

std::vector<int> expected_ranking(RankTask task,
                                  std::span<const AsgmSpec> models) {
  if (models.size() < 2) {
    throw std::invalid_argument("expected_ranking: need at least two models");
  }
  std::vector<double> params;
  params.reserve(models.size());
  for (const auto& m : models) params.push_back(ranked_parameter(task, m));
  bool ties = false;
  auto ranks = rank_descending(params, &ties);
  if (ties) {
    throw std::invalid_argument(
        "expected_ranking: models tie on the swept parameter");
  }
  return ranks;
}

std::vector<int> expected_ranking(const TaskSpec& spec) {
  return expected_ranking(spec.task, spec.models);
}

std::vector<int> rank_descending(std::span<const double> values,
                                 bool* had_ties) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return values[a] > values[b];
                   });
  bool ties = false;
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (values[order[i]] == values[order[i - 1]]) ties = true;
  }
  if (had_ties) *had_ties = ties;
  std::vector<int> ranks(values.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    ranks[order[pos]] = static_cast<int>(pos) + 1;
  }
  return ranks;
}

double spearman(std::span<const int> expected, std::span<const int> actual) {
  check_rank_args(expected, actual);
  const double n = static_cast<double>(expected.size());
  double d2 = 0.0;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const double d = expected[i] - actual[i];
    d2 += d * d;
  }
  return 1.0 - 6.0 * d2 / (n * (n * n - 1.0));
}

double kendall(std::span<const int> expected, std::span<const int> actual) {
  check_rank_args(expected, actual);
  long concordant = 0, discordant = 0;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    for (std::size_t j = i + 1; j < expected.size(); ++j) {
      const bool same_direction =
          (expected[i] < expected[j]) == (actual[i] < actual[j]);
      (same_direction ? concordant : discordant) += 1;
    }
  }
  return static_cast<double>(concordant - discordant) /
         static_cast<double>(concordant + discordant);
}

double mean_rank_deviation(std::span<const int> expected,
                           std::span<const int> actual) {
  check_rank_args(expected, actual);
  double sum = 0.0;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    sum += std::abs(expected[i] - actual[i]);
  }
  return sum / static_cast<double>(expected.size());
}

RankReport run_task(const TaskSpec& spec, const MetricRegistry& registry,
                    const std::vector<std::string>& metric_names,
                    const MetricParams& params) {
  if (spec.models.empty() || spec.datasets.empty() || spec.sigmas.empty() ||
      metric_names.empty()) {
    throw std::invalid_argument(
        "run_task: models, datasets, sigmas, and metrics must be non-empty");
  }
  for (const auto& name : metric_names) registry.at(name);
  for (const auto& m : spec.models) validate(m);

  RankReport report;
  report.task = spec.task;
  report.seed = spec.seed;
  report.metrics = metric_names;
  report.models = model_labels(spec);
  report.expected = expected_ranking(spec);

  for (const auto& ds : spec.datasets) {
    const auto labels = generate_labels(ds);
    // every model in the grid shares this stream, so their random draws are
    // pairwise coupled and the expected ordering holds per cell, not just on
    // average
    const std::uint64_t stream_seed = rng::derive(ds.seed, rng::kTagScores);
    for (const double sigma : spec.sigmas) {
      std::vector<std::vector<std::optional<double>>> values_by_metric(
          metric_names.size(),
          std::vector<std::optional<double>>(spec.models.size()));
      for (std::size_t mi = 0; mi < spec.models.size(); ++mi) {
        AsgmSpec model = spec.models[mi];
        model.sigma = sigma;
        model.seed = stream_seed;
        const auto scores = generate_scores(model, labels);
        for (std::size_t k = 0; k < metric_names.size(); ++k) {
          try {
            values_by_metric[k][mi] =
                registry.at(metric_names[k]).fn(scores, labels, params).value;
          } catch (const std::invalid_argument&) {
            values_by_metric[k][mi] = std::nullopt;
          }
        }
      }
      for (std::size_t k = 0; k < metric_names.size(); ++k) {
        RankCell cell;
        cell.metric = metric_names[k];
        cell.dataset = dataset_name(ds);
        cell.sigma = sigma;
        cell.values = std::move(values_by_metric[k]);
        cell.defined = std::all_of(cell.values.begin(), cell.values.end(),
                                   [](const auto& v) { return v.has_value(); });
        if (cell.defined) {
          std::vector<double> v(cell.values.size());
          const bool invert = !registry.at(cell.metric).higher_is_better;
          for (std::size_t mi = 0; mi < v.size(); ++mi) {
            v[mi] = invert ? -*cell.values[mi] : *cell.values[mi];
          }
          cell.ranks = rank_descending(v, &cell.had_ties);
          cell.spearman = spearman(report.expected, cell.ranks);
          cell.kendall = kendall(report.expected, cell.ranks);
          cell.md = mean_rank_deviation(report.expected, cell.ranks);
        }
        report.cells.push_back(std::move(cell));
      }
    }
  }

  // cells grouped by metric first; stable sort keeps dataset/sigma order
  std::stable_sort(report.cells.begin(), report.cells.end(),
                   [&](const RankCell& a, const RankCell& b) {
                     const auto pos = [&](const std::string& name) {
                       return std::find(metric_names.begin(),
                                        metric_names.end(), name) -
                              metric_names.begin();
                     };
                     return pos(a.metric) < pos(b.metric);
                   });

  for (const auto& name : metric_names) {
    RankSummaryRow avg;
    avg.metric = name;
    for (const double sigma : spec.sigmas) {
      RankSummaryRow row;
      row.metric = name;
      row.sigma = sigma;
      for (const auto& cell : report.cells) {
        if (cell.metric != name || cell.sigma != sigma) continue;
        if (!cell.defined) continue;
        row.spearman += cell.spearman;
        row.kendall += cell.kendall;
        row.md += cell.md;
        row.cells += 1;
        row.tie_cells += cell.had_ties ? 1 : 0;
      }
      if (row.cells > 0) {
        row.spearman /= static_cast<double>(row.cells);
        row.kendall /= static_cast<double>(row.cells);
        row.md /= static_cast<double>(row.cells);
      }
      avg.spearman += row.spearman * static_cast<double>(row.cells);
      avg.kendall += row.kendall * static_cast<double>(row.cells);
      avg.md += row.md * static_cast<double>(row.cells);
      avg.cells += row.cells;
      avg.tie_cells += row.tie_cells;
      report.summary.push_back(std::move(row));
    }
    if (avg.cells > 0) {
      avg.spearman /= static_cast<double>(avg.cells);
      avg.kendall /= static_cast<double>(avg.cells);
      avg.md /= static_cast<double>(avg.cells);
    }
    report.summary.push_back(std::move(avg));
  }
  return report;
}

MachineInfo machine_info() {
  MachineInfo info;
  utsname uts{};
  if (uname(&uts) == 0) {
    info.os = std::string(uts.sysname) + " " + uts.release;
    info.arch = uts.machine;
  } else {
    info.os = "unknown";
    info.arch = "unknown";
  }
#if defined(__clang__)
  info.compiler = std::string("clang ") + __VERSION__;
#elif defined(__GNUC__)
  info.compiler = std::string("gcc ") + __VERSION__;
#else
  info.compiler = "unknown";
#endif
  info.threads_used = 1;
  return info;
}

LatencyRecord measure_latency(const MetricEntry& metric,
                              std::span<const double> scores,
                              std::span<const std::uint8_t> labels,
                              const MetricParams& params,
                              std::size_t repetitions) {
  if (repetitions < 5) {
    throw std::invalid_argument("measure_latency: need at least 5 repetitions");
  }
  LatencyRecord rec;
  rec.metric = metric.name;
  rec.ts_length = labels.size();
  rec.segment_count = extract_events(labels).anomaly_events;
  rec.repetitions = repetitions;

  using clock = std::chrono::steady_clock;
  volatile double sink = 0.0;  // keeps the calls from being optimized away
  const auto warmup = metric.fn(scores, labels, params);
  sink = sink + warmup.value.value_or(0.0);
  rec.times_ms.reserve(repetitions);
  for (std::size_t r = 0; r < repetitions; ++r) {
    const auto t0 = clock::now();
    const auto value = metric.fn(scores, labels, params);
    const auto t1 = clock::now();
    sink = sink + value.value.value_or(0.0);
    rec.times_ms.push_back(
        std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  auto sorted = rec.times_ms;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = sorted.size() / 2;
  rec.median_ms = sorted.size() % 2 == 1
                      ? sorted[mid]
                      : 0.5 * (sorted[mid - 1] + sorted[mid]);
  rec.mean_ms = std::accumulate(sorted.begin(), sorted.end(), 0.0) /
                static_cast<double>(sorted.size());
  return rec;
}

LatencyRecord measure_latency(const std::string& metric_name,
                              std::size_t ts_length, std::size_t segment_count,
                              std::size_t repetitions, std::uint64_t seed) {
  SynthDatasetSpec ds;
  ds.ts_length = ts_length;
  ds.segments = segment_count;
  const std::size_t len =
      std::max<std::size_t>(1, ts_length / (2 * std::max<std::size_t>(
                                                   1, segment_count)));
  ds.seg_len_min = len;
  ds.seg_len_max = len;
  ds.seed = seed;
  const auto labels = generate_labels(ds);
  AsgmSpec model;
  model.family = AsgmFamily::AccQ;
  model.q = 0.9;
  model.sigma = 0.05;
  model.seed = rng::derive(seed, rng::kTagScores);
  const auto scores = generate_scores(model, labels);
  const auto registry = default_registry();
  return measure_latency(registry.at(metric_name), scores, labels,
                         MetricParams{}, repetitions);
}

double loglog_slope(std::span<const LatencyRecord> records) {
  if (records.size() < 2) {
    throw std::invalid_argument("loglog_slope: need at least two records");
  }
  double mx = 0.0, my = 0.0;
  for (const auto& r : records) {
    if (r.ts_length == 0 || r.median_ms <= 0.0) {
      throw std::invalid_argument("loglog_slope: non-positive length or time");
    }
    mx += std::log(static_cast<double>(r.ts_length));
    my += std::log(r.median_ms);
  }
  mx /= static_cast<double>(records.size());
  my /= static_cast<double>(records.size());
  double sxy = 0.0, sxx = 0.0;
  for (const auto& r : records) {
    const double dx = std::log(static_cast<double>(r.ts_length)) - mx;
    const double dy = std::log(r.median_ms) - my;
    sxy += dx * dy;
    sxx += dx * dx;
  }
  return sxy / sxx;
}

}  // namespace cce
