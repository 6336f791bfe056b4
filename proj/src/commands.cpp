#include "cce/commands.hpp"

#include <algorithm>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "cce/asgm.hpp"
#include "cce/baselines.hpp"
#include "cce/cce.hpp"
#include "cce/io.hpp"
#include "cce/rankeval.hpp"
#include "cce/registry.hpp"
#include "cce/rng.hpp"

namespace cce::cli {

namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

CceMode parse_mode(const std::string& mode) {
  if (mode == "strict") return CceMode::Strict;
  if (mode == "relaxed") return CceMode::Relaxed;
  throw std::invalid_argument("mode must be 'strict' or 'relaxed', got '" +
                              mode + "'");
}

std::string mode_string(CceMode mode) {
  return mode == CceMode::Strict ? "strict" : "relaxed";
}

MetricParams to_params(const MetricOptions& opt) {
  MetricParams params;
  params.threshold = opt.threshold;
  params.cce.tau = opt.tau;
  params.cce.alpha = opt.alpha;
  params.cce.eta = opt.eta;
  params.cce.mode = parse_mode(opt.mode);
  validate(params.cce);
  return params;
}

std::string display_value(const std::optional<double>& value, bool scale100) {
  if (!value) return "NA";
  return format_double(scale100 ? *value * 100.0 : *value);
}

// dataset names appear in file names, so anything outside a conservative
// character set is replaced
std::string file_safe(const std::string& name) {
  std::string out = name;
  for (char& c : out) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '-' || c == '_' || c == '.';
    if (!ok) c = '_';
  }
  return out;
}

void ensure_out_dir(const std::string& out_dir) {
  if (out_dir.empty()) {
    throw std::invalid_argument("an output directory is required (--out)");
  }
  fs::create_directories(out_dir);
}

ordered_json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) {
    throw std::runtime_error(path + ": cannot open");
  }
  return ordered_json::parse(in);
}

void check_schema(const ordered_json& cfg, const std::string& config_id,
                  const std::string& manifest_id) {
  if (!cfg.contains("schema")) return;
  const auto schema = cfg.at("schema").get<std::string>();
  if (schema != config_id && schema != manifest_id) {
    throw std::invalid_argument("unsupported schema '" + schema +
                                "'; expected " + config_id + " or " +
                                manifest_id);
  }
}

std::string variance_class_name(VarianceClass vc) {
  return vc == VarianceClass::High ? "high" : "low";
}

VarianceClass variance_class_from(const std::string& name) {
  if (name == "low") return VarianceClass::Low;
  if (name == "high") return VarianceClass::High;
  throw std::invalid_argument("variance_class must be 'low' or 'high', got '" +
                              name + "'");
}

// Shared by synth and rankeval configs. Unknown keys are ignored so a
// manifest (which carries extra bookkeeping fields) always loads back.
std::vector<SynthDatasetSpec> parse_datasets(const ordered_json& cfg,
                                             std::uint64_t master_seed) {
  if (!cfg.contains("datasets")) {
    return default_dataset_suite(master_seed);
  }
  const std::uint64_t suite_key = rng::derive(master_seed, rng::kTagDataset);
  std::vector<SynthDatasetSpec> out;
  for (const auto& d : cfg.at("datasets")) {
    SynthDatasetSpec ds;
    ds.ts_length = d.at("ts_length").get<std::size_t>();
    ds.segments = d.at("segments").get<std::size_t>();
    ds.seg_len_min = d.value("seg_len_min", std::size_t{0});
    ds.seg_len_max = d.value("seg_len_max", std::size_t{0});
    ds.variance_class =
        variance_class_from(d.value("variance_class", std::string("low")));
    ds.name = d.value("name", std::string());
    if (ds.name.empty()) ds.name = pattern_name(ds);
    if (d.contains("seed")) {
      ds.seed = d.at("seed").get<std::uint64_t>();
    } else {
      ds.seed = rng::derive(suite_key, rng::hash_bytes(ds.name));
    }
    out.push_back(std::move(ds));
  }
  return out;
}

ordered_json dataset_to_json(const SynthDatasetSpec& ds) {
  ordered_json d;
  d["name"] = dataset_name(ds);
  d["ts_length"] = ds.ts_length;
  d["segments"] = ds.segments;
  d["seg_len_min"] = ds.seg_len_min;
  d["seg_len_max"] = ds.seg_len_max;
  d["variance_class"] = variance_class_name(ds.variance_class);
  d["seed"] = ds.seed;
  return d;
}

int fail(const std::exception& e) {
  std::cerr << "error: " << e.what() << "\n";
  return kExitInvalid;
}

}  // namespace

int run_eval(const EvalOptions& options) {
  try {
    const auto scores = read_score_file(options.scores_path);
    const auto labels = read_label_file(options.labels_path);
    if (scores.size() != labels.size()) {
      throw std::invalid_argument(
          "scores and labels differ in length (" +
          std::to_string(scores.size()) + " vs " +
          std::to_string(labels.size()) + ")");
    }
    const auto registry = default_registry();
    const auto metric_names =
        options.metrics.empty() ? registry.names() : options.metrics;
    const auto params = to_params(options.metric);

    std::vector<MetricValue> results;
    for (const auto& name : metric_names) {
      results.push_back(registry.at(name).fn(scores, labels, params));
    }
    const auto breakdown = cce(scores, labels, params.cce);

    for (const auto& r : results) {
      std::cout << r.metric << " = " << display_value(r.value, options.scale100)
                << (r.detail.empty() ? "" : "  [" + r.detail + "]") << "\n";
    }

    if (!options.out_dir.empty()) {
      ensure_out_dir(options.out_dir);
      const fs::path out(options.out_dir);

      std::ostringstream metrics_csv;
      metrics_csv << "metric,value,detail\n";
      for (const auto& r : results) {
        metrics_csv << r.metric << ','
                    << display_value(r.value, options.scale100) << ','
                    << r.detail << "\n";
      }
      write_file_atomic(out / "eval_metrics.csv", metrics_csv.str());

      std::ostringstream events_csv;
      events_csv << "index,begin,end,kind,length,confidence,uncertainty,"
                    "consistency,score,fallback\n";
      const auto& evs = breakdown.event_level.event_scores;
      for (std::size_t i = 0; i < evs.size(); ++i) {
        const auto& es = evs[i];
        events_csv << i << ',' << es.event.begin << ',' << es.event.end << ','
                   << (es.event.kind == EventKind::Anomaly ? "anomaly"
                                                           : "normal")
                   << ',' << es.event.length() << ','
                   << format_double(es.confidence) << ','
                   << format_double(es.uncertainty) << ','
                   << format_double(es.consistency) << ','
                   << format_double(es.score) << ',' << (es.fallback ? 1 : 0)
                   << "\n";
      }
      write_file_atomic(out / "eval_events.csv", events_csv.str());

      ordered_json summary;
      summary["schema"] = "ccebench/eval-summary/v1";
      summary["config"] = {{"scores", options.scores_path},
                           {"labels", options.labels_path},
                           {"metrics", metric_names},
                           {"tau", params.cce.tau},
                           {"alpha", params.cce.alpha},
                           {"eta", params.cce.eta},
                           {"mode", mode_string(params.cce.mode)},
                           {"threshold", params.threshold},
                           {"scale100", options.scale100}};
      summary["points"] = labels.size();
      const auto partition = extract_events(labels);
      summary["anomaly_events"] = partition.anomaly_events;
      summary["normal_events"] = partition.normal_events;
      summary["anomaly_points"] = partition.anomaly_points;
      summary["normal_points"] = partition.normal_points;
      ordered_json metric_values;
      ordered_json metric_detail;
      for (const auto& r : results) {
        if (r.value) metric_values[r.metric] = *r.value;
        else metric_values[r.metric] = nullptr;
        metric_detail[r.metric] = r.detail;
      }
      summary["metrics"] = metric_values;
      summary["detail"] = metric_detail;
      summary["breakdown"] = {
          {"s_event", breakdown.event_level.s_event},
          {"s_event_anom", breakdown.event_level.s_anom},
          {"s_event_norm", breakdown.event_level.s_norm},
          {"s_global", breakdown.global.s_global},
          {"s_global_anom", breakdown.global.s_anom},
          {"s_global_norm", breakdown.global.s_norm},
          {"s_cce", breakdown.s_cce},
          {"fallback_events", breakdown.event_level.fallback_events},
          {"fallback_segments", breakdown.global.fallback_segments},
          {"anomaly_class_absent", breakdown.anomaly_class_absent},
          {"normal_class_absent", breakdown.normal_class_absent}};
      write_file_atomic(out / "eval_summary.json", summary.dump(2) + "\n");
    }
    return kExitOk;
  } catch (const std::exception& e) {
    return fail(e);
  }
}

int run_synth(const SynthOptions& options) {
  try {
    ordered_json cfg = ordered_json::object();
    if (!options.spec_path.empty()) {
      cfg = load_json_file(options.spec_path);
      check_schema(cfg, "ccebench/synth-config/v1",
                   "ccebench/synth-manifest/v1");
    }
    const std::uint64_t master =
        options.seed_set ? options.seed
                         : cfg.value("seed", std::uint64_t{options.seed});
    const auto datasets = parse_datasets(cfg, master);
    ensure_out_dir(options.out_dir);
    const fs::path out(options.out_dir);

    ordered_json manifest;
    manifest["schema"] = "ccebench/synth-manifest/v1";
    manifest["seed"] = master;
    manifest["datasets"] = ordered_json::array();
    for (const auto& ds : datasets) {
      const auto labels = generate_labels(ds);
      const std::string file = file_safe(dataset_name(ds)) + ".labels.csv";
      std::ostringstream body;
      body << "label\n";
      for (const auto y : labels) body << int(y) << "\n";
      write_file_atomic(out / file, body.str());

      const auto partition = extract_events(labels);
      auto d = dataset_to_json(ds);
      d["file"] = file;
      d["anomaly_events"] = partition.anomaly_events;
      d["anomaly_points"] = partition.anomaly_points;
      manifest["datasets"].push_back(std::move(d));
      std::cout << dataset_name(ds) << ": " << labels.size() << " points, "
                << partition.anomaly_events << " anomaly events -> " << file
                << "\n";
    }
    write_file_atomic(out / "synth_manifest.json", manifest.dump(2) + "\n");
    return kExitOk;
  } catch (const std::exception& e) {
    return fail(e);
  }
}

int run_rankeval(const RankevalOptions& options) {
  try {
    ordered_json cfg = ordered_json::object();
    if (!options.config_path.empty()) {
      cfg = load_json_file(options.config_path);
      check_schema(cfg, "ccebench/rankeval-config/v1",
                   "ccebench/rankeval-manifest/v1");
    }
    const auto registry = default_registry();

    const std::uint64_t seed =
        options.seed_set ? options.seed
                         : cfg.value("seed", std::uint64_t{options.seed});
    std::vector<std::string> task_names = options.tasks;
    if (task_names.empty()) {
      if (cfg.contains("tasks")) {
        task_names = cfg.at("tasks").get<std::vector<std::string>>();
      } else {
        for (const auto t : all_tasks()) task_names.push_back(task_name(t));
      }
    }
    std::vector<std::string> metric_names = options.metrics;
    if (metric_names.empty()) {
      metric_names = cfg.contains("metrics")
                         ? cfg.at("metrics").get<std::vector<std::string>>()
                         : registry.names();
    }
    std::vector<double> sigmas = options.sigmas;
    if (sigmas.empty()) {
      sigmas = cfg.contains("sigmas")
                   ? cfg.at("sigmas").get<std::vector<double>>()
                   : std::vector<double>{0.0, 0.05, 0.1};
    }
    const bool scale100 = options.scale100_set
                              ? options.scale100
                              : cfg.value("scale100", false);

    MetricOptions mopt;
    if (cfg.contains("metric_params")) {
      const auto& mp = cfg.at("metric_params");
      mopt.threshold = mp.value("threshold", mopt.threshold);
      mopt.tau = mp.value("tau", mopt.tau);
      mopt.alpha = mp.value("alpha", mopt.alpha);
      mopt.eta = mp.value("eta", mopt.eta);
      mopt.mode = mp.value("mode", mopt.mode);
    }
    if (options.metric_set) mopt = options.metric;
    const auto params = to_params(mopt);

    const auto datasets = parse_datasets(cfg, seed);
    for (const auto& name : metric_names) registry.at(name);

    ensure_out_dir(options.out_dir);
    const fs::path out(options.out_dir);

    for (const auto& tname : task_names) {
      TaskSpec spec;
      spec.task = task_from_name(tname);
      spec.models = default_model_grid(spec.task);
      spec.sigmas = sigmas;
      spec.datasets = datasets;
      spec.seed = seed;
      const auto report = run_task(spec, registry, metric_names, params);
      const auto labels = model_labels(spec);

      std::ostringstream summary_csv;
      summary_csv
          << "metric,sigma,spearman,kendall,mean_rank_deviation,cells,tie_cells\n";
      for (const auto& row : report.summary) {
        summary_csv << row.metric << ','
                    << (row.sigma ? format_double(*row.sigma)
                                  : std::string("avg"))
                    << ',' << format_double(row.spearman) << ','
                    << format_double(row.kendall) << ','
                    << format_double(row.md) << ',' << row.cells << ','
                    << row.tie_cells << "\n";
      }
      write_file_atomic(out / ("rank_" + tname + ".csv"), summary_csv.str());

      std::ostringstream cells_csv;
      cells_csv << "metric,dataset,sigma,defined,had_ties,spearman,kendall,"
                   "mean_rank_deviation\n";
      for (const auto& cell : report.cells) {
        cells_csv << cell.metric << ',' << cell.dataset << ','
                  << format_double(cell.sigma) << ',' << (cell.defined ? 1 : 0)
                  << ',' << (cell.had_ties ? 1 : 0) << ',';
        if (cell.defined) {
          cells_csv << format_double(cell.spearman) << ','
                    << format_double(cell.kendall) << ','
                    << format_double(cell.md) << "\n";
        } else {
          cells_csv << "NA,NA,NA\n";
        }
      }
      write_file_atomic(out / ("rank_" + tname + "_cells.csv"),
                        cells_csv.str());

      std::ostringstream values_csv;
      values_csv << "metric,dataset,sigma,model,value,rank\n";
      for (const auto& cell : report.cells) {
        for (std::size_t mi = 0; mi < cell.values.size(); ++mi) {
          values_csv << cell.metric << ',' << cell.dataset << ','
                     << format_double(cell.sigma) << ',' << labels[mi] << ','
                     << display_value(cell.values[mi], scale100) << ',';
          if (cell.defined) values_csv << cell.ranks[mi] << "\n";
          else values_csv << "NA\n";
        }
      }
      write_file_atomic(out / ("rank_" + tname + "_values.csv"),
                        values_csv.str());

      for (const auto& row : report.summary) {
        if (row.sigma) continue;
        std::cout << tname << " " << row.metric
                  << " (sigma-avg): Sp=" << format_double(row.spearman)
                  << " Kd=" << format_double(row.kendall)
                  << " MD=" << format_double(row.md) << " over " << row.cells
                  << " cells\n";
      }
    }

    ordered_json manifest;
    manifest["schema"] = "ccebench/rankeval-manifest/v1";
    manifest["seed"] = seed;
    manifest["tasks"] = task_names;
    manifest["metrics"] = metric_names;
    manifest["sigmas"] = sigmas;
    manifest["scale100"] = scale100;
    manifest["metric_params"] = {{"threshold", params.threshold},
                                 {"tau", params.cce.tau},
                                 {"alpha", params.cce.alpha},
                                 {"eta", params.cce.eta},
                                 {"mode", mode_string(params.cce.mode)}};
    manifest["datasets"] = ordered_json::array();
    for (const auto& ds : datasets) {
      manifest["datasets"].push_back(dataset_to_json(ds));
    }
    write_file_atomic(out / "rankeval_manifest.json", manifest.dump(2) + "\n");
    return kExitOk;
  } catch (const std::exception& e) {
    return fail(e);
  }
}

namespace {

struct BenchInstance {
  ScoreSeries scores;
  LabelSeries labels;
};

BenchInstance bench_instance(std::size_t n, std::size_t segments, double sigma,
                             AsgmFamily family, double q, double p,
                             std::uint64_t seed) {
  SynthDatasetSpec ds;
  ds.ts_length = n;
  ds.segments = segments;
  const std::size_t len = std::max<std::size_t>(
      1, n / (2 * std::max<std::size_t>(1, segments)));
  ds.seg_len_min = len;
  ds.seg_len_max = len;
  ds.seed = seed;
  BenchInstance inst;
  inst.labels = generate_labels(ds);
  AsgmSpec model;
  model.family = family;
  model.q = q;
  model.p = p;
  model.sigma = sigma;
  model.seed = rng::derive(seed, rng::kTagScores);
  inst.scores = generate_scores(model, inst.labels);
  return inst;
}

void append_latency_row(std::ostringstream& csv, const LatencyRecord& rec) {
  const auto [lo, hi] =
      std::minmax_element(rec.times_ms.begin(), rec.times_ms.end());
  csv << rec.metric << ',' << rec.ts_length << ',' << rec.segment_count << ','
      << rec.repetitions << ',' << format_double(rec.median_ms) << ','
      << format_double(rec.mean_ms) << ',' << format_double(*lo) << ','
      << format_double(*hi) << "\n";
}

}  // namespace

int run_bench(const BenchOptions& options) {
  try {
    if (options.repetitions < 5) {
      throw std::invalid_argument("bench: need at least 5 repetitions");
    }
    if (options.lengths.empty() || options.segment_counts.empty() ||
        options.metrics.empty()) {
      throw std::invalid_argument(
          "bench: lengths, segment_counts, and metrics must be non-empty");
    }
    const auto registry = default_registry();
    for (const auto& name : options.metrics) registry.at(name);
    const auto params = to_params(options.metric);
    ensure_out_dir(options.out_dir);
    const fs::path out(options.out_dir);
    const char* cols =
        "metric,ts_length,segments,repetitions,median_ms,mean_ms,min_ms,max_"
        "ms\n";

    ordered_json results;
    std::ostringstream lengths_csv;
    lengths_csv << cols;
    for (const auto& name : options.metrics) {
      std::vector<LatencyRecord> records;
      for (const std::size_t n : options.lengths) {
        const auto inst = bench_instance(n, 20, options.sigma,
                                         AsgmFamily::AccQ, 0.9, 0.0,
                                         options.seed);
        const auto rec = measure_latency(registry.at(name), inst.scores,
                                         inst.labels, params,
                                         options.repetitions);
        append_latency_row(lengths_csv, rec);
        std::cout << name << " n=" << n << ": median "
                  << format_double(rec.median_ms) << " ms\n";
        records.push_back(rec);
      }
      if (records.size() >= 2) {
        results[name]["loglog_slope"] = loglog_slope(records);
      }
    }
    write_file_atomic(out / "bench_lengths.csv", lengths_csv.str());

    std::ostringstream segments_csv;
    segments_csv << cols;
    for (const auto& name : options.metrics) {
      double lo = 0.0, hi = 0.0;
      for (const std::size_t k : options.segment_counts) {
        const auto inst =
            bench_instance(options.segment_sweep_length, k, options.sigma,
                           AsgmFamily::AccQ, 0.9, 0.0, options.seed);
        const auto rec = measure_latency(registry.at(name), inst.scores,
                                         inst.labels, params,
                                         options.repetitions);
        append_latency_row(segments_csv, rec);
        std::cout << name << " segments=" << k << ": median "
                  << format_double(rec.median_ms) << " ms\n";
        if (lo == 0.0 || rec.median_ms < lo) lo = rec.median_ms;
        if (rec.median_ms > hi) hi = rec.median_ms;
      }
      if (lo > 0.0) {
        results[name]["segment_latency_ratio"] = hi / lo;
      }
    }
    write_file_atomic(out / "bench_segments.csv", segments_csv.str());

    // one representative mid-grid model per ranking task
    struct TaskShape {
      RankTask task;
      AsgmFamily family;
      double q, p;
    };
    const TaskShape shapes[] = {
        {RankTask::AccQ, AsgmFamily::AccQ, 0.5, 0.0},
        {RankTask::LowDisAccQ, AsgmFamily::LowDisAccQ, 0.5, 0.0},
        {RankTask::PreQNegP_Q, AsgmFamily::PreQNegP, 0.5, 0.1},
        {RankTask::PreQNegP_P, AsgmFamily::PreQNegP, 0.9, 0.1},
    };
    std::ostringstream tasks_csv;
    tasks_csv << "metric,task,ts_length,segments,repetitions,median_ms,mean_"
                 "ms\n";
    for (const auto& name : options.metrics) {
      for (const auto& shape : shapes) {
        const auto inst =
            bench_instance(options.segment_sweep_length, 20, options.sigma,
                           shape.family, shape.q, shape.p, options.seed);
        const auto rec = measure_latency(registry.at(name), inst.scores,
                                         inst.labels, params,
                                         options.repetitions);
        tasks_csv << rec.metric << ',' << task_name(shape.task) << ','
                  << rec.ts_length << ',' << rec.segment_count << ','
                  << rec.repetitions << ',' << format_double(rec.median_ms)
                  << ',' << format_double(rec.mean_ms) << "\n";
      }
    }
    write_file_atomic(out / "bench_tasks.csv", tasks_csv.str());

    const auto info = machine_info();
    ordered_json summary;
    summary["schema"] = "ccebench/bench-summary/v1";
    summary["config"] = {{"lengths", options.lengths},
                         {"segment_counts", options.segment_counts},
                         {"segment_sweep_length", options.segment_sweep_length},
                         {"metrics", options.metrics},
                         {"repetitions", options.repetitions},
                         {"sigma", options.sigma},
                         {"seed", options.seed},
                         {"threshold", params.threshold},
                         {"tau", params.cce.tau},
                         {"alpha", params.cce.alpha},
                         {"eta", params.cce.eta},
                         {"mode", mode_string(params.cce.mode)}};
    summary["machine"] = {{"os", info.os},
                          {"arch", info.arch},
                          {"compiler", info.compiler},
                          {"threads_used", info.threads_used}};
    summary["results"] = results;
    write_file_atomic(out / "bench_summary.json", summary.dump(2) + "\n");
    return kExitOk;
  } catch (const std::exception& e) {
    return fail(e);
  }
}

}  // namespace cce::cli
