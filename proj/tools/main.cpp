// ccebench: evaluate anomaly scores, generate synthetic benchmark data,
// run ranking experiments, and measure metric latency.
#include <string>

#include <CLI11.hpp>

#include "cce/commands.hpp"

namespace {

void add_metric_flags(CLI::App* cmd, cce::cli::MetricOptions& opt) {
  cmd->add_option("--tau", opt.tau,
                  "decision threshold separating anomalous from normal scores")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--alpha", opt.alpha,
                  "event-level weight on the anomaly class")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--eta", opt.eta, "global weight on the anomaly class")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--mode", opt.mode, "confidence mode: strict or relaxed")
      ->check(CLI::IsMember({"strict", "relaxed"}));
  cmd->add_option("--threshold", opt.threshold,
                  "binarization threshold for thresholded baselines")
      ->check(CLI::Range(0.0, 1.0));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"confidence-consistency evaluation and ranking benchmark"};
  app.require_subcommand(1);

  cce::cli::EvalOptions eval_opts;
  auto* eval_cmd =
      app.add_subcommand("eval", "score one detector output against labels");
  eval_cmd->add_option("scores", eval_opts.scores_path, "score file, one value per line")
      ->required();
  eval_cmd->add_option("labels", eval_opts.labels_path, "label file, one 0/1 per line")
      ->required();
  eval_cmd
      ->add_option("--metrics", eval_opts.metrics,
                   "metrics to compute (default: all registered)")
      ->delimiter(',');
  add_metric_flags(eval_cmd, eval_opts.metric);
  eval_cmd->add_flag("--scale100", eval_opts.scale100,
                     "print metric values scaled to 0..100");
  eval_cmd->add_option("--out", eval_opts.out_dir,
                       "directory for eval_metrics.csv, eval_events.csv, "
                       "eval_summary.json");

  cce::cli::SynthOptions synth_opts;
  auto* synth_cmd =
      app.add_subcommand("synth", "generate synthetic label series");
  synth_cmd->add_option("spec", synth_opts.spec_path,
                        "dataset spec JSON or a previous synth manifest");
  auto* synth_seed =
      synth_cmd->add_option("--seed", synth_opts.seed, "master seed");
  synth_cmd->add_option("--out", synth_opts.out_dir, "output directory")
      ->required();

  cce::cli::RankevalOptions rank_opts;
  auto* rank_cmd = app.add_subcommand(
      "rankeval", "rank synthetic detectors and score metric consistency");
  rank_cmd->add_option("--config", rank_opts.config_path,
                       "config JSON or a previous rankeval manifest");
  rank_cmd
      ->add_option("--tasks", rank_opts.tasks,
                   "tasks to run (default: all four)")
      ->delimiter(',');
  rank_cmd
      ->add_option("--metrics", rank_opts.metrics,
                   "metrics to rank (default: all registered)")
      ->delimiter(',');
  rank_cmd
      ->add_option("--sigmas", rank_opts.sigmas,
                   "noise levels (default: 0, 0.05, 0.1)")
      ->delimiter(',');
  add_metric_flags(rank_cmd, rank_opts.metric);
  auto* rank_seed =
      rank_cmd->add_option("--seed", rank_opts.seed, "master seed");
  auto* rank_scale = rank_cmd->add_flag(
      "--scale100", rank_opts.scale100, "store metric values scaled to 0..100");
  rank_cmd->add_option("--out", rank_opts.out_dir, "output directory")
      ->required();

  cce::cli::BenchOptions bench_opts;
  auto* bench_cmd =
      app.add_subcommand("bench", "measure metric latency and scaling");
  bench_cmd
      ->add_option("--lengths", bench_opts.lengths,
                   "series lengths for the scaling sweep")
      ->delimiter(',');
  bench_cmd
      ->add_option("--segments", bench_opts.segment_counts,
                   "segment counts for the density sweep")
      ->delimiter(',');
  bench_cmd->add_option("--sweep-length", bench_opts.segment_sweep_length,
                        "series length used by the density and task sweeps");
  bench_cmd
      ->add_option("--metrics", bench_opts.metrics,
                   "metrics to time (default: cce)")
      ->delimiter(',');
  bench_cmd->add_option("--reps", bench_opts.repetitions,
                        "timed repetitions per point (minimum 5)");
  bench_cmd->add_option("--sigma", bench_opts.sigma,
                        "noise level of the timed instances");
  bench_cmd->add_option("--seed", bench_opts.seed, "master seed");
  add_metric_flags(bench_cmd, bench_opts.metric);
  bench_cmd->add_option("--out", bench_opts.out_dir, "output directory")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cce::cli::kExitOk : cce::cli::kExitInvalid;
  }

  if (eval_cmd->parsed()) {
    return cce::cli::run_eval(eval_opts);
  }
  if (synth_cmd->parsed()) {
    synth_opts.seed_set = synth_seed->count() > 0;
    return cce::cli::run_synth(synth_opts);
  }
  if (rank_cmd->parsed()) {
    rank_opts.seed_set = rank_seed->count() > 0;
    rank_opts.scale100_set = rank_scale->count() > 0;
    rank_opts.metric_set =
        rank_cmd->count("--tau") || rank_cmd->count("--alpha") ||
        rank_cmd->count("--eta") || rank_cmd->count("--mode") ||
        rank_cmd->count("--threshold");
    return cce::cli::run_rankeval(rank_opts);
  }
  if (bench_cmd->parsed()) {
    return cce::cli::run_bench(bench_opts);
  }
  return cce::cli::kExitInvalid;
}
