#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cce::cli {

// Command implementations shared by the ccebench binary and the tests.
// Return codes: 0 success, 2 input/validation failure (parse errors carry
// file:line diagnostics on stderr). Output files are written atomically and
// every output embeds the effective configuration and seeds. rankeval and
// synth outputs contain nothing time- or machine-dependent, so re-running
// from a manifest reproduces them byte for byte.

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;

struct MetricOptions {
  double tau = 0.5;
  double alpha = 0.5;
  double eta = 0.5;
  std::string mode = "relaxed";  // "strict" | "relaxed"
  double threshold = 0.5;
};

struct EvalOptions {
  std::string scores_path;
  std::string labels_path;
  std::vector<std::string> metrics;  // empty = all registered
  MetricOptions metric;
  bool scale100 = false;
  std::string out_dir;  // empty = stdout only
};

struct SynthOptions {
  std::string spec_path;  // dataset spec JSON or a previous manifest
  std::uint64_t seed = 42;
  bool seed_set = false;  // true when --seed was passed explicitly
  std::string out_dir;
};

struct RankevalOptions {
  std::string config_path;  // optional JSON config or a previous manifest
  std::vector<std::string> tasks;    // empty = config/defaults
  std::vector<std::string> metrics;  // empty = config/defaults
  std::vector<double> sigmas;        // empty = config/defaults
  MetricOptions metric;
  bool metric_set = false;  // true when any metric flag was passed
  std::uint64_t seed = 42;
  bool seed_set = false;
  bool scale100 = false;
  bool scale100_set = false;
  std::string out_dir;
};

struct BenchOptions {
  std::vector<std::size_t> lengths = {10000, 100000, 1000000};
  std::vector<std::size_t> segment_counts = {2, 20, 200, 2000};
  std::size_t segment_sweep_length = 100000;
  std::vector<std::string> metrics = {"cce"};
  std::size_t repetitions = 9;
  double sigma = 0.05;
  std::uint64_t seed = 42;
  MetricOptions metric;
  std::string out_dir;
};

int run_eval(const EvalOptions& options);
int run_synth(const SynthOptions& options);
int run_rankeval(const RankevalOptions& options);
int run_bench(const BenchOptions& options);

}  // namespace cce::cli
