#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <catch2/catch_amalgamated.hpp>
#include <nlohmann/json.hpp>

#include "cce/asgm.hpp"
#include "cce/cce.hpp"
#include "cce/commands.hpp"
#include "cce/io.hpp"

namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("ccebench-test-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_text(const fs::path& p, const std::string& body) {
  std::ofstream out(p, std::ios::binary);
  out << body;
}

std::string read_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("doubles format as shortest round-trip strings") {
  CHECK(cce::format_double(0.5) == "0.5");
  CHECK(cce::format_double(1.0) == "1");
  CHECK(cce::format_double(-1.0) == "-1");
  CHECK(cce::format_double(0.1) == "0.1");
  for (double v : {0.824171780929591, -0.413836455477017, 1e-17, 12345.6789}) {
    CHECK(std::stod(cce::format_double(v)) == v);
  }
}

TEST_CASE("score files parse with optional header and CRLF") {
  const auto dir = fresh_dir("scorefile");
  write_text(dir / "plain.txt", "0.1\n0.9\n0.5\n");
  CHECK(cce::read_score_file(dir / "plain.txt") ==
        std::vector<double>{0.1, 0.9, 0.5});

  write_text(dir / "header.txt", "score\r\n0.25\r\n1\r\n");
  CHECK(cce::read_score_file(dir / "header.txt") ==
        std::vector<double>{0.25, 1.0});

  write_text(dir / "bad.txt", "0.1\n0.2\noops\n");
  try {
    cce::read_score_file(dir / "bad.txt");
    FAIL("expected parse failure");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find(":3:") != std::string::npos);
  }

  write_text(dir / "empty.txt", "");
  CHECK_THROWS_AS(cce::read_score_file(dir / "empty.txt"), std::runtime_error);
  CHECK_THROWS_AS(cce::read_score_file(dir / "missing.txt"),
                  std::runtime_error);
}

TEST_CASE("label files accept only 0 and 1") {
  const auto dir = fresh_dir("labelfile");
  write_text(dir / "ok.txt", "label\n0\n1\n1\n0\n");
  CHECK(cce::read_label_file(dir / "ok.txt") ==
        cce::LabelSeries{0, 1, 1, 0});
  write_text(dir / "bad.txt", "0\n2\n");
  CHECK_THROWS_AS(cce::read_label_file(dir / "bad.txt"), std::runtime_error);
  write_text(dir / "frac.txt", "0\n0.5\n");
  CHECK_THROWS_AS(cce::read_label_file(dir / "frac.txt"), std::runtime_error);
}

TEST_CASE("atomic writes replace whole files") {
  const auto dir = fresh_dir("atomic");
  const auto p = dir / "out.txt";
  cce::write_file_atomic(p, "first\n");
  CHECK(read_bytes(p) == "first\n");
  cce::write_file_atomic(p, "second\n");
  CHECK(read_bytes(p) == "second\n");
  // no temporary litter left behind
  std::size_t entries = 0;
  for (auto it = fs::directory_iterator(dir); it != fs::directory_iterator();
       ++it) {
    ++entries;
  }
  CHECK(entries == 1);
}

TEST_CASE("eval command writes summary, metrics, and events") {
  const auto dir = fresh_dir("eval");
  cce::SynthDatasetSpec ds;
  ds.ts_length = 1000;
  ds.segments = 3;
  ds.seg_len_min = 20;
  ds.seg_len_max = 40;
  ds.seed = 9;
  const auto labels = cce::generate_labels(ds);
  cce::AsgmSpec model;
  model.family = cce::AsgmFamily::AccQ;
  model.q = 0.8;
  model.seed = 10;
  const auto scores = cce::generate_scores(model, labels);

  std::ostringstream sbuf, lbuf;
  for (double v : scores) sbuf << cce::format_double(v) << "\n";
  for (auto v : labels) lbuf << int(v) << "\n";
  write_text(dir / "scores.txt", sbuf.str());
  write_text(dir / "labels.txt", lbuf.str());

  cce::cli::EvalOptions opt;
  opt.scores_path = (dir / "scores.txt").string();
  opt.labels_path = (dir / "labels.txt").string();
  opt.out_dir = (dir / "out").string();
  opt.metrics = {"cce", "f1", "auc_roc"};
  REQUIRE(cce::cli::run_eval(opt) == cce::cli::kExitOk);

  const auto summary =
      nlohmann::json::parse(read_bytes(dir / "out" / "eval_summary.json"));
  const auto expect = cce::cce(scores, labels);
  CHECK(summary.at("metrics").at("cce").get<double>() == expect.s_cce);
  CHECK(summary.at("points").get<std::size_t>() == 1000);
  CHECK(fs::exists(dir / "out" / "eval_metrics.csv"));
  CHECK(fs::exists(dir / "out" / "eval_events.csv"));

  const std::string events = read_bytes(dir / "out" / "eval_events.csv");
  CHECK(events.find("confidence") != std::string::npos);
}

TEST_CASE("eval command rejects bad inputs with exit 2") {
  const auto dir = fresh_dir("evalbad");
  write_text(dir / "scores.txt", "0.1\n0.2\n0.3\n");
  write_text(dir / "labels.txt", "0\n1\n");

  cce::cli::EvalOptions opt;
  opt.scores_path = (dir / "scores.txt").string();
  opt.labels_path = (dir / "labels.txt").string();
  opt.out_dir = (dir / "out").string();
  CHECK(cce::cli::run_eval(opt) == cce::cli::kExitInvalid);

  opt.labels_path = (dir / "nope.txt").string();
  CHECK(cce::cli::run_eval(opt) == cce::cli::kExitInvalid);

  write_text(dir / "labels3.txt", "0\n1\n1\n");
  opt.labels_path = (dir / "labels3.txt").string();
  opt.metrics = {"unknown_metric"};
  CHECK(cce::cli::run_eval(opt) == cce::cli::kExitInvalid);
}

TEST_CASE("synth command reruns byte-identically from its manifest") {
  const auto dir = fresh_dir("synth");
  nlohmann::json cfg;
  cfg["schema"] = "ccebench/synth-config/v1";
  cfg["seed"] = 7;
  cfg["datasets"] = nlohmann::json::array();
  for (int i = 0; i < 2; ++i) {
    nlohmann::json d;
    d["name"] = "unit-" + std::to_string(i);
    d["ts_length"] = 600;
    d["segments"] = 2;
    d["seg_len_min"] = 15;
    d["seg_len_max"] = 30;
    cfg["datasets"].push_back(d);
  }
  write_text(dir / "config.json", cfg.dump(2) + "\n");

  cce::cli::SynthOptions opt;
  opt.spec_path = (dir / "config.json").string();
  opt.out_dir = (dir / "a").string();
  REQUIRE(cce::cli::run_synth(opt) == cce::cli::kExitOk);
  REQUIRE(fs::exists(dir / "a" / "unit-0.labels.csv"));
  REQUIRE(fs::exists(dir / "a" / "unit-1.labels.csv"));
  REQUIRE(fs::exists(dir / "a" / "synth_manifest.json"));

  const auto y = cce::read_label_file(dir / "a" / "unit-0.labels.csv");
  REQUIRE(y.size() == 600);
  CHECK(cce::extract_events(y).anomaly_events == 2);

  cce::cli::SynthOptions again;
  again.spec_path = (dir / "a" / "synth_manifest.json").string();
  again.out_dir = (dir / "b").string();
  REQUIRE(cce::cli::run_synth(again) == cce::cli::kExitOk);
  for (const char* f :
       {"unit-0.labels.csv", "unit-1.labels.csv", "synth_manifest.json"}) {
    CHECK(read_bytes(dir / "a" / f) == read_bytes(dir / "b" / f));
  }

  cce::cli::SynthOptions bad;
  bad.spec_path = (dir / "does-not-exist.json").string();
  bad.out_dir = (dir / "c").string();
  CHECK(cce::cli::run_synth(bad) == cce::cli::kExitInvalid);
}

TEST_CASE("rankeval command writes per-task reports deterministically") {
  const auto dir = fresh_dir("rankeval");
  nlohmann::json cfg;
  cfg["schema"] = "ccebench/rankeval-config/v1";
  cfg["seed"] = 42;
  cfg["tasks"] = {"AccQ"};
  cfg["metrics"] = {"cce"};
  cfg["sigmas"] = {0.0};
  cfg["datasets"] = nlohmann::json::array();
  {
    nlohmann::json d;
    d["name"] = "tiny";
    d["ts_length"] = 2000;
    d["segments"] = 3;
    d["seg_len_min"] = 40;
    d["seg_len_max"] = 60;
    cfg["datasets"].push_back(d);
  }
  write_text(dir / "config.json", cfg.dump(2) + "\n");

  cce::cli::RankevalOptions opt;
  opt.config_path = (dir / "config.json").string();
  opt.out_dir = (dir / "a").string();
  REQUIRE(cce::cli::run_rankeval(opt) == cce::cli::kExitOk);
  REQUIRE(fs::exists(dir / "a" / "rank_AccQ.csv"));
  REQUIRE(fs::exists(dir / "a" / "rank_AccQ_cells.csv"));
  REQUIRE(fs::exists(dir / "a" / "rank_AccQ_values.csv"));
  REQUIRE(fs::exists(dir / "a" / "rankeval_manifest.json"));

  const std::string summary = read_bytes(dir / "a" / "rank_AccQ.csv");
  CHECK(summary.find("spearman") != std::string::npos);

  cce::cli::RankevalOptions again;
  again.config_path = (dir / "a" / "rankeval_manifest.json").string();
  again.out_dir = (dir / "b").string();
  REQUIRE(cce::cli::run_rankeval(again) == cce::cli::kExitOk);
  for (const char* f : {"rank_AccQ.csv", "rank_AccQ_cells.csv",
                        "rank_AccQ_values.csv", "rankeval_manifest.json"}) {
    CHECK(read_bytes(dir / "a" / f) == read_bytes(dir / "b" / f));
  }

  cce::cli::RankevalOptions bad = opt;
  bad.metrics = {"nonsense"};
  bad.metric_set = true;
  bad.out_dir = (dir / "c").string();
  CHECK(cce::cli::run_rankeval(bad) == cce::cli::kExitInvalid);
}
