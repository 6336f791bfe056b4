// Python bindings for the scoring core. Thin: every function converts
// straight to the C++ entry points, values cross as plain lists and dicts.
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cce/asgm.hpp"
#include "cce/baselines.hpp"
#include "cce/beta.hpp"
#include "cce/cce.hpp"
#include "cce/rankeval.hpp"
#include "cce/registry.hpp"
#include "cce/series.hpp"

namespace py = pybind11;

namespace {

cce::CceMode parse_mode(const std::string& mode) {
  if (mode == "strict") return cce::CceMode::Strict;
  if (mode == "relaxed") return cce::CceMode::Relaxed;
  throw std::invalid_argument("mode must be 'strict' or 'relaxed', got '" +
                              mode + "'");
}

cce::CceConfig make_config(double tau, double alpha, double eta,
                           const std::string& mode, bool normalize_scores) {
  cce::CceConfig config;
  config.tau = tau;
  config.alpha = alpha;
  config.eta = eta;
  config.mode = parse_mode(mode);
  config.normalize_scores = normalize_scores;
  return config;
}

py::dict event_to_dict(const cce::Event& event) {
  py::dict d;
  d["begin"] = event.begin;
  d["end"] = event.end;
  d["kind"] = event.kind == cce::EventKind::Anomaly ? "anomaly" : "normal";
  d["length"] = event.length();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "confidence-consistency evaluation core";

  m.def(
      "normalize",
      [](const std::vector<double>& scores) {
        return cce::normalize(scores);
      },
      py::arg("scores"),
      "Min-max rescale to [0, 1]; a constant series maps to all 0.5.");

  m.def(
      "extract_events",
      [](const std::vector<std::uint8_t>& labels) {
        const auto partition = cce::extract_events(labels);
        py::list events;
        for (const auto& e : partition.events) events.append(event_to_dict(e));
        py::dict d;
        d["events"] = events;
        d["series_length"] = partition.series_length;
        d["anomaly_events"] = partition.anomaly_events;
        d["normal_events"] = partition.normal_events;
        d["anomaly_points"] = partition.anomaly_points;
        d["normal_points"] = partition.normal_points;
        return d;
      },
      py::arg("labels"),
      "Split a 0/1 label series into maximal same-label events.");

  m.def(
      "moments",
      [](const std::vector<double>& values) {
        const auto stats = cce::moments(values);
        py::dict d;
        d["mean"] = stats.mean;
        d["m2"] = stats.m2;
        d["count"] = stats.count;
        return d;
      },
      py::arg("values"),
      "Mean and population variance of values in [0, 1].");

  m.def(
      "fit_beta",
      [](const std::vector<double>& values) {
        const auto fit = cce::fit_beta(cce::moments(values));
        py::dict d;
        d["alpha"] = fit.alpha;
        d["beta"] = fit.beta;
        d["fittable"] = fit.fittable;
        d["uncertainty"] = fit.uncertainty;
        return d;
      },
      py::arg("values"),
      "Method-of-moments Beta fit with the capped-variance fallback.");

  m.def(
      "cce",
      [](const std::vector<double>& scores,
         const std::vector<std::uint8_t>& labels, double tau, double alpha,
         double eta, const std::string& mode, bool normalize_scores) {
        const auto bd = cce::cce(
            scores, labels, make_config(tau, alpha, eta, mode, normalize_scores));
        py::list events;
        for (const auto& es : bd.event_level.event_scores) {
          py::dict e = event_to_dict(es.event);
          e["confidence"] = es.confidence;
          e["uncertainty"] = es.uncertainty;
          e["consistency"] = es.consistency;
          e["score"] = es.score;
          e["fallback"] = es.fallback;
          events.append(e);
        }
        py::dict d;
        d["s_cce"] = bd.s_cce;
        d["s_event"] = bd.event_level.s_event;
        d["s_event_anom"] = bd.event_level.s_anom;
        d["s_event_norm"] = bd.event_level.s_norm;
        d["s_global"] = bd.global.s_global;
        d["s_global_anom"] = bd.global.s_anom;
        d["s_global_norm"] = bd.global.s_norm;
        d["fallback_events"] = bd.event_level.fallback_events;
        d["fallback_segments"] = bd.global.fallback_segments;
        d["anomaly_class_absent"] = bd.anomaly_class_absent;
        d["normal_class_absent"] = bd.normal_class_absent;
        d["events"] = events;
        return d;
      },
      py::arg("scores"), py::arg("labels"), py::arg("tau") = 0.5,
      py::arg("alpha") = 0.5, py::arg("eta") = 0.5,
      py::arg("mode") = "relaxed", py::arg("normalize") = true,
      "Full confidence-consistency score with per-event breakdown.");

  m.def(
      "f1",
      [](const std::vector<double>& scores,
         const std::vector<std::uint8_t>& labels, double theta) {
        return cce::f1(scores, labels, theta);
      },
      py::arg("scores"), py::arg("labels"), py::arg("theta") = 0.5);

  m.def(
      "f1_pa",
      [](const std::vector<double>& scores,
         const std::vector<std::uint8_t>& labels, double theta) {
        return cce::f1_pa(scores, labels, theta);
      },
      py::arg("scores"), py::arg("labels"), py::arg("theta") = 0.5);

  m.def(
      "reduced_f1",
      [](const std::vector<double>& scores,
         const std::vector<std::uint8_t>& labels, double theta) {
        return cce::reduced_f1(scores, labels, theta);
      },
      py::arg("scores"), py::arg("labels"), py::arg("theta") = 0.5);

  m.def(
      "auc_roc",
      [](const std::vector<double>& scores,
         const std::vector<std::uint8_t>& labels) {
        return cce::auc_roc(scores, labels);
      },
      py::arg("scores"), py::arg("labels"),
      "Rank-statistic AUC; None when either class is empty.");

  m.def("list_metrics", [] { return cce::default_registry().names(); });

  m.def(
      "evaluate_metric",
      [](const std::string& name, const std::vector<double>& scores,
         const std::vector<std::uint8_t>& labels, double tau, double alpha,
         double eta, const std::string& mode, double threshold) {
        cce::MetricParams params;
        params.threshold = threshold;
        params.cce = make_config(tau, alpha, eta, mode, true);
        const auto value =
            cce::default_registry().at(name).fn(scores, labels, params);
        py::dict d;
        d["metric"] = value.metric;
        d["value"] = value.value ? py::object(py::float_(*value.value))
                                 : py::object(py::none());
        d["detail"] = value.detail;
        return d;
      },
      py::arg("name"), py::arg("scores"), py::arg("labels"),
      py::arg("tau") = 0.5, py::arg("alpha") = 0.5, py::arg("eta") = 0.5,
      py::arg("mode") = "relaxed", py::arg("threshold") = 0.5,
      "Evaluate one registered metric by name.");

  m.def(
      "generate_labels",
      [](std::size_t ts_length, std::size_t segments, std::size_t seg_len_min,
         std::size_t seg_len_max, std::uint64_t seed, const std::string& name) {
        cce::SynthDatasetSpec spec;
        spec.name = name;
        spec.ts_length = ts_length;
        spec.segments = segments;
        spec.seg_len_min = seg_len_min;
        spec.seg_len_max = seg_len_max;
        spec.seed = seed;
        return cce::generate_labels(spec);
      },
      py::arg("ts_length"), py::arg("segments"), py::arg("seg_len_min"),
      py::arg("seg_len_max"), py::arg("seed"), py::arg("name") = "dataset",
      "Deterministic synthetic 0/1 label series.");

  m.def(
      "generate_scores",
      [](const std::string& family, const std::vector<std::uint8_t>& labels,
         double q, double p, double sigma, std::uint64_t seed) {
        cce::AsgmSpec spec;
        spec.family = cce::family_from_name(family);
        spec.q = q;
        spec.p = p;
        spec.sigma = sigma;
        spec.seed = seed;
        return cce::generate_scores(spec, labels);
      },
      py::arg("family"), py::arg("labels"), py::arg("q") = 1.0,
      py::arg("p") = 0.0, py::arg("sigma") = 0.0, py::arg("seed") = 0,
      "Synthetic detector scores for a label series.");

  m.def(
      "rank_descending",
      [](const std::vector<double>& values) {
        bool had_ties = false;
        auto ranks = cce::rank_descending(values, &had_ties);
        return py::make_tuple(std::move(ranks), had_ties);
      },
      py::arg("values"),
      "Ranks (1 = best) by descending value; returns (ranks, had_ties).");

  m.def(
      "spearman",
      [](const std::vector<int>& expected, const std::vector<int>& actual) {
        return cce::spearman(expected, actual);
      },
      py::arg("expected"), py::arg("actual"));

  m.def(
      "kendall",
      [](const std::vector<int>& expected, const std::vector<int>& actual) {
        return cce::kendall(expected, actual);
      },
      py::arg("expected"), py::arg("actual"));

  m.def(
      "mean_rank_deviation",
      [](const std::vector<int>& expected, const std::vector<int>& actual) {
        return cce::mean_rank_deviation(expected, actual);
      },
      py::arg("expected"), py::arg("actual"));
}
