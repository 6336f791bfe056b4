#include "cce/registry.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

#include "cce/baselines.hpp"
#include "cce/io.hpp"

namespace cce {

void MetricRegistry::add(MetricEntry entry) {
  if (entry.name.empty()) {
    throw std::invalid_argument("registry: metric name must not be empty");
  }
  if (contains(entry.name)) {
    throw std::invalid_argument("registry: duplicate metric '" + entry.name +
                                "'");
  }
  entries_.push_back(std::move(entry));
}

void MetricRegistry::add(std::string name, MetricFn fn, bool higher_is_better) {
  add(MetricEntry{std::move(name), std::move(fn), higher_is_better});
}

bool MetricRegistry::contains(std::string_view name) const {
  for (const auto& e : entries_) {
    if (e.name == name) return true;
  }
  return false;
}

const MetricEntry& MetricRegistry::at(std::string_view name) const {
  for (const auto& e : entries_) {
    if (e.name == name) return e;
  }
  std::ostringstream msg;
  msg << "registry: unknown metric '" << name << "'; registered:";
  for (const auto& e : entries_) msg << ' ' << e.name;
  throw std::invalid_argument(msg.str());
}

std::vector<std::string> MetricRegistry::names() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.name);
  return out;
}

namespace {

std::string mode_name(CceMode mode) {
  return mode == CceMode::Strict ? "strict" : "relaxed";
}

std::string theta_detail(const MetricParams& params) {
  return "theta=" + format_double(params.threshold);
}

}  // namespace

MetricRegistry default_registry() {
  MetricRegistry reg;
  reg.add("cce",
          [](std::span<const double> s, std::span<const std::uint8_t> y,
             const MetricParams& p) {
            const auto bd = cce(s, y, p.cce);
            return MetricValue{"cce", bd.s_cce,
                               "tau=" + format_double(p.cce.tau) +
                                   ",alpha=" + format_double(p.cce.alpha) +
                                   ",eta=" + format_double(p.cce.eta) +
                                   ",mode=" + mode_name(p.cce.mode)};
          });
  // rank-based, so the min-max rescale would be a no-op anyway
  reg.add("auc_roc",
          [](std::span<const double> s, std::span<const std::uint8_t> y,
             const MetricParams&) {
            return MetricValue{"auc_roc", auc_roc(s, y), ""};
          });
  reg.add("f1", [](std::span<const double> s, std::span<const std::uint8_t> y,
                   const MetricParams& p) {
    return MetricValue{"f1", f1(normalize(s), y, p.threshold),
                       theta_detail(p)};
  });
  reg.add("f1_pa",
          [](std::span<const double> s, std::span<const std::uint8_t> y,
             const MetricParams& p) {
            return MetricValue{"f1_pa", f1_pa(normalize(s), y, p.threshold),
                               theta_detail(p)};
          });
  reg.add("reduced_f1",
          [](std::span<const double> s, std::span<const std::uint8_t> y,
             const MetricParams& p) {
            return MetricValue{"reduced_f1",
                               reduced_f1(normalize(s), y, p.threshold),
                               theta_detail(p)};
          });
  return reg;
}

}  // namespace cce
