#include "cce/asgm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "cce/rng.hpp"

namespace cce {

std::string family_name(AsgmFamily family) {
  switch (family) {
    case AsgmFamily::AccQ: return "AccQ";
    case AsgmFamily::LowDisAccQ: return "LowDisAccQ";
    case AsgmFamily::PreQNegP: return "PreQNegP";
  }
  throw std::invalid_argument("family_name: bad enum value");
}

AsgmFamily family_from_name(std::string_view name) {
  if (name == "AccQ") return AsgmFamily::AccQ;
  if (name == "LowDisAccQ") return AsgmFamily::LowDisAccQ;
  if (name == "PreQNegP") return AsgmFamily::PreQNegP;
  throw std::invalid_argument("unknown score model '" + std::string(name) +
                              "'; known: AccQ LowDisAccQ PreQNegP");
}

void validate(const AsgmSpec& spec) {
  if (!(spec.q > 0.0 && spec.q <= 1.0)) {
    throw std::invalid_argument("score model: q must lie in (0, 1]");
  }
  if (!(spec.p >= 0.0 && spec.p <= 1.0)) {
    throw std::invalid_argument("score model: p must lie in [0, 1]");
  }
  if (!(spec.sigma >= 0.0)) {
    throw std::invalid_argument("score model: sigma must be >= 0");
  }
}

namespace {

std::string length_tag(std::size_t n) {
  if (n >= 1000000 && n % 1000000 == 0) {
    return std::to_string(n / 1000000) + "m";
  }
  if (n >= 1000 && n % 1000 == 0) {
    return std::to_string(n / 1000) + "k";
  }
  return std::to_string(n);
}

}  // namespace

std::string pattern_name(const SynthDatasetSpec& spec) {
  const std::size_t mid = (spec.seg_len_min + spec.seg_len_max) / 2;
  return length_tag(spec.ts_length) + "-" + std::to_string(spec.segments) +
         "seg-" + std::to_string(mid) +
         (spec.variance_class == VarianceClass::High ? "H" : "L");
}

std::string dataset_name(const SynthDatasetSpec& spec) {
  return spec.name.empty() ? pattern_name(spec) : spec.name;
}

LabelSeries generate_labels(const SynthDatasetSpec& spec) {
  if (spec.ts_length == 0) {
    throw std::invalid_argument("labels: ts_length must be positive");
  }
  LabelSeries labels(spec.ts_length, 0);
  if (spec.segments == 0) return labels;
  if (spec.seg_len_min < 1 || spec.seg_len_min > spec.seg_len_max) {
    throw std::invalid_argument(
        "labels: need 1 <= seg_len_min <= seg_len_max");
  }
  // worst case must fit: every segment at max length plus a one-point normal
  // gap before, between, and after the segments
  if (spec.segments * spec.seg_len_max + spec.segments + 1 > spec.ts_length) {
    throw std::invalid_argument("labels: spec cannot fit in ts_length: " +
                                dataset_name(spec));
  }

  const std::uint64_t len_key = rng::derive(spec.seed, rng::kTagSegLength);
  const std::uint64_t gap_key = rng::derive(spec.seed, rng::kTagSegGap);

  std::vector<std::size_t> lengths(spec.segments);
  std::size_t total_anomaly = 0;
  const std::size_t width = spec.seg_len_max - spec.seg_len_min + 1;
  for (std::size_t i = 0; i < spec.segments; ++i) {
    const auto offset = static_cast<std::size_t>(
        rng::u01_at(len_key, i) * static_cast<double>(width));
    lengths[i] = spec.seg_len_min + std::min(offset, width - 1);
    total_anomaly += lengths[i];
  }

  // distribute the leftover normal points over the segments+1 gaps, each of
  // which already holds one mandatory point
  const std::size_t gaps = spec.segments + 1;
  std::size_t slack = spec.ts_length - total_anomaly - gaps;
  std::vector<std::size_t> gap_sizes(gaps, 1);
  std::vector<double> weights(gaps);
  double weight_total = 0.0;
  for (std::size_t g = 0; g < gaps; ++g) {
    weights[g] = rng::u01_at(gap_key, g);
    weight_total += weights[g];
  }
  std::size_t assigned = 0;
  if (weight_total > 0.0) {
    for (std::size_t g = 0; g < gaps; ++g) {
      const auto extra = static_cast<std::size_t>(
          weights[g] / weight_total * static_cast<double>(slack));
      gap_sizes[g] += extra;
      assigned += extra;
    }
  }
  gap_sizes[0] += slack - assigned;  // rounding remainder

  std::size_t pos = 0;
  for (std::size_t i = 0; i < spec.segments; ++i) {
    pos += gap_sizes[i];
    std::fill(labels.begin() + static_cast<std::ptrdiff_t>(pos),
              labels.begin() + static_cast<std::ptrdiff_t>(pos + lengths[i]),
              1);
    pos += lengths[i];
  }
  return labels;
}

ScoreSeries generate_scores(const AsgmSpec& spec,
                            std::span<const std::uint8_t> labels) {
  validate(spec);
  if (labels.empty()) {
    throw std::invalid_argument("scores: empty label series");
  }
  const std::uint64_t branch_key = rng::derive(spec.seed, rng::kTagBranch);
  const std::uint64_t high_key = rng::derive(spec.seed, rng::kTagHighBand);
  const std::uint64_t low_key = rng::derive(spec.seed, rng::kTagLowBand);
  const std::uint64_t noise_key = rng::derive(spec.seed, rng::kTagNoise);

  ScoreSeries scores(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] > 1) {
      throw std::invalid_argument("scores: labels must be 0 or 1");
    }
    const bool anomalous = labels[i] != 0;
    const double u_branch = rng::u01_at(branch_key, i);
    double s;
    if (spec.family == AsgmFamily::PreQNegP) {
      const bool upgraded = u_branch < (anomalous ? spec.q : spec.p);
      s = upgraded ? 0.1 + 0.9 * rng::u01_at(high_key, i)
                   : 0.1 * rng::u01_at(low_key, i);
    } else {
      const bool correct = u_branch < spec.q;
      // a wrong call on a normal point surfaces as a high score
      const bool high = anomalous == correct;
      if (spec.family == AsgmFamily::AccQ) {
        s = high ? 0.9 + 0.1 * rng::u01_at(high_key, i)
                 : 0.05 * rng::u01_at(low_key, i);
      } else {
        s = high ? 0.6 + 0.1 * rng::u01_at(high_key, i)
                 : 0.4 * rng::u01_at(low_key, i);
      }
    }
    if (spec.sigma > 0.0) {
      s += spec.sigma * rng::gauss_at(noise_key, i);
    }
    scores[i] = s;
  }
  return scores;
}

}  // namespace cce
