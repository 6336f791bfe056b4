#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "cce/series.hpp"

namespace cce {

// Anomaly score generation models. All three emit one score per timestep,
// independently across timesteps:
//   AccQ        correct with probability q; anomaly-correct and normal-wrong
//               draw from the high band 0.9 + 0.1*U, the other cases from the
//               low band 0.05*U.
//   LowDisAccQ  same decision rule with overlapping bands 0.6 + 0.1*U vs 0.4*U.
//   PreQNegP    base score 0.1*U; anomaly points upgraded to 0.1 + 0.9*U with
//               probability q, normal points with probability p.
// sigma > 0 adds unclipped N(0, sigma^2) noise on top.
enum class AsgmFamily { AccQ, LowDisAccQ, PreQNegP };

std::string family_name(AsgmFamily family);
AsgmFamily family_from_name(std::string_view name);

struct AsgmSpec {
  AsgmFamily family = AsgmFamily::AccQ;
  double q = 1.0;          // accuracy / anomaly-hit probability, (0, 1]
  double p = 0.0;          // false-positive probability, [0, 1] (PreQNegP)
  double sigma = 0.0;      // noise stddev, >= 0
  std::uint64_t seed = 0;  // stream key; equal seeds share per-timestep draws
};

void validate(const AsgmSpec& spec);

// Length-class of the segment length range, used only for naming.
enum class VarianceClass { Low, High };

struct SynthDatasetSpec {
  std::string name;  // empty -> pattern_name() is used
  std::size_t ts_length = 0;
  std::size_t segments = 0;
  std::size_t seg_len_min = 0;
  std::size_t seg_len_max = 0;
  VarianceClass variance_class = VarianceClass::Low;
  std::uint64_t seed = 0;
};

/// Canonical pattern name, e.g. {10000, 2, 450, 550, Low} -> "10k-2seg-500L".
std::string pattern_name(const SynthDatasetSpec& spec);

/// The dataset's display name: spec.name if set, else pattern_name().
std::string dataset_name(const SynthDatasetSpec& spec);

/// Exactly `segments` anomaly events with lengths uniform in
/// [seg_len_min, seg_len_max], placed without overlap and with at least one
/// normal point between events and at both ends. Deterministic per seed.
/// Throws std::invalid_argument when the segments cannot fit in ts_length.
LabelSeries generate_labels(const SynthDatasetSpec& spec);

/// Scores for the given labels under the model's family. Deterministic:
/// identical (spec, labels) give bit-identical output. Draws are keyed by
/// (seed, timestep, purpose), so specs sharing a seed share underlying draws
/// (paired evaluation across a model grid).
ScoreSeries generate_scores(const AsgmSpec& spec,
                            std::span<const std::uint8_t> labels);

}  // namespace cce
