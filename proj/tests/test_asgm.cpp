#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <catch2/catch_amalgamated.hpp>

#include "cce/asgm.hpp"
#include "cce/rng.hpp"
#include "cce/series.hpp"

using cce::AsgmFamily;
using cce::AsgmSpec;
using cce::extract_events;
using cce::generate_labels;
using cce::generate_scores;
using cce::LabelSeries;
using cce::pattern_name;
using cce::SynthDatasetSpec;
using cce::VarianceClass;

namespace {

SynthDatasetSpec suite_spec(std::size_t n, std::size_t segments,
                            std::size_t lmin, std::size_t lmax,
                            std::uint64_t seed) {
  SynthDatasetSpec s;
  s.ts_length = n;
  s.segments = segments;
  s.seg_len_min = lmin;
  s.seg_len_max = lmax;
  s.seed = seed;
  return s;
}

LabelSeries half_anomalies(std::size_t n) {
  LabelSeries y(n, 0);
  for (std::size_t i = 0; i < n; i += 2) y[i] = 1;
  return y;
}

}  // namespace

TEST_CASE("labels: segment count, lengths, and separation") {
  const auto spec = suite_spec(10000, 20, 40, 60, 7);
  const auto y = generate_labels(spec);
  REQUIRE(y.size() == 10000);
  const auto part = extract_events(y);
  CHECK(part.anomaly_events == 20);
  CHECK(y.front() == 0);
  CHECK(y.back() == 0);
  for (const auto& ev : part.events) {
    if (ev.kind == cce::EventKind::Anomaly) {
      CHECK(ev.length() >= 40);
      CHECK(ev.length() <= 60);
    } else {
      CHECK(ev.length() >= 1);
    }
  }
}

TEST_CASE("labels: determinism and seed sensitivity") {
  const auto a = generate_labels(suite_spec(5000, 5, 20, 30, 11));
  const auto b = generate_labels(suite_spec(5000, 5, 20, 30, 11));
  CHECK(a == b);

  const auto c = generate_labels(suite_spec(5000, 5, 20, 30, 12));
  CHECK(a != c);  // placement must move with the seed
}

TEST_CASE("labels: zero segments and infeasible specs") {
  const auto none = generate_labels(suite_spec(100, 0, 0, 0, 1));
  CHECK(std::accumulate(none.begin(), none.end(), 0) == 0);

  // 3 segments of up to 40 points need 3*40 + 4 = 124 > 100
  CHECK_THROWS_AS(generate_labels(suite_spec(100, 3, 10, 40, 1)),
                  std::invalid_argument);
  // bad length bounds
  CHECK_THROWS_AS(generate_labels(suite_spec(100, 2, 12, 8, 1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(generate_labels(suite_spec(100, 2, 0, 8, 1)),
                  std::invalid_argument);
}

TEST_CASE("pattern names match the dataset families") {
  auto s = suite_spec(10000, 2, 450, 550, 0);
  CHECK(pattern_name(s) == "10k-2seg-500L");
  s = suite_spec(100000, 10, 1, 199, 0);
  s.variance_class = VarianceClass::High;
  CHECK(pattern_name(s) == "100k-10seg-100H");
}

TEST_CASE("accq: exact bands at q = 1") {
  const auto y = generate_labels(suite_spec(4000, 4, 50, 80, 3));
  AsgmSpec spec;
  spec.family = AsgmFamily::AccQ;
  spec.q = 1.0;
  spec.seed = 99;
  const auto s = generate_scores(spec, y);
  REQUIRE(s.size() == y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i]) {
      CHECK(s[i] >= 0.9);
      CHECK(s[i] <= 1.0);
    } else {
      CHECK(s[i] >= 0.0);
      CHECK(s[i] <= 0.05);
    }
  }
}

TEST_CASE("low-discrimination bands overlap the middle") {
  const auto y = half_anomalies(2000);
  AsgmSpec spec;
  spec.family = AsgmFamily::LowDisAccQ;
  spec.q = 1.0;
  spec.seed = 5;
  const auto s = generate_scores(spec, y);
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i]) {
      CHECK(s[i] >= 0.6);
      CHECK(s[i] <= 0.7);
    } else {
      CHECK(s[i] >= 0.0);
      CHECK(s[i] <= 0.4);
    }
  }
}

TEST_CASE("preq-negp: upgrades and base bands") {
  const auto y = half_anomalies(2000);
  AsgmSpec spec;
  spec.family = AsgmFamily::PreQNegP;
  spec.q = 1.0;
  spec.p = 0.0;
  spec.seed = 6;
  const auto s = generate_scores(spec, y);
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i]) {
      CHECK(s[i] >= 0.1);
      CHECK(s[i] <= 1.0);
    } else {
      CHECK(s[i] >= 0.0);
      CHECK(s[i] <= 0.1);
    }
  }
}

TEST_CASE("scores: bit-identical determinism") {
  const auto y = generate_labels(suite_spec(3000, 3, 30, 60, 21));
  AsgmSpec spec;
  spec.family = AsgmFamily::AccQ;
  spec.q = 0.7;
  spec.sigma = 0.1;
  spec.seed = 1234;
  const auto a = generate_scores(spec, y);
  const auto b = generate_scores(spec, y);
  CHECK(a == b);

  spec.seed = 1235;
  const auto c = generate_scores(spec, y);
  CHECK(a != c);
}

TEST_CASE("empirical correctness rate tracks q") {
  const std::size_t n = 100000;
  const auto y = half_anomalies(n);
  AsgmSpec spec;
  spec.family = AsgmFamily::AccQ;
  spec.q = 0.5;
  spec.seed = 31;
  const auto s = generate_scores(spec, y);
  std::size_t anom_hits = 0, norm_hits = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const bool high = s[i] > 0.5;
    if (y[i] && high) ++anom_hits;
    if (!y[i] && !high) ++norm_hits;
  }
  const double anom_rate = anom_hits / (n / 2.0);
  const double norm_rate = norm_hits / (n / 2.0);
  CHECK(anom_rate == Catch::Approx(0.5).margin(0.01));
  CHECK(norm_rate == Catch::Approx(0.5).margin(0.01));
}

TEST_CASE("empirical upgrade rates track q and p") {
  const std::size_t n = 100000;
  const auto y = half_anomalies(n);
  AsgmSpec spec;
  spec.family = AsgmFamily::PreQNegP;
  spec.q = 0.8;
  spec.p = 0.2;
  spec.seed = 77;
  const auto s = generate_scores(spec, y);
  std::size_t anom_up = 0, norm_up = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const bool upgraded = s[i] > 0.1;
    if (y[i] && upgraded) ++anom_up;
    if (!y[i] && upgraded) ++norm_up;
  }
  CHECK(anom_up / (n / 2.0) == Catch::Approx(0.8).margin(0.01));
  CHECK(norm_up / (n / 2.0) == Catch::Approx(0.2).margin(0.01));
}

TEST_CASE("noise is additive gaussian with the requested scale") {
  const auto y = half_anomalies(50000);
  AsgmSpec clean;
  clean.family = AsgmFamily::AccQ;
  clean.q = 0.9;
  clean.seed = 404;
  auto noisy = clean;
  noisy.sigma = 0.1;
  const auto s0 = generate_scores(clean, y);
  const auto s1 = generate_scores(noisy, y);
  double sum = 0.0, sum2 = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double d = s1[i] - s0[i];
    sum += d;
    sum2 += d * d;
  }
  const double mean = sum / y.size();
  const double var = sum2 / y.size() - mean * mean;
  CHECK(mean == Catch::Approx(0.0).margin(0.002));
  CHECK(std::sqrt(var) == Catch::Approx(0.1).margin(0.003));
}

TEST_CASE("models sharing a seed are pointwise ordered in q") {
  // shared draws make the correct sets nested, so raising q can only move
  // anomaly scores up and normal scores down
  const auto y = generate_labels(suite_spec(8000, 8, 40, 80, 55));
  AsgmSpec lo, hi;
  lo.family = hi.family = AsgmFamily::AccQ;
  lo.q = 0.3;
  hi.q = 0.8;
  lo.seed = hi.seed = 2024;
  const auto slo = generate_scores(lo, y);
  const auto shi = generate_scores(hi, y);
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i]) CHECK(shi[i] >= slo[i]);
    else CHECK(shi[i] <= slo[i]);
  }
}

TEST_CASE("spec validation") {
  AsgmSpec spec;
  spec.q = 0.0;
  CHECK_THROWS_AS(cce::validate(spec), std::invalid_argument);
  spec.q = 1.1;
  CHECK_THROWS_AS(cce::validate(spec), std::invalid_argument);
  spec.q = 0.5;
  spec.p = -0.1;
  CHECK_THROWS_AS(cce::validate(spec), std::invalid_argument);
  spec.p = 0.5;
  spec.sigma = -1.0;
  CHECK_THROWS_AS(cce::validate(spec), std::invalid_argument);

  const LabelSeries y = {0, 1, 0};
  spec.sigma = 0.0;
  CHECK_NOTHROW(generate_scores(spec, y));
  CHECK_THROWS_AS(generate_scores(spec, LabelSeries{}), std::invalid_argument);
}
