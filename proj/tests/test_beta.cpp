#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "cce/beta.hpp"

using cce::beta_variance;
using cce::Event;
using cce::EventKind;
using cce::event_uncertainty;
using cce::fit_beta;
using cce::moments;
using cce::MomentStats;

TEST_CASE("moments computes mean and population central moment") {
  const std::vector<double> seg = {0.2, 0.4, 0.6, 0.8};
  const auto st = moments(seg);
  CHECK(st.count == 4);
  CHECK(st.mean == Catch::Approx(0.5).margin(1e-15));
  CHECK(st.m2 == Catch::Approx(0.05).margin(1e-15));
}

TEST_CASE("moments of degenerate segments") {
  const auto single = moments(std::vector<double>{1.0});
  CHECK(single.mean == 1.0);
  CHECK(single.m2 == 0.0);

  const auto extremes = moments(std::vector<double>{0.0, 1.0});
  CHECK(extremes.mean == 0.5);
  CHECK(extremes.m2 == 0.25);
}

TEST_CASE("moments validates input") {
  CHECK_THROWS_AS(moments(std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(moments(std::vector<double>{-0.1, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(moments(std::vector<double>{0.5, 1.2}), std::invalid_argument);
}

TEST_CASE("moment matching recovers symmetric shapes") {
  // mean 0.5, m2 0.05 -> alpha = beta = 2, variance 4/(16*5) = 0.05
  const auto fit = fit_beta(moments(std::vector<double>{0.2, 0.4, 0.6, 0.8}));
  REQUIRE(fit.fittable);
  CHECK(fit.alpha == Catch::Approx(2.0).margin(1e-12));
  CHECK(fit.beta == Catch::Approx(2.0).margin(1e-12));
  CHECK(fit.uncertainty == Catch::Approx(0.05).margin(1e-15));
}

TEST_CASE("degenerate moments fall back") {
  const auto zero_var = fit_beta(MomentStats{0.7, 0.0, 3});
  CHECK_FALSE(zero_var.fittable);
  CHECK(zero_var.uncertainty == 0.0);

  // m2 == mean*(1-mean): no valid shape pair, uncertainty clamps to 0.25
  const auto extreme = fit_beta(MomentStats{0.5, 0.25, 2});
  CHECK_FALSE(extreme.fittable);
  CHECK(extreme.uncertainty == 0.25);
}

TEST_CASE("beta_variance validates shapes") {
  CHECK(beta_variance(2.0, 2.0) == Catch::Approx(0.05).margin(1e-15));
  CHECK_THROWS_AS(beta_variance(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(beta_variance(1.0, -2.0), std::invalid_argument);
}

TEST_CASE("event_uncertainty reads the event's segment") {
  const std::vector<double> scores = {0.9, 0.2, 0.4, 0.6, 0.8, 0.1};
  const Event ev{1, 5, EventKind::Anomaly};
  CHECK(event_uncertainty(scores, ev) == Catch::Approx(0.05).margin(1e-15));

  const Event bad{4, 7, EventKind::Anomaly};
  CHECK_THROWS_AS(event_uncertainty(scores, bad), std::invalid_argument);
}

TEST_CASE("fitted variance matches the sample moment") {
  // whenever the fit is valid the analytic Beta variance must reproduce m2
  std::mt19937 gen(4242);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> len(1, 64);
  std::size_t fitted = 0;
  for (int trial = 0; trial < 5000; ++trial) {
    std::vector<double> seg(len(gen));
    for (auto& v : seg) v = unit(gen);
    const auto st = moments(seg);
    CHECK(st.m2 >= 0.0);
    CHECK(st.m2 <= 0.25 + 1e-12);
    const auto fit = fit_beta(st);
    CHECK(fit.uncertainty >= 0.0);
    CHECK(fit.uncertainty <= 0.25);
    if (fit.fittable) {
      ++fitted;
      CHECK(fit.alpha > 0.0);
      CHECK(fit.beta > 0.0);
      const double var = beta_variance(fit.alpha, fit.beta);
      CHECK(std::abs(var - st.m2) <= 1e-12 * std::max(1.0, std::abs(st.m2)));
    }
  }
  CHECK(fitted > 4000);  // fit succeeds on the bulk of random segments
}
