#include <doctest.h>

#include <cmath>

#include "pairlab/errors.hpp"
#include "pairlab/metrics.hpp"
#include "pairlab/rng.hpp"

using namespace pairlab;

TEST_SUITE("metrics") {

TEST_CASE("quantized interval entropy matches the closed form") {
  CHECK(interval_entropy(67, 10) == doctest::Approx(4.791256680751051).epsilon(1e-12));
  CHECK(interval_entropy(501, 10) == doctest::Approx(7.693834283488487).epsilon(1e-12));
  CHECK(interval_entropy(67, 1) == doctest::Approx(8.113184775638413).epsilon(1e-12));
  CHECK(interval_entropy(501, 1) == doctest::Approx(11.01576237837585).epsilon(1e-12));
  CHECK_THROWS_AS(interval_entropy(0, 10), Error);
  CHECK_THROWS_AS(interval_entropy(67, 0), Error);
}

TEST_CASE("entropy only depends on sigma relative to the step") {
  Rng rng(17);
  for (int t = 0; t < 50; ++t) {
    double sigma = 1 + 400 * rng.unit();
    double base = 1 + 30 * rng.unit();
    CHECK(interval_entropy(sigma, base) ==
          doctest::Approx(interval_entropy(sigma / base, 1.0)).epsilon(1e-12));
  }
}

TEST_CASE("binomial log is symmetric and exact on small cases") {
  CHECK(log2_binomial(6, 2) == doctest::Approx(std::log2(15.0)).epsilon(1e-12));
  CHECK(log2_binomial(6, 1) == doctest::Approx(std::log2(6.0)).epsilon(1e-12));
  for (int k = 0; k <= 6; ++k)
    CHECK(log2_binomial(6, k) == doctest::Approx(log2_binomial(6, 6 - k)).epsilon(1e-12));
  CHECK(log2_binomial(6, 0) == doctest::Approx(0.0));
  CHECK_THROWS_AS(log2_binomial(3, 4), Error);
  CHECK_THROWS_AS(log2_binomial(3, -1), Error);
}

TEST_CASE("operation entropy totals and rates") {
  double e1 = interval_entropy(67, 10);
  double e2 = interval_entropy(501, 10);

  double two_pause = evidence_entropy(4, e1, 2, e2);
  CHECK(two_pause == doctest::Approx(38.45958588558969).epsilon(1e-10));
  double t2 = operation_time_ms(4, 238, 2, 1402);
  CHECK(t2 == doctest::Approx(3756.0));
  CHECK(bit_rate(two_pause, t2) == doctest::Approx(10.2395).epsilon(1e-4));

  double one_pause = evidence_entropy(5, e1, 1, e2);
  CHECK(one_pause == doctest::Approx(34.2350801879649).epsilon(1e-10));
  double t1 = operation_time_ms(5, 238, 1, 1402);
  CHECK(t1 == doctest::Approx(2592.0));
  CHECK(bit_rate(one_pause, t1) == doctest::Approx(13.208).epsilon(1e-3));

  // Published no-position variants at millisecond resolution.
  CHECK(evidence_entropy_sigmas(4, 67, 2, 501, 1, false) ==
        doctest::Approx(54.48426385930535).epsilon(1e-10));
  CHECK(evidence_entropy_sigmas(5, 67, 1, 501, 1, false) ==
        doctest::Approx(51.58168625656792).epsilon(1e-10));

  // The positional term is exactly the pause-placement count.
  CHECK(evidence_entropy(4, e1, 2, e2, true) - evidence_entropy(4, e1, 2, e2, false) ==
        doctest::Approx(std::log2(15.0)).epsilon(1e-12));
}

TEST_CASE("roc sweeps thresholds coherently") {
  std::vector<double> scores{0.9, 0.8, 0.7, 0.6, 0.4, 0.3, 0.2, 0.1};
  std::vector<int> labels{1, 1, 1, 1, 0, 0, 0, 0};
  RocCurve r = roc(scores, labels);
  CHECK(r.auc == doctest::Approx(1.0));
  CHECK(r.eer == doctest::Approx(0.0));
  CHECK(r.far_at_frr(0.0) == doctest::Approx(0.0));

  // FRR never decreases as the threshold rises.
  for (std::size_t i = 1; i < r.points.size(); ++i) {
    CHECK(r.points[i].threshold >= r.points[i - 1].threshold);
    CHECK(r.points[i].frr >= r.points[i - 1].frr);
    CHECK(r.points[i].far <= r.points[i - 1].far);
  }
}

TEST_CASE("trapezoid and rank statistics agree") {
  Rng rng(23);
  for (int t = 0; t < 10; ++t) {
    std::vector<double> scores;
    std::vector<int> labels;
    for (int i = 0; i < 400; ++i) {
      int y = static_cast<int>(rng.below(2));
      // Coarse quantization forces plenty of ties, including across classes.
      double s = std::floor((rng.unit() + 0.35 * y) * 8.0) / 8.0;
      scores.push_back(s);
      labels.push_back(y);
    }
    RocCurve r = roc(scores, labels);
    CHECK(r.auc == doctest::Approx(rank_auc(scores, labels)).epsilon(1e-9));
  }
}

TEST_CASE("roc rejects degenerate input") {
  CHECK_THROWS_AS(roc({0.5}, {1}), Error);
  CHECK_THROWS_AS(roc({0.5, 0.4}, {1, 1}), Error);
  CHECK_THROWS_AS(roc({0.5, 0.4}, {1}), Error);
}

}  // TEST_SUITE
