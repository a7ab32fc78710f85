#include <doctest.h>

#include <cmath>

#include "pairlab/correlation.hpp"
#include "pairlab/rng.hpp"

using namespace pairlab;

TEST_SUITE("correlation") {

TEST_CASE("identical evidence gives the zero feature vector") {
  Evidence a{{200, 300, 400, 900, 250, 350}, UiType::Button};
  FeatureVector f = features(a, a);
  for (double x : f.as_array()) CHECK(x == 0.0);
}

TEST_CASE("difference statistics are computed per element") {
  Evidence a{{100, 200, 300, 400, 500, 600}, UiType::Button};
  Evidence b{{110, 190, 320, 380, 530, 570}, UiType::Button};
  // |diff| = {10, 10, 20, 20, 30, 30}
  FeatureVector f = features(a, b);
  CHECK(f.avg == doctest::Approx(20.0));
  CHECK(f.stddev == doctest::Approx(std::sqrt(400.0 / 6.0)));
  CHECK(f.min == doctest::Approx(10.0));
  CHECK(f.max == doctest::Approx(30.0));
  CHECK(f.range == doctest::Approx(20.0));
  CHECK(f.mad == doctest::Approx(10.0));
  CHECK(f.mod_z == doctest::Approx(0.6745));

  CHECK_THROWS_AS(features(a, Evidence{{100}, UiType::Button}), Error);
  CHECK_THROWS_AS(features(Evidence{}, Evidence{}), Error);
}

TEST_CASE("feature order is symmetric in the arguments") {
  Evidence a{{100, 200, 300, 400, 500, 600}, UiType::Button};
  Evidence b{{150, 180, 350, 390, 490, 700}, UiType::Button};
  CHECK(features(a, b).as_array() == features(b, a).as_array());
}

TEST_CASE("threshold baseline applies a mean budget") {
  Classifier c = ThresholdBaseline{50.0};
  Evidence a{{100, 200, 300, 400, 500, 600}, UiType::Button};
  Evidence near{{110, 210, 310, 390, 490, 610}, UiType::Button};
  Evidence far{{300, 400, 500, 600, 700, 800}, UiType::Button};
  CHECK(classify(c, features(a, near)));
  CHECK(!classify(c, features(a, far)));
}

TEST_CASE("trained scorer separates tight from loose pairs") {
  Rng rng(42);
  std::vector<FeatureVector> pos, neg;
  auto sample = [&](double spread) {
    Evidence u, v;
    u.intervals_ms.resize(6);
    v.intervals_ms.resize(6);
    for (int i = 0; i < 6; ++i) {
      int base = rng.uniform_int(100, 2000);
      u.intervals_ms[static_cast<std::size_t>(i)] = base;
      v.intervals_ms[static_cast<std::size_t>(i)] =
          base + static_cast<int>(std::lround(rng.normal(0, spread)));
    }
    return features(u, v);
  };
  for (int i = 0; i < 200; ++i) {
    pos.push_back(sample(8));
    neg.push_back(sample(300));
  }
  LinearModel m = train_linear(pos, neg);

  int right = 0;
  for (int i = 0; i < 100; ++i) {
    if (classify(m, sample(8))) ++right;
    if (!classify(m, sample(300))) ++right;
  }
  CHECK(right >= 190);

  // Scores live in (0, 1) and rank tight pairs above loose ones.
  double sp = score(m, sample(8)), sn = score(m, sample(300));
  CHECK(sp > 0.0);
  CHECK(sp < 1.0);
  CHECK(sp > sn);
}

TEST_CASE("training rejects empty classes") {
  std::vector<FeatureVector> some{FeatureVector{}}, none;
  CHECK_THROWS_AS(train_linear(some, none), Error);
  CHECK_THROWS_AS(train_linear(none, some), Error);
}

}  // TEST_SUITE
