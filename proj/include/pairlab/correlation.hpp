#pragma once

#include <array>
#include <cstdint>
#include <variant>
#include <vector>

#include "pairlab/evidence.hpp"

namespace pairlab {

// Statistics of the element-wise absolute difference between two interval
// vectors. mod_z is scalarized as the largest modified z-score magnitude.
struct FeatureVector {
  static constexpr int kDim = 7;
  double avg = 0, stddev = 0, min = 0, max = 0, range = 0, mad = 0, mod_z = 0;

  std::array<double, kDim> as_array() const { return {avg, stddev, min, max, range, mad, mod_z}; }
};

FeatureVector features(const Evidence& a, const Evidence& b);

// Accepts when the mean absolute difference stays under a fixed budget.
struct ThresholdBaseline {
  double max_avg_ms = 50.0;
};

// Logistic scorer over standardized features.
struct LinearModel {
  std::array<double, FeatureVector::kDim> weights{};
  double bias = 0;
  double tau = 0.5;
  std::array<double, FeatureVector::kDim> feat_mean{};
  std::array<double, FeatureVector::kDim> feat_std{};
};

using Classifier = std::variant<ThresholdBaseline, LinearModel>;

struct TrainConfig {
  int iterations = 600;
  double learn_rate = 0.5;
  std::uint64_t seed = 1;
  double tau = 0.5;
};

LinearModel train_linear(const std::vector<FeatureVector>& correlated,
                         const std::vector<FeatureVector>& uncorrelated,
                         const TrainConfig& cfg = {});

// Higher score means "same operation"; classify compares against the
// classifier's own operating threshold.
double score(const Classifier& c, const FeatureVector& f);
bool classify(const Classifier& c, const FeatureVector& f);

}  // namespace pairlab
