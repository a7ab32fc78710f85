#include "pairlab/correlation.hpp"

#include <algorithm>
#include <cmath>

#include "pairlab/rng.hpp"

namespace pairlab {

namespace {

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

FeatureVector features(const Evidence& a, const Evidence& b) {
  if (a.intervals_ms.size() != b.intervals_ms.size())
    fail(Err::LengthMismatch, "evidence lengths differ");
  if (a.intervals_ms.empty()) fail(Err::LengthMismatch, "empty evidence");

  std::vector<double> d;
  d.reserve(a.intervals_ms.size());
  for (std::size_t i = 0; i < a.intervals_ms.size(); ++i)
    d.push_back(std::fabs(static_cast<double>(a.intervals_ms[i]) - b.intervals_ms[i]));

  FeatureVector f;
  double n = static_cast<double>(d.size());
  for (double x : d) f.avg += x;
  f.avg /= n;
  for (double x : d) f.stddev += (x - f.avg) * (x - f.avg);
  f.stddev = std::sqrt(f.stddev / n);
  f.min = *std::min_element(d.begin(), d.end());
  f.max = *std::max_element(d.begin(), d.end());
  f.range = f.max - f.min;

  double med = median_of(d);
  std::vector<double> absdev;
  absdev.reserve(d.size());
  for (double x : d) absdev.push_back(std::fabs(x - med));
  f.mad = median_of(absdev);

  if (f.mad > 0) {
    for (double x : d)
      f.mod_z = std::max(f.mod_z, std::fabs(0.6745 * (x - med) / f.mad));
  }
  return f;
}

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

double standardized_logit(const LinearModel& m, const FeatureVector& f) {
  auto x = f.as_array();
  double z = m.bias;
  for (int i = 0; i < FeatureVector::kDim; ++i) {
    double s = m.feat_std[static_cast<std::size_t>(i)];
    double xi = (x[static_cast<std::size_t>(i)] - m.feat_mean[static_cast<std::size_t>(i)]) /
                (s > 0 ? s : 1.0);
    z += m.weights[static_cast<std::size_t>(i)] * xi;
  }
  return z;
}

}  // namespace

LinearModel train_linear(const std::vector<FeatureVector>& correlated,
                         const std::vector<FeatureVector>& uncorrelated, const TrainConfig& cfg) {
  if (correlated.empty() || uncorrelated.empty())
    fail(Err::DegenerateDataset, "training needs both classes");

  std::vector<std::array<double, FeatureVector::kDim>> xs;
  std::vector<int> ys;
  for (const auto& f : correlated) {
    xs.push_back(f.as_array());
    ys.push_back(1);
  }
  for (const auto& f : uncorrelated) {
    xs.push_back(f.as_array());
    ys.push_back(0);
  }

  LinearModel m;
  m.tau = cfg.tau;
  std::size_t n = xs.size();
  for (int j = 0; j < FeatureVector::kDim; ++j) {
    double mean = 0;
    for (const auto& x : xs) mean += x[static_cast<std::size_t>(j)];
    mean /= static_cast<double>(n);
    double var = 0;
    for (const auto& x : xs) {
      double d = x[static_cast<std::size_t>(j)] - mean;
      var += d * d;
    }
    m.feat_mean[static_cast<std::size_t>(j)] = mean;
    m.feat_std[static_cast<std::size_t>(j)] = std::sqrt(var / static_cast<double>(n));
  }
  for (auto& x : xs)
    for (int j = 0; j < FeatureVector::kDim; ++j) {
      double s = m.feat_std[static_cast<std::size_t>(j)];
      x[static_cast<std::size_t>(j)] =
          (x[static_cast<std::size_t>(j)] - m.feat_mean[static_cast<std::size_t>(j)]) /
          (s > 0 ? s : 1.0);
    }

  // Full-batch logistic regression; deterministic given the fixed shuffle
  // seed and iteration budget.
  Rng rng(cfg.seed);
  std::array<double, FeatureVector::kDim> w{};
  for (auto& wi : w) wi = 0.01 * (rng.unit() - 0.5);
  double b = 0;
  for (int it = 0; it < cfg.iterations; ++it) {
    std::array<double, FeatureVector::kDim> gw{};
    double gb = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double z = b;
      for (int j = 0; j < FeatureVector::kDim; ++j)
        z += w[static_cast<std::size_t>(j)] * xs[i][static_cast<std::size_t>(j)];
      double err = sigmoid(z) - ys[i];
      for (int j = 0; j < FeatureVector::kDim; ++j)
        gw[static_cast<std::size_t>(j)] += err * xs[i][static_cast<std::size_t>(j)];
      gb += err;
    }
    double step = cfg.learn_rate / static_cast<double>(n);
    for (int j = 0; j < FeatureVector::kDim; ++j)
      w[static_cast<std::size_t>(j)] -= step * gw[static_cast<std::size_t>(j)];
    b -= step * gb;
  }
  m.weights = w;
  m.bias = b;
  return m;
}

double score(const Classifier& c, const FeatureVector& f) {
  if (const auto* t = std::get_if<ThresholdBaseline>(&c)) return t->max_avg_ms - f.avg;
  return sigmoid(standardized_logit(std::get<LinearModel>(c), f));
}

bool classify(const Classifier& c, const FeatureVector& f) {
  if (std::holds_alternative<ThresholdBaseline>(c)) return score(c, f) >= 0;
  return score(c, f) >= std::get<LinearModel>(c).tau;
}

}  // namespace pairlab
