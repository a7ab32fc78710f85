#include "pairlab/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "pairlab/errors.hpp"

namespace pairlab {

RocCurve roc(const std::vector<double>& scores, const std::vector<int>& labels) {
  if (scores.size() != labels.size()) fail(Err::SizeMismatch, "scores/labels length mismatch");
  std::vector<double> pos, neg;
  for (std::size_t i = 0; i < scores.size(); ++i)
    (labels[i] ? pos : neg).push_back(scores[i]);
  if (pos.empty() || neg.empty()) fail(Err::DegenerateDataset, "need both genuine and impostor scores");
  std::sort(pos.begin(), pos.end());
  std::sort(neg.begin(), neg.end());

  std::vector<double> ths = scores;
  std::sort(ths.begin(), ths.end());
  ths.erase(std::unique(ths.begin(), ths.end()), ths.end());

  RocCurve c;
  double np = static_cast<double>(pos.size()), nn = static_cast<double>(neg.size());
  auto far_at = [&](double t) {
    return static_cast<double>(neg.end() - std::lower_bound(neg.begin(), neg.end(), t)) / nn;
  };
  auto frr_at = [&](double t) {
    return static_cast<double>(std::lower_bound(pos.begin(), pos.end(), t) - pos.begin()) / np;
  };
  for (double t : ths) c.points.push_back({t, far_at(t), frr_at(t)});
  // Sentinel above every score: reject-everything endpoint.
  c.points.push_back({ths.back() + 1.0, 0.0, 1.0});

  // AUC by trapezoid over (FAR, 1-FRR), walked from strictest threshold down.
  double auc = 0;
  for (std::size_t i = c.points.size(); i-- > 1;) {
    const auto& hi = c.points[i];      // larger threshold, smaller FAR
    const auto& lo = c.points[i - 1];  // smaller threshold, larger FAR
    auc += (lo.far - hi.far) * 0.5 * ((1 - hi.frr) + (1 - lo.frr));
  }
  c.auc = auc;

  // EER: FAR-FRR changes sign exactly once along ascending thresholds.
  for (std::size_t i = 0; i + 1 < c.points.size(); ++i) {
    double g1 = c.points[i].far - c.points[i].frr;
    double g2 = c.points[i + 1].far - c.points[i + 1].frr;
    if (g1 >= 0 && g2 < 0) {
      if (g1 == 0) {
        c.eer = c.points[i].far;
        c.eer_threshold = c.points[i].threshold;
      } else {
        double lam = g1 / (g1 - g2);
        c.eer = c.points[i].far + lam * (c.points[i + 1].far - c.points[i].far);
        c.eer_threshold =
            c.points[i].threshold + lam * (c.points[i + 1].threshold - c.points[i].threshold);
      }
      break;
    }
  }
  return c;
}

double RocCurve::far_at_frr(double target_frr) const {
  double out = points.empty() ? 1.0 : points.front().far;
  for (const auto& p : points)
    if (p.frr <= target_frr) out = p.far;  // points ascend in threshold, FRR ascends
  return out;
}

double RocCurve::threshold_at_frr(double target_frr) const {
  double out = points.empty() ? 0.0 : points.front().threshold;
  for (const auto& p : points)
    if (p.frr <= target_frr) out = p.threshold;
  return out;
}

double rank_auc(const std::vector<double>& scores, const std::vector<int>& labels) {
  if (scores.size() != labels.size()) fail(Err::SizeMismatch, "scores/labels length mismatch");
  std::vector<std::size_t> idx(scores.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  double rank_sum_pos = 0;
  std::size_t npos = 0, nneg = 0;
  std::size_t i = 0;
  while (i < idx.size()) {
    std::size_t j = i;
    while (j < idx.size() && scores[idx[j]] == scores[idx[i]]) ++j;
    double avg_rank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j));  // 1-based
    for (std::size_t k = i; k < j; ++k)
      if (labels[idx[k]]) rank_sum_pos += avg_rank;
    i = j;
  }
  for (int l : labels) (l ? npos : nneg)++;
  if (npos == 0 || nneg == 0) fail(Err::DegenerateDataset, "need both classes");
  double u = rank_sum_pos - static_cast<double>(npos) * (static_cast<double>(npos) + 1) / 2.0;
  return u / (static_cast<double>(npos) * static_cast<double>(nneg));
}

double interval_entropy(double sigma_ms, double base_ms) {
  if (sigma_ms <= 0 || base_ms <= 0) fail(Err::BadParams, "entropy needs positive sigma and base");
  double s = sigma_ms / base_ms;
  return 0.5 * std::log2(2.0 * 3.14159265358979323846 * 2.71828182845904523536 * s * s);
}

double log2_binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) fail(Err::BadParams, "binomial out of domain");
  return (std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)) /
         std::log(2.0);
}

double evidence_entropy(int n1, double e1, int n2, double e2, bool positional_term) {
  double total = n1 * e1 + n2 * e2;
  if (positional_term) total += log2_binomial(n1 + n2, n2);
  return total;
}

double evidence_entropy_sigmas(int n1, double sigma1, int n2, double sigma2, double base_ms,
                               bool positional_term) {
  return evidence_entropy(n1, interval_entropy(sigma1, base_ms), n2,
                          interval_entropy(sigma2, base_ms), positional_term);
}

double operation_time_ms(int n1, double mu1, int n2, double mu2) {
  return n1 * mu1 + n2 * mu2;
}

double bit_rate(double entropy_bits, double time_ms) {
  if (time_ms <= 0) fail(Err::BadParams, "nonpositive duration");
  return entropy_bits / (time_ms / 1000.0);
}

}  // namespace pairlab
