#pragma once

#include <vector>

namespace pairlab {

struct RocPoint {
  double threshold = 0;
  double far = 0;  // accepted impostors / impostors
  double frr = 0;  // rejected genuines / genuines
};

struct RocCurve {
  std::vector<RocPoint> points;  // swept over every distinct score
  double auc = 0;
  double eer = 0;
  double eer_threshold = 0;

  double far_at_frr(double target_frr) const;
  double threshold_at_frr(double target_frr) const;
};

// Scores are acceptance scores (higher = accept); labels are 1 for genuine
// pairs, 0 for impostors. Acceptance at threshold th means score >= th.
RocCurve roc(const std::vector<double>& scores, const std::vector<int>& labels);

// Mann-Whitney rank statistic (ties count half); cross-check for the
// trapezoid AUC that roc() reports.
double rank_auc(const std::vector<double>& scores, const std::vector<int>& labels);

// Differential entropy of a quantized interval, bits.
double interval_entropy(double sigma_ms, double base_ms);

double log2_binomial(int n, int k);

// Evidence entropy: counts-weighted interval entropies plus the positional
// term for where the pauses sit. The positional term can be dropped to
// reproduce published totals that omit it.
double evidence_entropy(int n1, double e1, int n2, double e2, bool positional_term = true);
double evidence_entropy_sigmas(int n1, double sigma1, int n2, double sigma2, double base_ms,
                               bool positional_term = true);

double operation_time_ms(int n1, double mu1, int n2, double mu2);
double bit_rate(double entropy_bits, double time_ms);  // bits per second

}  // namespace pairlab
