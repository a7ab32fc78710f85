#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pairlab/correlation.hpp"
#include "pairlab/metrics.hpp"
#include "pairlab/serial.hpp"
#include "pairlab/synthgen.hpp"

namespace pairlab {

struct DatasetConfig {
  UiType ui = UiType::Button;
  bool with_pauses = true;
  int genuine = 400;
  int impostor = 400;
  int mimicry = 0;
  double mimic_skill = 1.0;
  std::uint64_t seed = 1;
  int jobs = 1;
};

std::vector<DatasetRecord> build_dataset(const DatasetConfig& cfg);

// Stratified shuffle-split so both labels land in both halves.
void split_dataset(const std::vector<DatasetRecord>& all, double train_frac, std::uint64_t seed,
                   std::vector<DatasetRecord>& train, std::vector<DatasetRecord>& test);

struct EvalReport {
  RocCurve roc_model;      // trained scorer on non-mimicry test records
  RocCurve roc_faithful;   // distance scorer, quantize-then-unary encoding
  RocCurve roc_vanilla;    // distance scorer, plain binary encoding
  double rank_auc_model = 0;
  double op_threshold = 0;  // chosen on train at the target reject rate
  double frr_at_op = 0;     // test genuines rejected at op_threshold
  double far_at_op = 0;     // test impostors accepted at op_threshold
  double far_mimicry_at_op = 0;
  int mimicry_count = 0;
  LinearModel model;
};

// Trains on the non-mimicry part of `train`, evaluates on `test`; mimicry
// records are never trained on, only measured against the operating point.
EvalReport train_and_eval(const std::vector<DatasetRecord>& train,
                          const std::vector<DatasetRecord>& test, const EncodingParams& enc,
                          const TrainConfig& tc, double target_frr);

struct EntropyRow {
  int n1 = 0, n2 = 0;
  double e1 = 0, e2 = 0;
  double total = 0;                // includes the pause-position term
  double total_no_positional = 0;  // published no-position variant
  double time_ms = 0;
  double rate_bps = 0;
};

// Rows for one-pause and two-pause operations of the given control.
std::vector<EntropyRow> entropy_table(UiType ui, double base_ms);

struct SweepConfig {
  std::string param;  // thr | base | length | jitter | tthr
  std::vector<double> values;
  UiType ui = UiType::Button;
  bool with_pauses = true;
  int n = 500;
  std::uint64_t seed = 1;
  EncodingParams enc;
  int thr_symbols = 8;
  double t_thr_ms = 600;
};

struct SweepPoint {
  double value = 0;
  double frr = 0;
  double far_impostor = 0;
  double far_mimicry = 0;
};

std::vector<SweepPoint> run_sweep(const SweepConfig& cfg);

std::string roc_csv(const RocCurve& roc);
std::string sweep_csv(const std::string& param, const std::vector<SweepPoint>& points);

}  // namespace pairlab
