#include "pairlab/eval.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "pairlab/attacks.hpp"
#include "pairlab/rng.hpp"

namespace pairlab {

std::vector<DatasetRecord> build_dataset(const DatasetConfig& cfg) {
  if (cfg.genuine < 0 || cfg.impostor < 0 || cfg.mimicry < 0)
    fail(Err::BadParams, "negative dataset counts");
  UserModel model = UserModel::for_ui(cfg.ui);
  EvidencePolicy policy = EvidencePolicy::for_ui(cfg.ui, cfg.with_pauses);
  std::size_t total = static_cast<std::size_t>(cfg.genuine + cfg.impostor + cfg.mimicry);
  std::vector<DatasetRecord> out(total);

  auto fill = [&](std::size_t i) {
    DatasetRecord& r = out[i];
    if (i < static_cast<std::size_t>(cfg.genuine)) {
      SessionTruth s = gen_session(model, policy, derive_seed(cfg.seed, "ds-genuine", i));
      r = {"genuine", 0, s.device, s.helper, 1};
    } else if (i < static_cast<std::size_t>(cfg.genuine + cfg.impostor)) {
      std::size_t j = i - static_cast<std::size_t>(cfg.genuine);
      auto [dev, hel] = gen_negative_pair(model, policy, derive_seed(cfg.seed, "ds-impostor", j));
      r = {"impostor", 0, dev, hel, 0};
    } else {
      std::size_t j = i - static_cast<std::size_t>(cfg.genuine + cfg.impostor);
      MimicryConfig mc;
      mc.skill = cfg.mimic_skill;
      MimicrySample s = gen_mimicry_pair(model, mc, policy, derive_seed(cfg.seed, "ds-mimicry", j));
      r = {"mimicry", cfg.mimic_skill, s.victim.device, s.attacker, 0};
    }
  };

  int jobs = std::max(1, cfg.jobs);
  if (jobs == 1 || total < 2) {
    for (std::size_t i = 0; i < total; ++i) fill(i);
  } else {
    std::vector<std::thread> workers;
    for (int t = 0; t < jobs; ++t)
      workers.emplace_back([&, t] {
        for (std::size_t i = static_cast<std::size_t>(t); i < total;
             i += static_cast<std::size_t>(jobs))
          fill(i);
      });
    for (auto& w : workers) w.join();
  }
  return out;
}

void split_dataset(const std::vector<DatasetRecord>& all, double train_frac, std::uint64_t seed,
                   std::vector<DatasetRecord>& train, std::vector<DatasetRecord>& test) {
  if (train_frac <= 0 || train_frac >= 1) fail(Err::BadParams, "train fraction must be in (0,1)");
  train.clear();
  test.clear();
  std::vector<std::string> kinds;
  for (const auto& r : all)
    if (std::find(kinds.begin(), kinds.end(), r.kind) == kinds.end()) kinds.push_back(r.kind);
  std::uint64_t stratum = 0;
  for (const std::string& kind : kinds) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < all.size(); ++i)
      if (all[i].kind == kind) idx.push_back(i);
    Rng rng(derive_seed(seed, "split", stratum++));
    for (std::size_t i = idx.size(); i > 1; --i)
      std::swap(idx[i - 1], idx[rng.below(i)]);
    std::size_t cut = static_cast<std::size_t>(std::floor(train_frac * static_cast<double>(idx.size())));
    for (std::size_t i = 0; i < idx.size(); ++i)
      (i < cut ? train : test).push_back(all[idx[i]]);
  }
}

namespace {

int vanilla_width(const std::vector<DatasetRecord>& recs) {
  int max_v = 1;
  for (const auto& r : recs) {
    for (int v : r.device.intervals_ms) max_v = std::max(max_v, v);
    for (int v : r.helper.intervals_ms) max_v = std::max(max_v, v);
  }
  int w = 1;
  while ((1 << w) <= max_v) ++w;
  return w;
}

}  // namespace

EvalReport train_and_eval(const std::vector<DatasetRecord>& train,
                          const std::vector<DatasetRecord>& test, const EncodingParams& enc,
                          const TrainConfig& tc, double target_frr) {
  EvalReport rep;

  std::vector<FeatureVector> pos, neg;
  for (const auto& r : train) {
    if (r.kind == "genuine") pos.push_back(features(r.device, r.helper));
    if (r.kind == "impostor") neg.push_back(features(r.device, r.helper));
  }
  rep.model = train_linear(pos, neg, tc);

  std::vector<double> train_scores;
  std::vector<int> train_labels;
  for (const auto& r : train) {
    if (r.kind == "mimicry") continue;
    train_scores.push_back(score(rep.model, features(r.device, r.helper)));
    train_labels.push_back(r.label);
  }
  RocCurve train_roc = roc(train_scores, train_labels);
  rep.op_threshold = train_roc.threshold_at_frr(target_frr);
  rep.model.tau = rep.op_threshold;

  std::vector<double> scores, faithful, vanilla;
  std::vector<int> labels;
  int wid = vanilla_width(test);
  int gen_n = 0, gen_rej = 0, imp_n = 0, imp_acc = 0;
  for (const auto& r : test) {
    double s = score(rep.model, features(r.device, r.helper));
    if (r.kind == "mimicry") {
      ++rep.mimicry_count;
      if (s >= rep.op_threshold) rep.far_mimicry_at_op += 1;
      continue;
    }
    scores.push_back(s);
    labels.push_back(r.label);
    faithful.push_back(-encoding_distance(r.device, r.helper, enc));
    vanilla.push_back(-hamming(encode_vanilla(r.device.intervals_ms, wid),
                               encode_vanilla(r.helper.intervals_ms, wid)));
    if (r.label == 1) {
      ++gen_n;
      if (s < rep.op_threshold) ++gen_rej;
    } else {
      ++imp_n;
      if (s >= rep.op_threshold) ++imp_acc;
    }
  }
  rep.roc_model = roc(scores, labels);
  rep.roc_faithful = roc(faithful, labels);
  rep.roc_vanilla = roc(vanilla, labels);
  rep.rank_auc_model = rank_auc(scores, labels);
  if (gen_n) rep.frr_at_op = static_cast<double>(gen_rej) / gen_n;
  if (imp_n) rep.far_at_op = static_cast<double>(imp_acc) / imp_n;
  if (rep.mimicry_count) rep.far_mimicry_at_op /= rep.mimicry_count;
  return rep;
}

std::vector<EntropyRow> entropy_table(UiType ui, double base_ms) {
  UserModel m = UserModel::for_ui(ui);
  EvidencePolicy policy = EvidencePolicy::for_ui(ui, true);
  std::vector<EntropyRow> rows;
  for (int n2 : {2, 1}) {
    EntropyRow row;
    row.n2 = n2;
    row.n1 = policy.required_length - n2;
    row.e1 = interval_entropy(m.sigma1, base_ms);
    row.e2 = interval_entropy(m.sigma2, base_ms);
    row.total = evidence_entropy(row.n1, row.e1, row.n2, row.e2, true);
    row.total_no_positional = evidence_entropy(row.n1, row.e1, row.n2, row.e2, false);
    row.time_ms = operation_time_ms(row.n1, m.mu1, row.n2, m.mu2);
    row.rate_bps = bit_rate(row.total, row.time_ms);
    rows.push_back(row);
  }
  return rows;
}

namespace {

SweepPoint distance_sweep_point(const SweepConfig& cfg, double value) {
  EncodingParams enc = cfg.enc;
  int thr = cfg.thr_symbols;
  UserModel model = UserModel::for_ui(cfg.ui);
  EvidencePolicy policy = EvidencePolicy::for_ui(cfg.ui, cfg.with_pauses);

  if (cfg.param == "thr") thr = static_cast<int>(value);
  if (cfg.param == "base") {
    enc.base_ms = static_cast<int>(value);
    enc.length = 3000 / enc.base_ms + 1;
  }
  if (cfg.param == "length") policy.required_length = static_cast<int>(value);
  if (cfg.param == "jitter") model.jitter_ms = value;

  std::size_t bits =
      static_cast<std::size_t>(policy.required_length) * static_cast<std::size_t>(enc.length);
  int width = rs_for_encoding(bits, thr).symbol_bits;

  SweepPoint pt;
  pt.value = value;
  MimicryConfig mc;
  mc.skill = 1.0;
  for (int i = 0; i < cfg.n; ++i) {
    SessionTruth s = gen_session(model, policy, derive_seed(cfg.seed, "sweep-gen", static_cast<std::uint64_t>(i)));
    if (!zl_correlated(s.device, s.helper, enc, thr, width)) pt.frr += 1;
    auto [dev, hel] =
        gen_negative_pair(model, policy, derive_seed(cfg.seed, "sweep-imp", static_cast<std::uint64_t>(i)));
    if (zl_correlated(dev, hel, enc, thr, width)) pt.far_impostor += 1;
    MimicrySample ms =
        gen_mimicry_pair(model, mc, policy, derive_seed(cfg.seed, "sweep-mim", static_cast<std::uint64_t>(i)));
    if (zl_correlated(ms.victim.device, ms.attacker, enc, thr, width)) pt.far_mimicry += 1;
  }
  pt.frr /= cfg.n;
  pt.far_impostor /= cfg.n;
  pt.far_mimicry /= cfg.n;
  return pt;
}

SweepPoint deadline_sweep_point(const SweepConfig& cfg, double value) {
  UserModel model = UserModel::for_ui(cfg.ui);
  EvidencePolicy policy = EvidencePolicy::for_ui(cfg.ui, cfg.with_pauses);
  ZlConfig zl;
  zl.enc = cfg.enc;
  zl.thr_symbols = cfg.thr_symbols;
  zl.policy = policy;
  zl.t_thr_ms = value;
  zl.group = &dh_group_test512();
  NetConfig net;

  SweepPoint pt;
  pt.value = value;
  for (int i = 0; i < cfg.n; ++i) {
    SessionTruth s = gen_session(model, policy, derive_seed(cfg.seed, "sweep-gen", static_cast<std::uint64_t>(i)));
    PairRun run = run_t2pairpp(s.device, s.helper, zl, net,
                               derive_seed(cfg.seed, "sweep-run", static_cast<std::uint64_t>(i)));
    if (!run.paired) pt.frr += 1;
    auto [dev, hel] =
        gen_negative_pair(model, policy, derive_seed(cfg.seed, "sweep-imp", static_cast<std::uint64_t>(i)));
    PairRun bad = run_t2pairpp(dev, hel, zl, net,
                               derive_seed(cfg.seed, "sweep-imp-run", static_cast<std::uint64_t>(i)));
    if (bad.paired) pt.far_impostor += 1;
  }
  pt.frr /= cfg.n;
  pt.far_impostor /= cfg.n;
  return pt;
}

}  // namespace

std::vector<SweepPoint> run_sweep(const SweepConfig& cfg) {
  if (cfg.values.empty()) fail(Err::BadParams, "sweep needs at least one value");
  if (cfg.n <= 0) fail(Err::BadParams, "sweep sample count must be positive");
  static const char* known[] = {"thr", "base", "length", "jitter", "tthr"};
  if (std::find_if(std::begin(known), std::end(known),
                   [&](const char* k) { return cfg.param == k; }) == std::end(known))
    fail(Err::Config, "unknown sweep parameter: " + cfg.param);
  std::vector<SweepPoint> out;
  for (double v : cfg.values)
    out.push_back(cfg.param == "tthr" ? deadline_sweep_point(cfg, v)
                                      : distance_sweep_point(cfg, v));
  return out;
}

std::string roc_csv(const RocCurve& roc) {
  std::ostringstream ss;
  ss << "threshold,far,frr\n";
  for (const RocPoint& p : roc.points) ss << p.threshold << ',' << p.far << ',' << p.frr << '\n';
  return ss.str();
}

std::string sweep_csv(const std::string& param, const std::vector<SweepPoint>& points) {
  std::ostringstream ss;
  ss << "param,value,frr,far_impostor,far_mimicry\n";
  for (const SweepPoint& p : points)
    ss << param << ',' << p.value << ',' << p.frr << ',' << p.far_impostor << ','
       << p.far_mimicry << '\n';
  return ss.str();
}

}  // namespace pairlab
