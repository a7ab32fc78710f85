#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pairlab/attacks.hpp"
#include "pairlab/rng.hpp"
#include "pairlab/eval.hpp"
#include "pairlab/serial.hpp"

namespace pl = pairlab;

namespace {

struct CommonOpts {
  std::string protocol = "t2pairpp";
  std::string ui = "button";
  int base = 10;
  int length = 310;
  int thr = 8;
  double tthr = 600;
  std::string group = "modp2048";
  std::string classifier;  // parameter file; empty = built-in baseline
  std::uint64_t seed = 1;
  int jobs = 1;
  std::string out;
};

pl::Json config_defaults(int argc, char** argv) {
  std::string path;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--config") path = argv[i + 1];
  if (path.empty())
    if (const char* env = std::getenv("PAIRLAB_CONFIG")) path = env;
  if (path.empty()) return pl::Json::object();
  return pl::read_json_file(path);
}

void apply_defaults(CommonOpts& o, const pl::Json& cfg) {
  o.protocol = cfg.value("protocol", o.protocol);
  o.ui = cfg.value("ui", o.ui);
  o.base = cfg.value("base", o.base);
  o.length = cfg.value("length", o.length);
  o.thr = cfg.value("thr", o.thr);
  o.tthr = cfg.value("tthr", o.tthr);
  o.group = cfg.value("group", o.group);
  o.classifier = cfg.value("classifier", o.classifier);
  o.seed = cfg.value("seed", o.seed);
  o.jobs = cfg.value("jobs", o.jobs);
  o.out = cfg.value("out", o.out);
}

void add_common(CLI::App* cmd, CommonOpts& o, bool with_protocol = true) {
  if (with_protocol)
    cmd->add_option("--protocol", o.protocol, "t2pair (masked) or t2pairpp (deadline)");
  cmd->add_option("--ui", o.ui, "button | knob | screen");
  cmd->add_option("--base", o.base, "encoding quantization step, ms");
  cmd->add_option("--length", o.length, "encoded bits per interval");
  cmd->add_option("--thr", o.thr, "accepted symbol disagreement");
  cmd->add_option("--tthr", o.tthr, "commitment arrival slack, ms");
  cmd->add_option("--group", o.group, "modp2048 | test512");
  cmd->add_option("--classifier", o.classifier,
                  "correlation parameter file (default: 50 ms average-difference baseline)");
  cmd->add_option("--seed", o.seed, "master seed");
  cmd->add_option("--jobs", o.jobs, "dataset worker threads");
  cmd->add_option("--out", o.out, "output file or directory");
  cmd->add_option("--config", "JSON config file with defaults (flags win)")
      ->expected(1);
}

pl::Json common_json(const CommonOpts& o) {
  return pl::Json{{"protocol", o.protocol},     {"ui", o.ui},     {"base", o.base},
                  {"length", o.length},         {"thr", o.thr},   {"tthr", o.tthr},
                  {"group", o.group},           {"seed", o.seed}, {"jobs", o.jobs},
                  {"classifier", o.classifier}};
}

pl::PairSetup make_setup(const CommonOpts& o) {
  pl::PairSetup s;
  pl::EncodingParams enc{o.base, o.length};
  pl::EvidencePolicy policy = pl::EvidencePolicy::for_ui(pl::ui_from_name(o.ui), true);
  const pl::DhGroup* group = &pl::dh_group_by_name(o.group);
  s.fc.enc = enc;
  s.fc.thr_symbols = o.thr;
  s.fc.policy = policy;
  s.fc.group = group;
  s.zl.enc = enc;
  s.zl.thr_symbols = o.thr;
  s.zl.policy = policy;
  s.zl.group = group;
  s.zl.t_thr_ms = o.tthr;
  if (!o.classifier.empty())
    s.zl.correlation = pl::classifier_from_json(pl::read_json_file(o.classifier));
  return s;
}

std::string out_path(const CommonOpts& o, const std::string& name) {
  if (o.out.empty()) return name;
  if (!o.out.empty() && o.out.back() == '/') return o.out + name;
  return o.out + "/" + name;
}

void emit(const CommonOpts& o, const std::string& name, const std::string& text, bool to_stdout) {
  if (!o.out.empty())
    pl::write_text(out_path(o, name), text);
  else if (to_stdout)
    std::cout << text;
}

int cmd_generate(const CommonOpts& o, int genuine, int impostor, int mimicry, double skill,
                 bool pauses, int captures) {
  pl::DatasetConfig dc;
  dc.ui = pl::ui_from_name(o.ui);
  dc.with_pauses = pauses;
  dc.genuine = genuine;
  dc.impostor = impostor;
  dc.mimicry = mimicry;
  dc.mimic_skill = skill;
  dc.seed = o.seed;
  dc.jobs = o.jobs;

  pl::Json meta = common_json(o);
  meta["genuine"] = genuine;
  meta["impostor"] = impostor;
  meta["mimicry"] = mimicry;
  meta["skill"] = skill;
  meta["pauses"] = pauses;
  meta["captures"] = captures;
  std::string hash = pl::config_hash(meta);

  std::vector<pl::Json> rows;
  rows.push_back(pl::Json{{"config", meta}, {"config_hash", hash}});
  for (const pl::DatasetRecord& r : pl::build_dataset(dc)) rows.push_back(pl::record_json(r));
  std::string body;
  for (const pl::Json& r : rows) body += r.dump() + "\n";
  emit(o, "dataset.jsonl", body, true);

  if (captures > 0) {
    pl::UserModel model = pl::UserModel::for_ui(dc.ui);
    pl::EvidencePolicy policy = pl::EvidencePolicy::for_ui(dc.ui, pauses);
    pl::TraceConfig tc = pl::TraceConfig::for_ui(dc.ui);
    std::string traces;
    for (int i = 0; i < captures; ++i) {
      pl::SyntheticCapture cap = pl::gen_capture(
          model, policy, tc, pl::derive_seed(o.seed, "cli-capture", static_cast<std::uint64_t>(i)));
      pl::Json row = pl::capture_json(cap);
      row["config_hash"] = hash;
      traces += row.dump() + "\n";
    }
    emit(o, "captures.jsonl", traces, false);
  }
  return 0;
}

int cmd_pair(const CommonOpts& o) {
  pl::PairSetup setup = make_setup(o);
  pl::UserModel model = pl::UserModel::for_ui(pl::ui_from_name(o.ui));
  pl::SessionTruth s =
      pl::gen_session(model, setup.zl.policy, pl::derive_seed(o.seed, "cli-pair-session"));
  pl::Protocol proto = pl::protocol_from_name(o.protocol == "t2pair" ? "fc"
                                              : o.protocol == "t2pairpp" ? "zl"
                                                                         : o.protocol);
  pl::PairRun run = proto == pl::Protocol::FuzzyCommit
                        ? pl::run_t2pair(s.device, s.helper, setup.fc, setup.net,
                                         pl::derive_seed(o.seed, "cli-pair-run"))
                        : pl::run_t2pairpp(s.device, s.helper, setup.zl, setup.net,
                                           pl::derive_seed(o.seed, "cli-pair-run"));
  pl::Json out = pl::pair_run_json(run);
  out["config"] = common_json(o);
  out["config_hash"] = pl::config_hash(common_json(o));
  std::string text = out.dump(2) + "\n";
  emit(o, "pair.json", text, false);
  std::cout << text;
  return run.paired ? 0 : 1;
}

int cmd_attack(const CommonOpts& o, int guess_runs) {
  pl::PairSetup setup = make_setup(o);
  pl::Protocol proto = pl::protocol_from_name(o.protocol == "t2pair" ? "fc"
                                              : o.protocol == "t2pairpp" ? "zl"
                                                                         : o.protocol);
  pl::UserModel model = pl::UserModel::for_ui(pl::ui_from_name(o.ui));
  pl::SessionTruth s =
      pl::gen_session(model, setup.zl.policy, pl::derive_seed(o.seed, "cli-attack-session"));

  pl::Json rows = pl::Json::array();
  auto add = [&rows](const pl::AttackResult& r) {
    rows.push_back(pl::Json{{"attack", r.attack},
                            {"device", pl::outcome_name(r.run.device)},
                            {"helper", pl::outcome_name(r.run.helper)},
                            {"paired", r.run.paired},
                            {"defended", r.defended},
                            {"detail", r.detail}});
  };

  pl::PairRun honest =
      proto == pl::Protocol::FuzzyCommit
          ? pl::run_t2pair(s.device, s.helper, setup.fc, setup.net, pl::derive_seed(o.seed, "honest"))
          : pl::run_t2pairpp(s.device, s.helper, setup.zl, setup.net,
                             pl::derive_seed(o.seed, "honest"));
  rows.push_back(pl::Json{{"attack", "none"},
                          {"device", pl::outcome_name(honest.device)},
                          {"helper", pl::outcome_name(honest.helper)},
                          {"paired", honest.paired},
                          {"defended", honest.paired},
                          {"detail", "honest baseline"}});

  add(pl::attack_eavesdrop(proto, s.device, s.helper, setup, pl::derive_seed(o.seed, "eaves")));
  add(pl::attack_mitm(proto, s.device, s.helper, setup, pl::derive_seed(o.seed, "mitm")));
  if (proto == pl::Protocol::ZeroLoss)
    add(pl::attack_reflect(s.device, s.helper, setup, pl::derive_seed(o.seed, "reflect")));
  add(pl::attack_delay(proto, s.device, s.helper, setup, pl::derive_seed(o.seed, "delay")));
  add(pl::attack_replay(proto, s.device, s.helper, setup, pl::derive_seed(o.seed, "replay")));

  pl::Json out{{"protocol", pl::protocol_name(proto)},
               {"config", common_json(o)},
               {"config_hash", pl::config_hash(common_json(o))},
               {"rows", rows}};

  if (proto == pl::Protocol::FuzzyCommit && guess_runs > 0) {
    pl::FcConfig toy = setup.fc;
    toy.enc = pl::EncodingParams{100, 4};
    toy.rs_override = pl::RsParams{4, 7, 1};
    toy.policy.required_length = 7;
    toy.policy.min_pauses = 0;
    toy.group = &pl::dh_group_test512();
    pl::Evidence toy_ev{{120, 250, 310, 90, 399, 180, 60}, toy.policy.ui};
    pl::GuessStats g = pl::attack_online_guess(toy_ev, toy, setup.net, guess_runs,
                                               pl::derive_seed(o.seed, "guess"));
    out["online_guess"] = pl::Json{{"runs", g.runs},
                                   {"wins", g.wins},
                                   {"rate", g.rate()},
                                   {"expected_rate", g.expected_rate},
                                   {"note", "scaled-down word space, throwaway test group"}};
  }

  std::string text = out.dump(2) + "\n";
  emit(o, "attacks.json", text, false);
  std::cout << text;
  return 0;
}

int cmd_sweep(const CommonOpts& o, const std::string& param, const std::string& values_csv, int n,
              bool pauses) {
  pl::SweepConfig sc;
  sc.param = param;
  sc.ui = pl::ui_from_name(o.ui);
  sc.with_pauses = pauses;
  sc.n = n;
  sc.seed = o.seed;
  sc.enc = pl::EncodingParams{o.base, o.length};
  sc.thr_symbols = o.thr;
  sc.t_thr_ms = o.tthr;
  std::istringstream vs(values_csv);
  std::string tok;
  while (std::getline(vs, tok, ','))
    if (!tok.empty()) sc.values.push_back(std::stod(tok));
  std::vector<pl::SweepPoint> pts = pl::run_sweep(sc);
  std::string csv = "# config_hash=" + pl::config_hash(common_json(o)) + "\n" +
                    pl::sweep_csv(sc.param, pts);
  emit(o, "sweep.csv", csv, false);
  std::cout << csv;
  return 0;
}

int cmd_entropy(const CommonOpts& o) {
  pl::UiType ui = pl::ui_from_name(o.ui);
  std::vector<pl::EntropyRow> rows = pl::entropy_table(ui, o.base);
  pl::Json jrows = pl::Json::array();
  std::ostringstream table;
  table << "ui=" << o.ui << " base=" << o.base << "ms\n";
  table << "n1  n2  E1      E2      bits    bits(no-pos)  time_ms  bit/s\n";
  for (const pl::EntropyRow& r : rows) {
    char line[160];
    std::snprintf(line, sizeof line, "%-3d %-3d %-7.3f %-7.3f %-7.2f %-13.2f %-8.0f %.2f\n", r.n1,
                  r.n2, r.e1, r.e2, r.total, r.total_no_positional, r.time_ms, r.rate_bps);
    table << line;
    jrows.push_back(pl::Json{{"n1", r.n1},
                             {"n2", r.n2},
                             {"e1_bits", r.e1},
                             {"e2_bits", r.e2},
                             {"total_bits", r.total},
                             {"total_bits_no_positional", r.total_no_positional},
                             {"time_ms", r.time_ms},
                             {"bit_rate_bps", r.rate_bps}});
  }
  std::cout << table.str();
  pl::Json out{{"config", common_json(o)},
               {"config_hash", pl::config_hash(common_json(o))},
               {"rows", jrows}};
  emit(o, "entropy.json", out.dump(2) + "\n", false);
  return 0;
}

int cmd_evaluate(const CommonOpts& o, const std::string& dataset_path, int genuine, int impostor,
                 int mimicry, double skill, bool pauses, double train_frac, double target_frr) {
  std::vector<pl::DatasetRecord> records;
  if (!dataset_path.empty()) {
    for (const pl::Json& j : pl::read_jsonl(dataset_path)) {
      if (j.contains("config")) continue;  // header row
      records.push_back(pl::record_from_json(j));
    }
  } else {
    pl::DatasetConfig dc;
    dc.ui = pl::ui_from_name(o.ui);
    dc.with_pauses = pauses;
    dc.genuine = genuine;
    dc.impostor = impostor;
    dc.mimicry = mimicry;
    dc.mimic_skill = skill;
    dc.seed = o.seed;
    dc.jobs = o.jobs;
    records = pl::build_dataset(dc);
  }

  std::vector<pl::DatasetRecord> train, test;
  pl::split_dataset(records, train_frac, pl::derive_seed(o.seed, "cli-split"), train, test);
  pl::TrainConfig tc;
  tc.seed = pl::derive_seed(o.seed, "cli-train");
  pl::EncodingParams enc{o.base, o.length};
  pl::EvalReport rep = pl::train_and_eval(train, test, enc, tc, target_frr);

  pl::Json out{{"config", common_json(o)},
               {"config_hash", pl::config_hash(common_json(o))},
               {"train_records", train.size()},
               {"test_records", test.size()},
               {"model", pl::classifier_json(rep.model)},
               {"auc", rep.roc_model.auc},
               {"eer", rep.roc_model.eer},
               {"rank_auc", rep.rank_auc_model},
               {"auc_faithful_distance", rep.roc_faithful.auc},
               {"auc_vanilla_distance", rep.roc_vanilla.auc},
               {"operating_threshold", rep.op_threshold},
               {"frr_at_operating_point", rep.frr_at_op},
               {"far_at_operating_point", rep.far_at_op},
               {"far_mimicry_at_operating_point", rep.far_mimicry_at_op},
               {"mimicry_records", rep.mimicry_count}};
  std::string text = out.dump(2) + "\n";
  std::cout << text;
  if (!o.out.empty()) {
    pl::write_text(out_path(o, "report.json"), text);
    pl::write_text(out_path(o, "roc_model.csv"), pl::roc_csv(rep.roc_model));
    pl::write_text(out_path(o, "roc_faithful.csv"), pl::roc_csv(rep.roc_faithful));
    pl::write_text(out_path(o, "roc_vanilla.csv"), pl::roc_csv(rep.roc_vanilla));
    pl::write_json_file(out_path(o, "classifier.json"), pl::classifier_json(rep.model));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CommonOpts o;
  try {
    apply_defaults(o, config_defaults(argc, argv));
  } catch (const pl::Error& e) {
    std::cerr << pl::Json{{"error", pl::err_name(e.code())}, {"message", e.what()}}.dump() << "\n";
    return 2;
  }

  CLI::App app{"Desk-scale lab for interval-evidence device pairing"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("generate", "Write a labelled evidence dataset (and optional sensor captures)");
  int genuine = 400, impostor = 400, mimicry = 0, captures = 0;
  double skill = 1.0;
  bool no_pauses = false;
  add_common(gen, o, false);
  gen->add_option("--genuine", genuine, "genuine pair count");
  gen->add_option("--impostor", impostor, "impostor pair count");
  gen->add_option("--mimicry", mimicry, "mimicry pair count");
  gen->add_option("--skill", skill, "mimic skill in [0,1]");
  gen->add_flag("--no-pauses", no_pauses, "generate the pause-free operation style");
  gen->add_option("--captures", captures, "also render N sensor-level captures");

  auto* pair = app.add_subcommand("pair", "Run one pairing session and print the transcript");
  add_common(pair, o);

  auto* attack = app.add_subcommand("attack", "Run the scripted adversary suite");
  int guess_runs = 0;
  add_common(attack, o);
  attack->add_option("--guess-runs", guess_runs, "online-guess sessions against the scaled-down word space");

  auto* sweep = app.add_subcommand("sweep", "Vary one parameter and emit FRR/FAR CSV");
  std::string param = "thr", values = "2,4,6,8,10,12";
  int sweep_n = 300;
  bool sweep_no_pauses = false;
  add_common(sweep, o);
  sweep->add_option("--param", param, "thr | base | length | jitter | tthr");
  sweep->add_option("--values", values, "comma-separated values");
  sweep->add_option("--n", sweep_n, "samples per class per value");
  sweep->add_flag("--no-pauses", sweep_no_pauses, "pause-free operation style");

  auto* entropy = app.add_subcommand("entropy", "Print the evidence entropy table");
  add_common(entropy, o, false);
  entropy->add_option("--device", o.ui, "alias for --ui");

  auto* eval = app.add_subcommand("evaluate", "Train the correlation scorer and report ROC metrics");
  std::string dataset_path;
  int ev_gen = 2000, ev_imp = 2000, ev_mim = 1000;
  double ev_skill = 1.0, train_frac = 0.5, target_frr = 0.10;
  bool ev_no_pauses = false;
  add_common(eval, o, false);
  eval->add_option("--dataset", dataset_path, "existing dataset.jsonl (skips generation)");
  eval->add_option("--genuine", ev_gen, "genuine pairs to generate");
  eval->add_option("--impostor", ev_imp, "impostor pairs to generate");
  eval->add_option("--mimicry", ev_mim, "mimicry pairs to generate");
  eval->add_option("--skill", ev_skill, "mimic skill in [0,1]");
  eval->add_flag("--no-pauses", ev_no_pauses, "pause-free operation style");
  eval->add_option("--train-frac", train_frac, "train split fraction");
  eval->add_option("--target-frr", target_frr, "operating point picked on the train split");

  try {
    app.parse(argc, argv);
    if (gen->parsed())
      return cmd_generate(o, genuine, impostor, mimicry, skill, !no_pauses, captures);
    if (pair->parsed()) return cmd_pair(o);
    if (attack->parsed()) return cmd_attack(o, guess_runs);
    if (sweep->parsed()) return cmd_sweep(o, param, values, sweep_n, !sweep_no_pauses);
    if (entropy->parsed()) return cmd_entropy(o);
    if (eval->parsed())
      return cmd_evaluate(o, dataset_path, ev_gen, ev_imp, ev_mim, ev_skill, !ev_no_pauses,
                          train_frac, target_frr);
    return 2;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << pl::Json{{"error", "Usage"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  } catch (const pl::Error& e) {
    std::cerr << pl::Json{{"error", pl::err_name(e.code())}, {"message", e.what()}}.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << pl::Json{{"error", "Internal"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  }
}
