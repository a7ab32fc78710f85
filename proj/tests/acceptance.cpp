// Gate suite: one line per criterion, exit code = number of failures.
// argv[1] = path to the CLI binary (used by the reproducibility criterion).
#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "pairlab/attacks.hpp"
#include "pairlab/codec.hpp"
#include "pairlab/eval.hpp"
#include "pairlab/rng.hpp"

using namespace pairlab;

namespace {

std::string cli_bin;
std::string tmp_dir;

struct CmdOut {
  int code = -1;
  std::string out;
};

CmdOut sh(const std::string& cmd) {
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {};
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  int st = pclose(p);
  CmdOut r;
  r.out = std::move(out);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

const Evidence kDev{{200, 300, 400, 900, 250, 350}, UiType::Button};
const Evidence kClose{{210, 290, 400, 930, 240, 350}, UiType::Button};

Evidence shifted(const Evidence& ev, int delta) {
  Evidence out = ev;
  for (int& v : out.intervals_ms) v += delta;
  return out;
}

PairSetup fast_setup() {
  PairSetup s;
  s.fc.group = &dh_group_test512();
  s.fc.policy = EvidencePolicy::for_ui(UiType::Button);
  s.zl.group = &dh_group_test512();
  s.zl.policy = EvidencePolicy::for_ui(UiType::Button);
  return s;
}

// --- criteria ---------------------------------------------------------

bool c1_encoding(std::string& detail) {
  EncodingParams p{4, 40};
  bool ok = hamming(encode_faithful({121}, p), encode_faithful({57}, p)) == 16 &&
            hamming(encode_faithful({128}, p), encode_faithful({127}, p)) == 1 &&
            hamming(encode_vanilla({121}, 8), encode_vanilla({57}, 8)) == 1 &&
            hamming(encode_vanilla({128}, 8), encode_vanilla({127}, 8)) == 8;
  detail = "quantized-unary 16/1 vs plain-binary 1/8";
  return ok;
}

bool c2_error_correction(std::string& detail) {
  GaloisField gf8(8);
  RsParams big{8, 32, 16};
  Rng rng(20220);
  int trials = 0;
  for (int t = 0; t < 1000; ++t) {
    Symbols msg(16);
    for (auto& s : msg) s = static_cast<std::uint16_t>(rng.uniform_int(0, 255));
    Symbols code = rs_encode(gf8, big, msg);
    int nerr = 1 + t % 8;
    std::vector<int> pos(32);
    std::iota(pos.begin(), pos.end(), 0);
    for (int i = 0; i < nerr; ++i) {
      int j = rng.uniform_int(i, 31);
      std::swap(pos[static_cast<std::size_t>(i)], pos[static_cast<std::size_t>(j)]);
      code[static_cast<std::size_t>(pos[static_cast<std::size_t>(i)])] ^=
          static_cast<std::uint16_t>(rng.uniform_int(1, 255));
    }
    auto dec = rs_decode(gf8, big, code);
    if (!dec || *dec != msg) {
      detail = "random trial failed at t=" + std::to_string(t);
      return false;
    }
    ++trials;
  }

  GaloisField gf4(4);
  RsParams small{4, 7, 3};
  long exhaustive = 0;
  for (int w = 0; w < 100; ++w) {
    Symbols msg(3);
    for (auto& s : msg) s = static_cast<std::uint16_t>(rng.uniform_int(0, 15));
    Symbols code = rs_encode(gf4, small, msg);
    for (int i = 0; i < 7; ++i) {
      for (int e1 = 1; e1 < 16; ++e1) {
        Symbols c = code;
        c[static_cast<std::size_t>(i)] ^= static_cast<std::uint16_t>(e1);
        auto dec = rs_decode(gf4, small, c);
        ++exhaustive;
        if (!dec || *dec != msg) {
          detail = "single-error pattern missed";
          return false;
        }
      }
      for (int j = i + 1; j < 7; ++j) {
        for (int e1 = 1; e1 < 16; ++e1) {
          for (int e2 = 1; e2 < 16; ++e2) {
            Symbols c = code;
            c[static_cast<std::size_t>(i)] ^= static_cast<std::uint16_t>(e1);
            c[static_cast<std::size_t>(j)] ^= static_cast<std::uint16_t>(e2);
            auto dec = rs_decode(gf4, small, c);
            ++exhaustive;
            if (!dec || *dec != msg) {
              detail = "double-error pattern missed";
              return false;
            }
          }
        }
      }
    }
  }
  detail = std::to_string(trials) + " random (32,16) trials, " + std::to_string(exhaustive) +
           " exhaustive (7,3) patterns";
  return true;
}

bool c3_honest_runs(std::string& detail) {
  UserModel m = UserModel::for_ui(UiType::Button);
  EvidencePolicy policy = EvidencePolicy::for_ui(UiType::Button);
  FcConfig fc;
  fc.policy = policy;
  ZlConfig zl;
  zl.policy = policy;

  int fc_ok = 0, zl_ok = 0, mismatch_ok = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    SessionTruth st = gen_session(m, policy, derive_seed(9000, "acc3", seed));
    PairRun a = run_t2pair(st.device, st.helper, fc, {}, seed);
    if (a.paired && a.key_device == a.key_helper && !a.key_device.empty()) ++fc_ok;
    PairRun b = run_t2pairpp(st.device, st.helper, zl, {}, seed);
    if (b.paired && b.key_device == b.key_helper && !b.key_device.empty()) ++zl_ok;
    PairRun c = run_t2pair(st.device, shifted(st.device, 90), fc, {}, seed);
    if (!c.paired && c.device == Outcome::AbortPake && c.helper == Outcome::AbortPake)
      ++mismatch_ok;
  }
  detail = "masked " + std::to_string(fc_ok) + "/1000, deadline " + std::to_string(zl_ok) +
           "/1000 paired; over-threshold aborts " + std::to_string(mismatch_ok) + "/1000 (2048-bit group)";
  return fc_ok == 1000 && zl_ok == 1000 && mismatch_ok == 1000;
}

bool c4_deadline(std::string& detail) {
  PairSetup s = fast_setup();

  NetConfig fixed;
  fixed.latency_lo_ms = fixed.latency_hi_ms = 30;  // commit sent at 100 ms lands at 130+extra
  NetConfig on_time = fixed;
  on_time.rules.push_back({"zl.commit", "helper", 0, TamperAction::Delay, 570, 0});
  PairRun tie = run_t2pairpp(kDev, kClose, s.zl, on_time, 1);
  NetConfig late = fixed;
  late.rules.push_back({"zl.commit", "helper", 0, TamperAction::Delay, 571, 0});
  PairRun over = run_t2pairpp(kDev, kClose, s.zl, late, 1);
  bool boundary = tie.paired && !over.paired && over.device == Outcome::AbortDeadline;

  int delayed = 0, reflected = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    AttackResult d = attack_delay(Protocol::ZeroLoss, kDev, kClose, s, seed);
    if (d.defended && d.run.device == Outcome::AbortDeadline) ++delayed;
    AttackResult r = attack_reflect(kDev, kClose, s, seed);
    if (r.defended && r.run.device == Outcome::AbortReflection) ++reflected;
  }
  detail = "boundary tie accepted / +1 ms rejected; withheld-commit aborts " +
           std::to_string(delayed) + "/1000, reflections " + std::to_string(reflected) +
           "/1000 (test group)";
  return boundary && delayed == 1000 && reflected == 1000;
}

bool c5_mitm_and_guessing(std::string& detail) {
  PairSetup s = fast_setup();
  int caught = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    AttackResult r = attack_mitm(Protocol::ZeroLoss, kDev, kClose, s, seed);
    if (!r.run.paired && (r.run.device == Outcome::AbortKeyMismatch ||
                          r.run.helper == Outcome::AbortKeyMismatch))
      ++caught;
  }

  FcConfig toy = s.fc;
  toy.enc = EncodingParams{100, 4};
  toy.rs_override = RsParams{4, 7, 1};
  toy.policy.required_length = 7;
  toy.policy.min_pauses = 0;
  Evidence toy_ev{{120, 250, 310, 90, 399, 180, 60}, toy.policy.ui};
  GuessStats g = attack_online_guess(toy_ev, toy, {}, 2000, 77);
  double gap = std::fabs(g.rate() - g.expected_rate);
  bool guess_ok = g.expected_rate == 0.0625 && gap < 0.012;  // 95% binomial band at N=2000

  detail = "relay caught " + std::to_string(caught) + "/1000; guess rate " +
           std::to_string(g.rate()) + " vs chance " + std::to_string(g.expected_rate) +
           " over a 16-word space";
  return caught == 1000 && guess_ok;
}

bool c6_entropy(std::string& detail) {
  auto near = [](double x, double target, double tol) { return std::fabs(x - target) <= tol; };
  bool intervals_ok = near(interval_entropy(67, 10), 4.79, 0.01) &&
                      near(interval_entropy(501, 10), 7.69, 0.01) &&
                      near(interval_entropy(67, 1), 8.11, 0.01) &&
                      near(interval_entropy(501, 1), 11.01, 0.01);

  std::vector<EntropyRow> t10 = entropy_table(UiType::Button, 10);
  std::vector<EntropyRow> t1 = entropy_table(UiType::Button, 1);
  bool totals_ok = near(t10[0].total, 38.5, 0.1) && near(t10[1].total, 34.3, 0.1);
  bool rates_ok = near(t10[0].rate_bps, 10.3, 0.1) && near(t10[1].rate_bps, 13.2, 0.1);
  bool nopos_ok =
      near(t1[0].total_no_positional, 54.4, 0.1) && near(t1[1].total_no_positional, 51.5, 0.1);

  std::ostringstream d;
  d.setf(std::ios::fixed);
  d.precision(2);
  d << "totals " << t10[0].total << "/" << t10[1].total << " bits, rates " << t10[0].rate_bps
    << "/" << t10[1].rate_bps << " bit/s, no-position " << t1[0].total_no_positional << "/"
    << t1[1].total_no_positional;
  detail = d.str();
  return intervals_ok && totals_ok && rates_ok && nopos_ok;
}

EvalReport eval_at(bool pauses, std::uint64_t seed) {
  DatasetConfig dc;
  dc.ui = UiType::Button;
  dc.with_pauses = pauses;
  dc.genuine = 10000;
  dc.impostor = 10000;
  dc.mimicry = 10000;
  dc.mimic_skill = 1.0;
  dc.seed = seed;
  dc.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::vector<DatasetRecord> records = build_dataset(dc);
  std::vector<DatasetRecord> train, test;
  split_dataset(records, 0.5, derive_seed(seed, "acc7-split"), train, test);
  TrainConfig tc;
  tc.seed = derive_seed(seed, "acc7-train");
  return train_and_eval(train, test, EncodingParams{}, tc, 0.10);
}

bool c7_desk_scale(std::string& detail) {
  EvalReport with_pauses = eval_at(true, 2026);
  EvalReport no_pauses = eval_at(false, 2027);

  bool auc_ok = with_pauses.roc_model.auc > 0.95;
  bool encodings_ok = with_pauses.roc_faithful.auc > with_pauses.roc_vanilla.auc;
  bool ordering_ok = no_pauses.far_mimicry_at_op > with_pauses.far_mimicry_at_op;

  std::ostringstream d;
  d.setf(std::ios::fixed);
  d.precision(4);
  d << "model AUC " << with_pauses.roc_model.auc << ", unary vs binary AUC "
    << with_pauses.roc_faithful.auc << ">" << with_pauses.roc_vanilla.auc
    << ", trained-mimic FAR no-pauses " << no_pauses.far_mimicry_at_op << " > with-pauses "
    << with_pauses.far_mimicry_at_op;
  detail = d.str();
  return auc_ok && encodings_ok && ordering_ok;
}

bool c8_sensing(std::string& detail) {
  std::ostringstream d;
  bool ok = true;
  for (UiType ui : {UiType::Button, UiType::Knob, UiType::Screen}) {
    UserModel m = UserModel::for_ui(ui);
    EvidencePolicy policy = EvidencePolicy::for_ui(ui);
    TraceConfig tc = TraceConfig::for_ui(ui);
    double tol = 1.5 * 1000.0 / tc.rate_hz;
    int count_bad = 0;
    double worst = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
      SyntheticCapture cap = gen_capture(m, policy, tc, derive_seed(4040, ui_name(ui), seed));
      std::vector<double> dev = extract_device_salients(cap.device_events);
      SensorTrace trimmed = trim_big_silence(cap.helper_trace, ui);
      std::vector<double> hel = extract_helper_salients(trimmed, ui);
      if (dev.size() != cap.truth.device_salients.size() ||
          hel.size() != cap.truth.helper_salients.size()) {
        ++count_bad;
        continue;
      }
      for (std::size_t i = 0; i < dev.size(); ++i)
        worst = std::max(worst, std::fabs(dev[i] - cap.truth.device_salients[i]));
      for (std::size_t i = 0; i < hel.size(); ++i)
        worst = std::max(worst, std::fabs(hel[i] - cap.truth.helper_salients[i]));
    }
    bool ui_ok = count_bad == 0 && worst <= tol;
    ok = ok && ui_ok;
    d << ui_name(ui) << " " << (1000 - count_bad) << "/1000 at " << tc.rate_hz << " Hz, worst "
      << static_cast<int>(worst * 100) / 100.0 << " ms (tol " << tol << "); ";
  }
  detail = d.str();
  return ok;
}

bool c9_reproducibility(std::string& detail) {
  if (cli_bin.empty()) {
    detail = "no binary path supplied";
    return false;
  }
  std::string q = "\"" + cli_bin + "\" ";
  std::vector<std::string> cmds = {
      "pair --group test512 --seed 4242",
      "entropy --base 1",
      "sweep --param thr --values 6,8 --n 25 --seed 2",
      "evaluate --genuine 60 --impostor 60 --mimicry 30 --seed 3",
  };
  for (const std::string& c : cmds) {
    CmdOut a = sh(q + c);
    CmdOut b = sh(q + c);
    if (a.out != b.out || a.code != b.code) {
      detail = "divergent rerun: " + c;
      return false;
    }
  }
  CmdOut g1 = sh("mkdir -p " + tmp_dir + "/r1 && " + q +
                 "generate --genuine 8 --impostor 8 --mimicry 4 --captures 2 --seed 5 --out " +
                 tmp_dir + "/r1");
  CmdOut g2 = sh("mkdir -p " + tmp_dir + "/r2 && " + q +
                 "generate --genuine 8 --impostor 8 --mimicry 4 --captures 2 --seed 5 --out " +
                 tmp_dir + "/r2");
  if (g1.code != 0 || g2.code != 0 ||
      slurp(tmp_dir + "/r1/dataset.jsonl") != slurp(tmp_dir + "/r2/dataset.jsonl") ||
      slurp(tmp_dir + "/r1/dataset.jsonl").empty() ||
      slurp(tmp_dir + "/r1/captures.jsonl") != slurp(tmp_dir + "/r2/captures.jsonl")) {
    detail = "generate reruns differ";
    return false;
  }
  detail = std::to_string(cmds.size() + 1) + " commands byte-identical across reruns";
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) cli_bin = argv[1];
  char tmpl[] = "/tmp/pairlab-acc-XXXXXX";
  if (mkdtemp(tmpl)) tmp_dir = tmpl;

  struct Criterion {
    const char* name;
    std::function<bool(std::string&)> fn;
  };
  std::vector<Criterion> cs = {
      {"interval encoding fidelity", c1_encoding},
      {"error-correction window", c2_error_correction},
      {"honest pairing and over-threshold rejection", c3_honest_runs},
      {"commitment deadline semantics", c4_deadline},
      {"relay detection and guessing resistance", c5_mitm_and_guessing},
      {"evidence entropy reproduction", c6_entropy},
      {"desk-scale accuracy", c7_desk_scale},
      {"sensing round trip", c8_sensing},
      {"reproducibility", c9_reproducibility},
  };

  int failures = 0;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = cs[i].fn(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    std::printf("[%zu] %s  %s  (%lld ms)%s%s\n", i + 1, ok ? "PASS" : "FAIL", cs[i].name,
                static_cast<long long>(ms), detail.empty() ? "" : "  ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  return failures;
}
