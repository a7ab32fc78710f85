#include "pairlab/attacks.hpp"

#include "pairlab/rng.hpp"

namespace pairlab {

const char* protocol_name(Protocol p) {
  return p == Protocol::FuzzyCommit ? "fuzzy-commit" : "zero-loss";
}

Protocol protocol_from_name(std::string_view name) {
  if (name == "fuzzy-commit" || name == "fc") return Protocol::FuzzyCommit;
  if (name == "zero-loss" || name == "zl") return Protocol::ZeroLoss;
  fail(Err::Config, "unknown protocol: " + std::string(name));
}

namespace {

PairRun run_proto(Protocol p, const Evidence& dev, const Evidence& hel, const PairSetup& s,
                  std::uint64_t seed) {
  return p == Protocol::FuzzyCommit ? run_t2pair(dev, hel, s.fc, s.net, seed)
                                    : run_t2pairpp(dev, hel, s.zl, s.net, seed);
}

bool wire_contains(const SessionResult& sr, const Bytes& needle) {
  if (needle.empty()) return false;
  for (const auto& e : sr.transcript)
    if (contains(e.payload, needle)) return true;
  return false;
}

// Relay that key-agrees with each side separately and re-wraps the key
// release so each side unseals with the key the relay gave it. The channel
// binding inside the commitment is what this must not survive.
class ZlMallory : public Party {
 public:
  explicit ZlMallory(const ZlConfig& cfg) : cfg_(cfg) {}
  std::string name() const override { return "mallory"; }
  void on_start(Env&) override {}
  Outcome outcome() const override { return Outcome::Running; }

  void on_message(Env& env, const Message& m) override {
    bool from_device = m.from == "device";
    if (m.kind == "zl.dh1" && from_device) {
      kp_dev_ = dh_keygen(*cfg_.group, env.drbg());
      env.send("device", "zl.dh2", kp_dev_.pub);
      k_dev_ = kdf("zl-chan", dh_shared(*cfg_.group, kp_dev_.priv, m.payload));
      kp_hel_ = dh_keygen(*cfg_.group, env.drbg());
      env.send("helper", "zl.dh1", kp_hel_.pub);
      return;
    }
    if (m.kind == "zl.dh2" && !from_device) {
      k_hel_ = kdf("zl-chan", dh_shared(*cfg_.group, kp_hel_.priv, m.payload));
      return;
    }
    if (m.kind == "zl.commit") {
      env.send(from_device ? "helper" : "device", m.kind, m.payload);
      return;
    }
    if (m.kind == "zl.key") {
      const Bytes& mine = from_device ? k_dev_ : k_hel_;
      const Bytes& theirs = from_device ? k_hel_ : k_dev_;
      auto w = aead_open(mine, m.payload, str_bytes("zl.key"));
      Bytes fwd = w ? aead_seal(theirs, *w, str_bytes("zl.key"), env.drbg()) : m.payload;
      env.send(from_device ? "helper" : "device", m.kind, fwd);
      return;
    }
  }

 private:
  ZlConfig cfg_;
  DhKeyPair kp_dev_, kp_hel_;
  Bytes k_dev_, k_hel_;
};

// Relay against the password-gated exchange: it cannot open either side's
// wrapped share, so the best it can do is substitute shares wrapped under a
// guessed password key.
class FcMallory : public Party {
 public:
  explicit FcMallory(const FcConfig& cfg) : cfg_(cfg) {}
  std::string name() const override { return "mallory"; }
  void on_start(Env& env) override {
    w_guess_ = env.drbg().generate(32);
    c1_ = env.drbg().generate(16);
  }
  Outcome outcome() const override { return Outcome::Running; }

  void on_message(Env& env, const Message& m) override {
    bool from_device = m.from == "device";
    if (m.kind == "fc.eke1" && from_device) {
      kp_hel_ = dh_keygen(*cfg_.group, env.drbg());
      env.send("helper", m.kind, aead_seal(w_guess_, kp_hel_.pub, str_bytes("fc.eke1"), env.drbg()));
      return;
    }
    if (m.kind == "fc.eke2" && !from_device) {
      kp_dev_ = dh_keygen(*cfg_.group, env.drbg());
      env.send("device", m.kind,
               aead_seal(w_guess_, cat(kp_dev_.pub, c1_), str_bytes("fc.eke2"), env.drbg()));
      return;
    }
    env.send(from_device ? "helper" : "device", m.kind, m.payload);
  }

 private:
  FcConfig cfg_;
  Bytes w_guess_, c1_;
  DhKeyPair kp_dev_, kp_hel_;
};

// Helper-role attacker guessing the committed word outright.
class FcGuesser : public Party {
 public:
  FcGuesser(const FcConfig& cfg, std::uint64_t guess_space) : cfg_(cfg), space_(guess_space) {}
  std::string name() const override { return "helper"; }
  Outcome outcome() const override { return outcome_; }

  void on_start(Env& env) override {
    RsParams rs = *cfg_.rs_override;
    std::uint64_t g = env.drbg().next_u64() % space_;
    Symbols guess;
    for (int i = 0; i < rs.m; ++i) {
      guess.push_back(static_cast<std::uint16_t>(g & ((1u << rs.symbol_bits) - 1)));
      g >>= rs.symbol_bits;
    }
    w_ = fc_password_key(guess);
    env.set_timer(cfg_.watchdog_ms, 0);
  }

  void on_timer(Env&, int) override { outcome_ = Outcome::AbortTimeout; }

  void on_message(Env& env, const Message& m) override {
    std::size_t plen = from_hex(cfg_.group->p_hex).size();
    if (m.kind == "fc.eke1") {
      auto pt = aead_open(w_, m.payload, str_bytes("fc.eke1"));
      Bytes peer = pt && pt->size() == plen ? *pt : env.drbg().generate(plen);
      broken_ = !(pt && pt->size() == plen);
      kp_ = dh_keygen(*cfg_.group, env.drbg());
      c1_ = env.drbg().generate(16);
      env.send("device", "fc.eke2", aead_seal(w_, cat(kp_.pub, c1_), str_bytes("fc.eke2"), env.drbg()));
      key_ = kdf("fc-session", dh_shared(*cfg_.group, kp_.priv, peer));
      return;
    }
    if (m.kind == "fc.conf1") {
      auto pt = aead_open(key_, m.payload, str_bytes("fc.conf1"));
      if (!broken_ && pt && pt->size() == 32 && Bytes(pt->begin(), pt->begin() + 16) == c1_) {
        env.send("device", "fc.conf2",
                 aead_seal(key_, Bytes(pt->begin() + 16, pt->end()), str_bytes("fc.conf2"), env.drbg()));
        outcome_ = Outcome::Paired;
      } else {
        env.send("device", "fc.conf2", env.drbg().generate(44));
        outcome_ = Outcome::AbortPake;
      }
    }
  }

 private:
  FcConfig cfg_;
  std::uint64_t space_;
  Outcome outcome_ = Outcome::Running;
  bool broken_ = false;
  Bytes w_, key_, c1_;
  DhKeyPair kp_;
};

}  // namespace

AttackResult attack_eavesdrop(Protocol p, const Evidence& dev, const Evidence& hel,
                              const PairSetup& s, std::uint64_t seed) {
  AttackResult r;
  r.attack = "eavesdrop";
  r.protocol = p;
  r.run = run_proto(p, dev, hel, s, seed);
  bool key_leak = wire_contains(r.run.session, r.run.key_device);
  bool dev_ev_leak = wire_contains(r.run.session, evidence_to_bytes(dev));
  bool hel_ev_leak = wire_contains(r.run.session, evidence_to_bytes(hel));
  r.defended = r.run.paired && !key_leak && !dev_ev_leak && !hel_ev_leak;
  r.detail = std::string("paired=") + (r.run.paired ? "yes" : "no") +
             " key_on_wire=" + (key_leak ? "yes" : "no") +
             " evidence_on_wire=" + (dev_ev_leak || hel_ev_leak ? "yes" : "no");
  return r;
}

AttackResult attack_mitm(Protocol p, const Evidence& dev, const Evidence& hel, const PairSetup& s,
                         std::uint64_t seed) {
  AttackResult r;
  r.attack = "mitm-split-keys";
  r.protocol = p;
  NetConfig net = s.net;
  net.mitm = "mallory";
  if (p == Protocol::ZeroLoss) {
    ZlParty d("device", dev, s.zl, true);
    ZlParty h("helper", hel, s.zl, false);
    ZlMallory mal(s.zl);
    r.run = pair_run_view(run_session({&d, &h, &mal}, net, seed));
  } else {
    FcDevice d("device", dev, s.fc);
    FcHelper h("helper", hel, s.fc);
    FcMallory mal(s.fc);
    r.run = pair_run_view(run_session({&d, &h, &mal}, net, seed));
  }
  r.defended = !r.run.paired;
  r.detail = std::string("device=") + outcome_name(r.run.device) +
             " helper=" + outcome_name(r.run.helper);
  return r;
}

AttackResult attack_reflect(const Evidence& dev, const Evidence& hel, const PairSetup& s,
                            std::uint64_t seed) {
  AttackResult r;
  r.attack = "reflect-commitment";
  r.protocol = Protocol::ZeroLoss;
  NetConfig net = s.net;
  net.rules.push_back({"zl.commit", "device", 0, TamperAction::Reflect, 0, 0});
  r.run = run_t2pairpp(dev, hel, s.zl, net, seed);
  r.defended = !r.run.paired && r.run.device == Outcome::AbortReflection;
  r.detail = std::string("device=") + outcome_name(r.run.device) +
             " helper=" + outcome_name(r.run.helper);
  return r;
}

AttackResult attack_delay(Protocol p, const Evidence& dev, const Evidence& hel, const PairSetup& s,
                          std::uint64_t seed) {
  AttackResult r;
  r.attack = "delay-commitment";
  r.protocol = p;
  NetConfig net = s.net;
  if (p == Protocol::ZeroLoss) {
    net.rules.push_back(
        {"zl.commit", "helper", 0, TamperAction::Delay, s.zl.t_thr_ms + 200, 0});
    r.run = run_t2pairpp(dev, hel, s.zl, net, seed);
    r.defended = !r.run.paired && r.run.device == Outcome::AbortDeadline;
  } else {
    net.rules.push_back({"fc.eke2", "helper", 0, TamperAction::Delay, s.zl.t_thr_ms + 200, 0});
    r.run = run_t2pair(dev, hel, s.fc, net, seed);
    // No arrival deadline in this variant: the held message is accepted.
    r.defended = false;
  }
  r.detail = std::string("device=") + outcome_name(r.run.device) +
             " helper=" + outcome_name(r.run.helper);
  return r;
}

AttackResult attack_replay(Protocol p, const Evidence& dev, const Evidence& hel,
                           const PairSetup& s, std::uint64_t seed) {
  AttackResult r;
  r.attack = "replay-duplicate";
  r.protocol = p;
  NetConfig net = s.net;
  net.rules.push_back({p == Protocol::ZeroLoss ? "zl.commit" : "fc.eke2", "", -1,
                       TamperAction::Replay, 40, 0});
  r.run = run_proto(p, dev, hel, {s.fc, s.zl, net}, seed);
  r.defended = r.run.paired;  // duplicates must not derail an honest run
  r.detail = std::string("device=") + outcome_name(r.run.device) +
             " helper=" + outcome_name(r.run.helper);
  return r;
}

GuessStats attack_online_guess(const Evidence& dev, const FcConfig& toy, const NetConfig& net,
                               int runs, std::uint64_t seed) {
  if (!toy.rs_override) fail(Err::BadParams, "guess attack needs explicit code params");
  GuessStats g;
  g.runs = runs;
  int bits = toy.rs_override->symbol_bits * toy.rs_override->m;
  if (bits > 20) fail(Err::BadParams, "guess space too large to measure");
  std::uint64_t space = 1ull << bits;
  g.expected_rate = 1.0 / static_cast<double>(space);
  for (int i = 0; i < runs; ++i) {
    FcDevice d("device", dev, toy);
    FcGuesser a(toy, space);
    SessionResult sr = run_session({&d, &a}, net, derive_seed(seed, "guess", static_cast<std::uint64_t>(i)));
    if (sr.of("device") == Outcome::Paired) ++g.wins;
  }
  return g;
}

int count_paired(Protocol p, const std::vector<std::pair<Evidence, Evidence>>& pairs,
                 const PairSetup& s, std::uint64_t seed) {
  int n = 0;
  std::uint64_t i = 0;
  for (const auto& [dev, hel] : pairs)
    if (run_proto(p, dev, hel, s, derive_seed(seed, "pair", i++)).paired) ++n;
  return n;
}

MimicryStats mimicry_accept_rate(Protocol p, const UserModel& m, const MimicryConfig& mc,
                                 const EvidencePolicy& policy, const PairSetup& s, int runs,
                                 std::uint64_t seed) {
  MimicryStats stats;
  stats.runs = runs;
  for (int i = 0; i < runs; ++i) {
    MimicrySample sample = gen_mimicry_pair(m, mc, policy, derive_seed(seed, "mimic", static_cast<std::uint64_t>(i)));
    PairRun run = run_proto(p, sample.victim.device, sample.attacker, s,
                            derive_seed(seed, "mimic-run", static_cast<std::uint64_t>(i)));
    if (run.paired) ++stats.accepted;
  }
  return stats;
}

}  // namespace pairlab
