#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "pairlab/correlation.hpp"
#include "pairlab/evidence.hpp"
#include "pairlab/simnet.hpp"

namespace pairlab {

// Pairing variant that never degrades the evidence: a plain key agreement
// first, then sealed evidence commitments exchanged before a per-side
// deadline, and the unsealing keys released only after that deadline has
// passed locally. Late, reflected or cross-session commitments are rejected
// before any evidence is compared.
struct ZlConfig {
  EncodingParams enc;
  int thr_symbols = 8;
  int symbol_bits_override = 0;  // 0 picks the same width the masked variant would
  const DhGroup* group = &dh_group_modp2048();
  EvidencePolicy policy;
  // Correlation check run on the opened peer evidence. The baseline needs no
  // parameter file; pass a trained model for realistic runs.
  Classifier correlation = ThresholdBaseline{};
  double t_thr_ms = 600;  // commitment arrival slack past local operation end
  double t_end_device_ms = 100;
  double t_end_helper_ms = 100;
  double watchdog_ms = 5000;

  int symbol_bits_for(const Evidence& ev) const;
};

// Commitment: evidence and the agreed channel key, sealed under a one-time
// key that stays local until the deadline has passed.
Bytes zl_commit(const Bytes& w32, const Bytes& chan_key, const Evidence& ev, HmacDrbg& rng);

struct ZlOpened {
  Bytes chan_key;
  Evidence ev;
};

std::optional<ZlOpened> zl_open(const Bytes& commitment, const Bytes& w32);

inline bool zl_deadline_ok(double arrival_ms, double t_end_ms, double t_thr_ms) {
  return arrival_ms <= t_end_ms + t_thr_ms;
}

// Symbol-distance accept rule; offline sweeps use it to study thresholds at
// the same granularity the masked variant corrects at.
bool zl_correlated(const Evidence& a, const Evidence& b, const EncodingParams& enc,
                   int thr_symbols, int symbol_bits);

class ZlParty : public Party {
 public:
  ZlParty(std::string name, Evidence ev, ZlConfig cfg, bool is_device);
  std::string name() const override { return name_; }
  void on_start(Env& env) override;
  void on_message(Env& env, const Message& m) override;
  void on_timer(Env& env, int tag) override;
  Outcome outcome() const override { return outcome_; }
  Bytes session_key() const override { return outcome_ == Outcome::Paired ? session_key_ : Bytes{}; }

 private:
  double t_end() const;
  std::string peer() const { return is_device_ ? "helper" : "device"; }
  void maybe_commit(Env& env);
  void handle_key(Env& env, const Bytes& payload);
  void finish(Env& env);

  std::string name_;
  Evidence ev_;
  ZlConfig cfg_;
  bool is_device_;
  Outcome outcome_ = Outcome::Running;
  bool op_end_ = false, dh_done_ = false, commit_sent_ = false;
  bool release_due_ = false, key_sent_ = false, verified_ = false;
  DhKeyPair dh_;
  Bytes chan_key_, w_, my_commit_, peer_commit_, peer_w_, stashed_key_, session_key_;
  bool peer_commit_seen_ = false, stashed_key_seen_ = false;
};

PairRun run_t2pairpp(const Evidence& device_ev, const Evidence& helper_ev, const ZlConfig& cfg,
                     const NetConfig& net, std::uint64_t seed);

}  // namespace pairlab
