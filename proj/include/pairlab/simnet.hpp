#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pairlab/bytes.hpp"
#include "pairlab/crypto.hpp"

namespace pairlab {

enum class Outcome {
  Running,
  Paired,
  AbortSelfCheck,
  AbortPake,
  AbortDeadline,
  AbortReflection,
  AbortKeyMismatch,
  AbortNoCorrelation,
  AbortTimeout,
  AbortMalformed,
  Deadlock,
};

const char* outcome_name(Outcome o);

struct Message {
  std::string kind;
  Bytes payload;
  std::string from;
  std::string to;
};

// What a party sees of the network during one of its callbacks.
class Env {
 public:
  virtual ~Env() = default;
  virtual double now() const = 0;
  virtual void send(std::string_view to, std::string_view kind, Bytes payload) = 0;
  virtual void set_timer(double delay_ms, int tag) = 0;
  virtual HmacDrbg& drbg() = 0;
};

class Party {
 public:
  virtual ~Party() = default;
  virtual std::string name() const = 0;
  virtual void on_start(Env&) = 0;
  virtual void on_message(Env&, const Message&) = 0;
  virtual void on_timer(Env&, int) {}
  virtual Outcome outcome() const = 0;
  virtual Bytes session_key() const { return {}; }
};

enum class TamperAction { Drop, Delay, Modify, Replay, Reflect };

// Scripted in-flight interference. A rule matches on kind/from (empty means
// any) and fires on the index-th match (-1 fires on every match). Every
// matching rule advances its counter; only the first eligible one acts.
struct TamperRule {
  std::string kind;
  std::string from;
  int index = 0;
  TamperAction action = TamperAction::Drop;
  double delay_ms = 500;
  int hits = 0;
};

struct NetConfig {
  double latency_lo_ms = 20;
  double latency_hi_ms = 80;
  double horizon_ms = 60000;  // scheduler hard stop; still-running parties report Deadlock
  std::vector<TamperRule> rules;
  std::string mitm;  // when set, this party receives everything the others send
};

struct TranscriptEntry {
  double sent_ms = 0;
  double delivered_ms = -1;  // negative when the message never arrived
  std::string from, to, kind;
  Bytes payload;  // as delivered
  std::string note;
};

struct SessionResult {
  std::vector<std::pair<std::string, Outcome>> outcomes;
  std::vector<std::pair<std::string, Bytes>> keys;
  std::vector<TranscriptEntry> transcript;
  double end_ms = 0;

  Outcome of(std::string_view party) const;
  Bytes key_of(std::string_view party) const;
  bool all(Outcome o) const;
};

// Discrete-event run over the given parties. Deterministic for a fixed seed:
// latencies, tampering and every party's draws all derive from it.
SessionResult run_session(const std::vector<Party*>& parties, const NetConfig& cfg,
                          std::uint64_t seed);

// Two-party convenience view; expects parties named "device" and "helper".
struct PairRun {
  Outcome device = Outcome::Running;
  Outcome helper = Outcome::Running;
  bool paired = false;  // both sides Paired with equal session keys
  Bytes key_device, key_helper;
  SessionResult session;
};

PairRun pair_run_view(SessionResult res);

}  // namespace pairlab
