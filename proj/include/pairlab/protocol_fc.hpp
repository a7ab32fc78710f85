#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "pairlab/evidence.hpp"
#include "pairlab/simnet.hpp"

namespace pairlab {

// Pairing variant that masks a random one-time password with the encoded
// evidence, then runs an encrypted key exchange gated on that password. The
// mask plus error correction tolerates small evidence disagreement without
// ever sending evidence in the clear.
struct FcConfig {
  EncodingParams enc;
  int thr_symbols = 8;
  std::optional<RsParams> rs_override;  // scaled-down suites set this
  const DhGroup* group = &dh_group_modp2048();
  EvidencePolicy policy;
  double t_end_device_ms = 100;  // when each side's operation evidence is complete
  double t_end_helper_ms = 100;
  double watchdog_ms = 5000;

  RsParams rs_for(const Evidence& ev) const;
};

struct FcCommitment {
  RsParams rs;
  Symbols delta;     // codeword masked with the packed evidence
  Symbols password;  // committed message symbols; never sent
};

FcCommitment fc_commit(const Evidence& ev, const EncodingParams& enc, const RsParams& rs,
                       HmacDrbg& rng);

// Unmask with own evidence and error-correct back to the password. nullopt
// when the evidence disagrees in more symbols than the code can absorb.
std::optional<Symbols> fc_decommit(const Evidence& ev, const EncodingParams& enc,
                                   const RsParams& rs, const Symbols& delta);

// Password-derived wrapping key for the key-exchange messages.
Bytes fc_password_key(const Symbols& password);

class FcDevice : public Party {
 public:
  FcDevice(std::string name, Evidence ev, FcConfig cfg);
  std::string name() const override { return name_; }
  void on_start(Env& env) override;
  void on_message(Env& env, const Message& m) override;
  void on_timer(Env& env, int tag) override;
  Outcome outcome() const override { return outcome_; }
  Bytes session_key() const override { return outcome_ == Outcome::Paired ? key_ : Bytes{}; }

 private:
  void start_exchange(Env& env);

  std::string name_;
  Evidence ev_;
  FcConfig cfg_;
  Outcome outcome_ = Outcome::Running;
  int step_ = 0;
  bool exchange_broken_ = false;
  FcCommitment commit_;
  Bytes w_, key_, c2_;
  DhKeyPair dh_;
};

class FcHelper : public Party {
 public:
  FcHelper(std::string name, Evidence ev, FcConfig cfg);
  std::string name() const override { return name_; }
  void on_start(Env& env) override;
  void on_message(Env& env, const Message& m) override;
  void on_timer(Env& env, int tag) override;
  Outcome outcome() const override { return outcome_; }
  Bytes session_key() const override { return outcome_ == Outcome::Paired ? key_ : Bytes{}; }

 private:
  void try_respond(Env& env);

  std::string name_;
  Evidence ev_;
  FcConfig cfg_;
  Outcome outcome_ = Outcome::Running;
  int step_ = 0;
  bool ready_ = false;  // own evidence complete
  bool exchange_broken_ = false;
  std::optional<Message> delta_msg_, eke1_msg_;
  Bytes w_, key_, c1_;
};

PairRun run_t2pair(const Evidence& device_ev, const Evidence& helper_ev, const FcConfig& cfg,
                   const NetConfig& net, std::uint64_t seed);

}  // namespace pairlab
