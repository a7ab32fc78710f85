#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pairlab/protocol_fc.hpp"
#include "pairlab/protocol_zl.hpp"
#include "pairlab/synthgen.hpp"

namespace pairlab {

enum class Protocol { FuzzyCommit, ZeroLoss };

const char* protocol_name(Protocol p);
Protocol protocol_from_name(std::string_view name);

struct PairSetup {
  FcConfig fc;
  ZlConfig zl;
  NetConfig net;
};

struct AttackResult {
  std::string attack;
  Protocol protocol = Protocol::FuzzyCommit;
  bool defended = false;
  std::string detail;
  PairRun run;
};

// Honest run; verifies the wire never carries the session key or the raw
// evidence bytes where a listener could read them.
AttackResult attack_eavesdrop(Protocol p, const Evidence& dev, const Evidence& hel,
                              const PairSetup& s, std::uint64_t seed);

// Active relay owning the channel, running separate key agreements with both
// sides and re-wrapping what it can.
AttackResult attack_mitm(Protocol p, const Evidence& dev, const Evidence& hel, const PairSetup& s,
                         std::uint64_t seed);

// Bounces the device's own commitment back at it.
AttackResult attack_reflect(const Evidence& dev, const Evidence& hel, const PairSetup& s,
                            std::uint64_t seed);

// Holds a commitment past the receiver's deadline. Defended by the deadline
// variant; the masked variant pairs anyway, which is the gap it leaves open.
AttackResult attack_delay(Protocol p, const Evidence& dev, const Evidence& hel, const PairSetup& s,
                          std::uint64_t seed);

// Duplicates a mid-protocol message; state machines must shrug it off.
AttackResult attack_replay(Protocol p, const Evidence& dev, const Evidence& hel,
                           const PairSetup& s, std::uint64_t seed);

// Remote attacker with no evidence playing the helper role against a
// scaled-down password space, guessing uniformly. Success rate must track
// 1 / (number of possible committed words).
struct GuessStats {
  int runs = 0;
  int wins = 0;
  double expected_rate = 0;
  double rate() const { return runs ? static_cast<double>(wins) / runs : 0; }
};

GuessStats attack_online_guess(const Evidence& dev, const FcConfig& toy, const NetConfig& net,
                               int runs, std::uint64_t seed);

// Fraction of protocol runs that reach Paired over a list of evidence pairs.
int count_paired(Protocol p, const std::vector<std::pair<Evidence, Evidence>>& pairs,
                 const PairSetup& s, std::uint64_t seed);

struct MimicryStats {
  int runs = 0;
  int accepted = 0;
  double rate() const { return runs ? static_cast<double>(accepted) / runs : 0; }
};

// Observing attacker reproduces victim rhythms at the given skill and plays
// the helper side honestly with the forged evidence.
MimicryStats mimicry_accept_rate(Protocol p, const UserModel& m, const MimicryConfig& mc,
                                 const EvidencePolicy& policy, const PairSetup& s, int runs,
                                 std::uint64_t seed);

}  // namespace pairlab
