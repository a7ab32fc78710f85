#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pairlab/bytes.hpp"
#include "pairlab/codec.hpp"

namespace pairlab {

enum class UiType { Button, Knob, Screen };

const char* ui_name(UiType ui);
UiType ui_from_name(std::string_view name);

struct Evidence {
  std::vector<int> intervals_ms;
  UiType ui = UiType::Button;
};

struct EvidencePolicy {
  UiType ui = UiType::Button;
  int required_length = 6;
  int pause_threshold_ms = 650;
  int min_pauses = 1;

  static EvidencePolicy for_ui(UiType ui, bool with_pauses = true);
};

// Consecutive differences of salient timestamps, rounded to whole ms.
std::vector<int> to_intervals(const std::vector<double>& salient_ms);

Evidence make_evidence(const std::vector<double>& salient_ms, UiType ui);

struct SelfCheckResult {
  bool ok = false;
  int pause_count = 0;
  std::string reason;
};

// Local sanity gate both sides run before committing to anything.
SelfCheckResult self_check(const Evidence& ev, const EvidencePolicy& policy);

int count_pauses(const Evidence& ev, int pause_threshold_ms);

// Bit-level Hamming distance between faithful encodings; the analytics-side
// similarity measure (clock-offset invariant because intervals are).
int encoding_distance(const Evidence& a, const Evidence& b, const EncodingParams& p);
bool hamming_distance_ok(const Evidence& a, const Evidence& b, const EncodingParams& p,
                         int thr_bits);

// Concatenated faithful encodings of all intervals, packed into symbols.
Symbols evidence_symbols(const Evidence& ev, const EncodingParams& p, int symbol_bits);

// Wire form: ui byte | interval count (u16) | intervals as signed 32-bit
// big-endian. Parsing failures come back as nullopt, never an exception.
Bytes evidence_to_bytes(const Evidence& ev);
std::optional<Evidence> evidence_from_bytes(const Bytes& raw);

}  // namespace pairlab
