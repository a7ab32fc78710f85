#include "pairlab/evidence.hpp"

#include <cmath>

namespace pairlab {

const char* ui_name(UiType ui) {
  switch (ui) {
    case UiType::Button: return "button";
    case UiType::Knob: return "knob";
    case UiType::Screen: return "screen";
  }
  return "unknown";
}

UiType ui_from_name(std::string_view name) {
  if (name == "button") return UiType::Button;
  if (name == "knob") return UiType::Knob;
  if (name == "screen") return UiType::Screen;
  fail(Err::Config, "unknown ui type: " + std::string(name));
}

EvidencePolicy EvidencePolicy::for_ui(UiType ui, bool with_pauses) {
  EvidencePolicy p;
  p.ui = ui;
  if (with_pauses) {
    p.required_length = (ui == UiType::Knob) ? 7 : 6;
    p.min_pauses = 1;
  } else {
    p.required_length = 8;
    p.min_pauses = 0;
  }
  return p;
}

std::vector<int> to_intervals(const std::vector<double>& salient_ms) {
  if (salient_ms.size() < 2) fail(Err::TooFewEvents, "need at least two salient points");
  std::vector<int> out;
  out.reserve(salient_ms.size() - 1);
  for (std::size_t i = 1; i < salient_ms.size(); ++i) {
    double d = salient_ms[i] - salient_ms[i - 1];
    if (d <= 0) fail(Err::NonMonotonicTimestamps, "salient times must strictly increase");
    out.push_back(static_cast<int>(std::lround(d)));
  }
  return out;
}

Evidence make_evidence(const std::vector<double>& salient_ms, UiType ui) {
  return Evidence{to_intervals(salient_ms), ui};
}

int count_pauses(const Evidence& ev, int pause_threshold_ms) {
  int n = 0;
  for (int v : ev.intervals_ms) n += (v >= pause_threshold_ms);
  return n;
}

SelfCheckResult self_check(const Evidence& ev, const EvidencePolicy& policy) {
  SelfCheckResult r;
  r.pause_count = count_pauses(ev, policy.pause_threshold_ms);
  if (static_cast<int>(ev.intervals_ms.size()) != policy.required_length) {
    r.reason = "expected " + std::to_string(policy.required_length) + " intervals, got " +
               std::to_string(ev.intervals_ms.size());
    return r;
  }
  if (r.pause_count < policy.min_pauses) {
    r.reason = "expected at least " + std::to_string(policy.min_pauses) + " pauses, got " +
               std::to_string(r.pause_count);
    return r;
  }
  r.ok = true;
  return r;
}

int encoding_distance(const Evidence& a, const Evidence& b, const EncodingParams& p) {
  if (a.intervals_ms.size() != b.intervals_ms.size())
    fail(Err::LengthMismatch, "evidence lengths differ");
  return hamming(encode_faithful(a.intervals_ms, p), encode_faithful(b.intervals_ms, p));
}

bool hamming_distance_ok(const Evidence& a, const Evidence& b, const EncodingParams& p,
                         int thr_bits) {
  return encoding_distance(a, b, p) <= thr_bits;
}

Symbols evidence_symbols(const Evidence& ev, const EncodingParams& p, int symbol_bits) {
  return pack_bits(encode_faithful(ev.intervals_ms, p), symbol_bits);
}

Bytes evidence_to_bytes(const Evidence& ev) {
  Bytes out;
  out.push_back(static_cast<std::uint8_t>(ev.ui));
  std::size_t count = ev.intervals_ms.size();
  out.push_back(static_cast<std::uint8_t>(count >> 8));
  out.push_back(static_cast<std::uint8_t>(count & 0xFF));
  for (int v : ev.intervals_ms) store_be32(out, static_cast<std::uint32_t>(v));
  return out;
}

std::optional<Evidence> evidence_from_bytes(const Bytes& raw) {
  if (raw.size() < 3) return std::nullopt;
  if (raw[0] > 2) return std::nullopt;
  std::size_t count = (static_cast<std::size_t>(raw[1]) << 8) | raw[2];
  if (raw.size() != 3 + 4 * count) return std::nullopt;
  Evidence ev;
  ev.ui = static_cast<UiType>(raw[0]);
  ev.intervals_ms.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    ev.intervals_ms.push_back(static_cast<std::int32_t>(load_be32(raw, 3 + 4 * i)));
  return ev;
}

}  // namespace pairlab
