#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pairlab/evidence.hpp"
#include "pairlab/sensing.hpp"

namespace pairlab {

// Interval model: n1 short inter-action gaps plus n2 deliberate pauses, both
// truncated normals, with a per-user bias on the means and helper-side
// timestamp jitter.
struct UserModel {
  UiType ui = UiType::Button;
  double mu1 = 238, sigma1 = 67;    // non-pause intervals
  double mu2 = 1402, sigma2 = 501;  // pauses
  double lo1 = 100, hi1 = 600;
  double lo2 = 800, hi2 = 3000;
  double bias1_sigma = 30, bias2_sigma = 150;
  double jitter_ms = 5;  // helper timestamp noise

  static UserModel for_ui(UiType ui);
};

struct SessionTruth {
  std::vector<double> device_salients;
  std::vector<double> helper_salients;
  std::vector<int> pause_positions;  // interval indices holding the pauses
  Evidence device, helper;
  double t_end_device = 0, t_end_helper = 0;  // last salient + settle margin
};

SessionTruth gen_session(const UserModel& m, const EvidencePolicy& policy, std::uint64_t seed);

// Device evidence from one session against helper evidence from another.
std::pair<Evidence, Evidence> gen_negative_pair(const UserModel& m, const EvidencePolicy& policy,
                                                std::uint64_t seed);

// Observing attacker reproducing a victim operation. Reproduction noise
// shrinks with skill and grows with interval length (long holds are hard to
// time); pause placement is only known to attackers at or above the
// position_know_skill mark.
struct MimicryConfig {
  double skill = 0.0;  // 0 = untrained, 1 = trained
  double sigma_unskilled = 300;
  double sigma_skilled = 60;
  double position_know_skill = 0.5;
};

struct MimicrySample {
  SessionTruth victim;
  Evidence attacker;
};

MimicrySample gen_mimicry_pair(const UserModel& m, const MimicryConfig& mc,
                               const EvidencePolicy& policy, std::uint64_t seed);

// Full sensor-level rendering of a session: device event stream plus a
// helper inertial trace with a leading still period.
struct TraceConfig {
  double rate_hz = 80;       // 80 for buttons, 50 for knob/screen defaults
  double silence_ms = 2000;  // still period before the operation
  double noise_sigma = 0.05;
  double pulse_amp = 9.0;    // button accel pulse height
  double pulse_width_ms = 60;
  double rot_amp = 2.0;  // gyro plateau scale for knob/screen
  double ramp_ms = 40;   // plateau rise/fall time
  double lead_ms = 350;  // first activity before the first salient

  static TraceConfig for_ui(UiType ui);
};

struct SyntheticCapture {
  SessionTruth truth;
  EventTrace device_events;
  SensorTrace helper_trace;
};

SyntheticCapture gen_capture(const UserModel& m, const EvidencePolicy& policy,
                             const TraceConfig& tc, std::uint64_t seed);

// How much of an interval the user spends holding still at its end before
// reversing direction; bounded so device event gaps stay close and crossing
// validation windows stay satisfiable.
double hold_span_ms(double interval_ms);

}  // namespace pairlab
