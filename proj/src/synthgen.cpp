#include "pairlab/synthgen.hpp"

#include <algorithm>
#include <cmath>

#include "pairlab/rng.hpp"

namespace pairlab {

UserModel UserModel::for_ui(UiType ui) {
  UserModel m;
  m.ui = ui;
  switch (ui) {
    case UiType::Button:
      m.sigma1 = 67;
      m.sigma2 = 501;
      break;
    case UiType::Knob:
      m.sigma1 = 72;
      m.sigma2 = 362;
      break;
    case UiType::Screen:
      m.sigma1 = 53;
      m.sigma2 = 424;
      break;
  }
  return m;
}

TraceConfig TraceConfig::for_ui(UiType ui) {
  TraceConfig tc;
  tc.rate_hz = (ui == UiType::Button) ? 80 : 50;
  return tc;
}

double hold_span_ms(double interval_ms) { return std::min(40.0 + 0.15 * interval_ms, 180.0); }

namespace {

std::vector<int> pick_pause_positions(Rng& rng, int count, int out_of) {
  std::vector<int> all(static_cast<std::size_t>(out_of));
  for (int i = 0; i < out_of; ++i) all[static_cast<std::size_t>(i)] = i;
  for (int i = 0; i < count; ++i) {
    int j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(out_of - i)));
    std::swap(all[static_cast<std::size_t>(i)], all[static_cast<std::size_t>(j)]);
  }
  std::vector<int> out(all.begin(), all.begin() + count);
  std::sort(out.begin(), out.end());
  return out;
}

constexpr double kEndMarginMs = 200;  // settle time appended after the last salient

}  // namespace

SessionTruth gen_session(const UserModel& m, const EvidencePolicy& policy, std::uint64_t seed) {
  Rng rng(derive_seed(seed, "synth-session"));
  SessionTruth s;

  double mu1 = m.mu1 + rng.normal(0, m.bias1_sigma);
  double mu2 = m.mu2 + rng.normal(0, m.bias2_sigma);

  int total = policy.required_length;
  int n_pauses = 0;
  if (policy.min_pauses > 0) {
    n_pauses = policy.min_pauses + (rng.unit() < 0.5 ? 0 : 1);
    n_pauses = std::min(n_pauses, total - 1);
  }
  if (n_pauses > 0) s.pause_positions = pick_pause_positions(rng, n_pauses, total);

  std::vector<int> intervals;
  intervals.reserve(static_cast<std::size_t>(total));
  for (int k = 0; k < total; ++k) {
    bool pause = std::binary_search(s.pause_positions.begin(), s.pause_positions.end(), k);
    double v = pause ? rng.normal_trunc(mu2, m.sigma2, m.lo2, m.hi2)
                     : rng.normal_trunc(mu1, m.sigma1, m.lo1, m.hi1);
    intervals.push_back(static_cast<int>(std::lround(v)));
  }

  double t0 = 2500.0 + std::floor(rng.unit() * 500.0);
  s.device_salients.push_back(t0);
  for (int v : intervals) s.device_salients.push_back(s.device_salients.back() + v);

  for (int attempt = 0; attempt < 1000; ++attempt) {
    s.helper_salients.clear();
    for (double t : s.device_salients)
      s.helper_salients.push_back(t + rng.normal_trunc(0, m.jitter_ms, -2 * m.jitter_ms, 2 * m.jitter_ms));
    if (std::is_sorted(s.helper_salients.begin(), s.helper_salients.end())) break;
    s.helper_salients.clear();
  }
  if (s.helper_salients.empty()) fail(Err::BadParams, "jitter repeatedly broke ordering");

  s.device = make_evidence(s.device_salients, m.ui);
  s.helper = make_evidence(s.helper_salients, m.ui);
  s.t_end_device = s.device_salients.back() + kEndMarginMs;
  s.t_end_helper = s.helper_salients.back() + kEndMarginMs;
  return s;
}

std::pair<Evidence, Evidence> gen_negative_pair(const UserModel& m, const EvidencePolicy& policy,
                                                std::uint64_t seed) {
  SessionTruth a = gen_session(m, policy, derive_seed(seed, "neg-a"));
  SessionTruth b = gen_session(m, policy, derive_seed(seed, "neg-b"));
  return {a.device, b.helper};
}

MimicrySample gen_mimicry_pair(const UserModel& m, const MimicryConfig& mc,
                               const EvidencePolicy& policy, std::uint64_t seed) {
  MimicrySample out;
  out.victim = gen_session(m, policy, derive_seed(seed, "victim"));
  Rng rng(derive_seed(seed, "attacker"));

  double sigma = mc.sigma_unskilled + mc.skill * (mc.sigma_skilled - mc.sigma_unskilled);
  const std::vector<int>& v = out.victim.device.intervals_ms;
  int total = static_cast<int>(v.size());

  // Below the knowledge mark the attacker saw the rhythm but not where the
  // deliberate holds were, so the long values land at guessed positions.
  std::vector<int> base = v;
  if (mc.skill < mc.position_know_skill && !out.victim.pause_positions.empty()) {
    int n_pauses = static_cast<int>(out.victim.pause_positions.size());
    std::vector<int> guessed = pick_pause_positions(rng, n_pauses, total);
    std::vector<int> pause_vals, other_vals;
    for (int k = 0; k < total; ++k) {
      bool pause = std::binary_search(out.victim.pause_positions.begin(),
                                      out.victim.pause_positions.end(), k);
      (pause ? pause_vals : other_vals).push_back(v[static_cast<std::size_t>(k)]);
    }
    std::size_t pi = 0, oi = 0;
    for (int k = 0; k < total; ++k) {
      bool pause = std::binary_search(guessed.begin(), guessed.end(), k);
      base[static_cast<std::size_t>(k)] = pause ? pause_vals[pi++] : other_vals[oi++];
    }
  }

  std::vector<int> attacker;
  attacker.reserve(base.size());
  for (int val : base) {
    // Reproduction error grows superlinearly with the duration being timed:
    // the attacker both misjudges the observed length and drifts while
    // holding, so sub-second taps copy well and multi-second holds do not.
    double scale = std::max(0.1, (val / 1000.0) * (val / 1000.0));
    double forged = val + rng.normal(0, sigma * scale);
    forged = std::clamp(forged, 50.0, 3000.0);
    attacker.push_back(static_cast<int>(std::lround(forged)));
  }
  out.attacker = Evidence{attacker, m.ui};
  return out;
}

namespace {

struct Segment {
  double a = 0, b = 0;  // rotation active inside [a, b]
  double amp = 0;       // signed plateau value
};

// Half-width of the stationary hold bracketing salient k. Bounded by a
// quarter of the shorter neighbouring interval so the hold never swallows a
// short interval that follows a long pause: rotation segments keep at least
// half the interval, and knob Start/End events stay in order.
double hold_half_ms(const std::vector<double>& xs, std::size_t k, double lead_ms) {
  double left = k == 0 ? lead_ms : xs[k] - xs[k - 1];
  double right = k + 1 < xs.size() ? xs[k + 1] - xs[k] : left;
  double shorter = std::min(left, right);
  return std::min(0.5 * hold_span_ms(shorter), 0.25 * shorter);
}

double segment_value(const Segment& seg, double t, double ramp_ms) {
  if (t <= seg.a || t >= seg.b) return 0;
  double r = std::min(ramp_ms, 0.5 * (seg.b - seg.a));
  double f = std::min({1.0, (t - seg.a) / r, (seg.b - t) / r});
  return seg.amp * f;
}

}  // namespace

SyntheticCapture gen_capture(const UserModel& m, const EvidencePolicy& policy,
                             const TraceConfig& tc, std::uint64_t seed) {
  SyntheticCapture cap;
  cap.truth = gen_session(m, policy, derive_seed(seed, "capture"));
  Rng rng(derive_seed(seed, "capture-trace"));

  // Re-anchor so the still period before the first activity is exactly
  // tc.silence_ms long.
  double first_activity = (m.ui == UiType::Button) ? cap.truth.device_salients.front() - tc.pulse_width_ms
                                                   : cap.truth.device_salients.front() - tc.lead_ms;
  double shift = tc.silence_ms - first_activity;
  for (double* t : {&cap.truth.t_end_device, &cap.truth.t_end_helper}) *t += shift;
  for (auto& t : cap.truth.device_salients) t += shift;
  for (auto& t : cap.truth.helper_salients) t += shift;

  const std::vector<double>& ds = cap.truth.device_salients;
  const std::vector<double>& hs = cap.truth.helper_salients;

  cap.device_events.ui = m.ui;
  auto& ev = cap.device_events.events;
  switch (m.ui) {
    case UiType::Button:
      for (double t : ds) {
        ev.push_back({t, DeviceEventKind::PressedDown});
        ev.push_back({t + 50, DeviceEventKind::Released});
      }
      break;
    case UiType::Screen:
      for (double t : ds) ev.push_back({t, DeviceEventKind::SwipeDirectionChange});
      break;
    case UiType::Knob: {
      ev.push_back({ds.front() - tc.lead_ms, DeviceEventKind::RotationStart});
      for (std::size_t k = 0; k < ds.size(); ++k) {
        double q = hold_half_ms(ds, k, tc.lead_ms);
        ev.push_back({ds[k] - q, DeviceEventKind::RotationEnd});
        ev.push_back({ds[k] + q, DeviceEventKind::RotationStart});
      }
      ev.push_back({ds.back() + 300, DeviceEventKind::RotationEnd});
      break;
    }
  }

  // Helper waveform built around the helper-side (jittered) salients.
  double op_start = tc.silence_ms;
  double trace_end = std::max(cap.truth.t_end_device, cap.truth.t_end_helper) + 600;

  std::vector<Segment> segments;
  int gyro_axis = (m.ui == UiType::Knob) ? 1 : 0;
  if (uses_gyro(m.ui)) {
    double sign = 1.0;
    double prev_edge = op_start;
    for (std::size_t k = 0; k < hs.size(); ++k) {
      double q = hold_half_ms(hs, k, tc.lead_ms);
      double amp = tc.rot_amp * (0.8 + 0.4 * rng.unit());
      segments.push_back({prev_edge, hs[k] - q, sign * amp});
      prev_edge = hs[k] + q;
      sign = -sign;
    }
    segments.push_back({prev_edge, prev_edge + 250, sign * tc.rot_amp});
  }

  double dt = 1000.0 / tc.rate_hz;
  std::size_t nsamples = static_cast<std::size_t>(trace_end / dt) + 1;
  cap.helper_trace.rate_hz = tc.rate_hz;
  cap.helper_trace.samples.reserve(nsamples);
  std::size_t seg_lo = 0;
  for (std::size_t i = 0; i < nsamples; ++i) {
    ImuSample s;
    s.t_ms = static_cast<double>(i) * dt;
    for (int a = 0; a < 3; ++a) {
      s.accel[static_cast<std::size_t>(a)] = rng.normal(0, tc.noise_sigma);
      s.gyro[static_cast<std::size_t>(a)] = rng.normal(0, tc.noise_sigma);
    }
    if (m.ui == UiType::Button) {
      for (double c : hs) {
        if (std::fabs(s.t_ms - c) <= 0.5 * tc.pulse_width_ms)
          s.accel[2] += tc.pulse_amp * std::cos(3.14159265358979 * (s.t_ms - c) / tc.pulse_width_ms);
      }
    } else {
      while (seg_lo < segments.size() && segments[seg_lo].b < s.t_ms) ++seg_lo;
      for (std::size_t j = seg_lo; j < segments.size() && segments[j].a < s.t_ms; ++j)
        s.gyro[static_cast<std::size_t>(gyro_axis)] += segment_value(segments[j], s.t_ms, tc.ramp_ms);
    }
    cap.helper_trace.samples.push_back(s);
  }
  return cap;
}

}  // namespace pairlab
