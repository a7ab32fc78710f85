#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "pairlab/sensing.hpp"
#include "pairlab/synthgen.hpp"

using namespace pairlab;

namespace {

double mean_abs_diff(const std::vector<int>& a, const std::vector<int>& b) {
  REQUIRE(a.size() == b.size());
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s / static_cast<double>(a.size());
}

std::vector<double> sensed_salients(const SyntheticCapture& cap, UiType ui) {
  SensorTrace trimmed = trim_big_silence(cap.helper_trace, ui);
  return extract_helper_salients(trimmed, ui);
}

void check_capture_roundtrip(UiType ui, std::uint64_t seed, double device_tol) {
  UserModel m = UserModel::for_ui(ui);
  EvidencePolicy policy = EvidencePolicy::for_ui(ui);
  TraceConfig tc = TraceConfig::for_ui(ui);
  SyntheticCapture cap = gen_capture(m, policy, tc, seed);

  std::vector<double> dev = extract_device_salients(cap.device_events);
  REQUIRE(dev.size() == cap.truth.device_salients.size());
  for (std::size_t i = 0; i < dev.size(); ++i)
    CHECK(std::fabs(dev[i] - cap.truth.device_salients[i]) <= device_tol);

  std::vector<double> hel = sensed_salients(cap, ui);
  REQUIRE(hel.size() == cap.truth.helper_salients.size());
  double tol = 1.5 * 1000.0 / tc.rate_hz;
  for (std::size_t i = 0; i < hel.size(); ++i)
    CHECK(std::fabs(hel[i] - cap.truth.helper_salients[i]) <= tol);
}

}  // namespace

TEST_SUITE("synthgen") {

TEST_CASE("session generation is seed-deterministic") {
  UserModel m = UserModel::for_ui(UiType::Button);
  EvidencePolicy p = EvidencePolicy::for_ui(UiType::Button);
  SessionTruth a = gen_session(m, p, 42);
  SessionTruth b = gen_session(m, p, 42);
  CHECK(a.device_salients == b.device_salients);
  CHECK(a.helper_salients == b.helper_salients);
  CHECK(a.pause_positions == b.pause_positions);
  CHECK(a.device.intervals_ms == b.device.intervals_ms);

  SessionTruth c = gen_session(m, p, 43);
  CHECK(a.device_salients != c.device_salients);
}

TEST_CASE("sessions respect the evidence policy") {
  UserModel m = UserModel::for_ui(UiType::Button);
  EvidencePolicy p = EvidencePolicy::for_ui(UiType::Button);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    SessionTruth s = gen_session(m, p, seed);
    REQUIRE(s.device.intervals_ms.size() == static_cast<std::size_t>(p.required_length));
    REQUIRE(!s.pause_positions.empty());
    CHECK(s.pause_positions.size() <= 2);
    for (std::size_t i = 0; i < s.device.intervals_ms.size(); ++i) {
      bool pause = std::find(s.pause_positions.begin(), s.pause_positions.end(),
                             static_cast<int>(i)) != s.pause_positions.end();
      int v = s.device.intervals_ms[i];
      if (pause) {
        CHECK(v >= 800);
        CHECK(v <= 3000);
      } else {
        CHECK(v >= 100);
        CHECK(v <= 600);
      }
    }
    CHECK(self_check(s.device, p).ok);
    CHECK(s.t_end_device == doctest::Approx(s.device_salients.back() + 200));
    CHECK(s.t_end_helper == doctest::Approx(s.helper_salients.back() + 200));
    CHECK(std::is_sorted(s.helper_salients.begin(), s.helper_salients.end()));
    REQUIRE(s.helper_salients.size() == s.device_salients.size());
    for (std::size_t i = 0; i < s.device_salients.size(); ++i)
      CHECK(std::fabs(s.helper_salients[i] - s.device_salients[i]) <= 2 * m.jitter_ms + 1e-9);
  }
}

TEST_CASE("knob sessions carry one extra interval") {
  UserModel m = UserModel::for_ui(UiType::Knob);
  EvidencePolicy p = EvidencePolicy::for_ui(UiType::Knob);
  SessionTruth s = gen_session(m, p, 7);
  CHECK(s.device.intervals_ms.size() == 7);
  CHECK(s.device.ui == UiType::Knob);
}

TEST_CASE("helper evidence stays close to device evidence") {
  UserModel m = UserModel::for_ui(UiType::Screen);
  EvidencePolicy p = EvidencePolicy::for_ui(UiType::Screen);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    SessionTruth s = gen_session(m, p, seed);
    REQUIRE(s.helper.intervals_ms.size() == s.device.intervals_ms.size());
    for (std::size_t i = 0; i < s.device.intervals_ms.size(); ++i)
      CHECK(std::abs(s.device.intervals_ms[i] - s.helper.intervals_ms[i]) <= 21);
  }
}

TEST_CASE("negative pairs come from unrelated sessions") {
  UserModel m = UserModel::for_ui(UiType::Button);
  EvidencePolicy p = EvidencePolicy::for_ui(UiType::Button);
  auto [dev, hel] = gen_negative_pair(m, p, 11);
  REQUIRE(dev.intervals_ms.size() == hel.intervals_ms.size());
  CHECK(dev.intervals_ms != hel.intervals_ms);
  auto [dev2, hel2] = gen_negative_pair(m, p, 11);
  CHECK(dev.intervals_ms == dev2.intervals_ms);
  CHECK(hel.intervals_ms == hel2.intervals_ms);
}

TEST_CASE("trained mimics land closer than untrained ones") {
  UserModel m = UserModel::for_ui(UiType::Button);
  EvidencePolicy p = EvidencePolicy::for_ui(UiType::Button);
  MimicryConfig trained{1.0, 300, 60, 0.5};
  MimicryConfig untrained{0.0, 300, 60, 0.5};
  double err_trained = 0, err_untrained = 0;
  const int n = 60;
  for (int i = 0; i < n; ++i) {
    MimicrySample t = gen_mimicry_pair(m, trained, p, static_cast<std::uint64_t>(i));
    MimicrySample u = gen_mimicry_pair(m, untrained, p, static_cast<std::uint64_t>(i));
    REQUIRE(t.attacker.intervals_ms.size() == t.victim.device.intervals_ms.size());
    err_trained += mean_abs_diff(t.attacker.intervals_ms, t.victim.device.intervals_ms);
    err_untrained += mean_abs_diff(u.attacker.intervals_ms, u.victim.device.intervals_ms);
  }
  CHECK(err_trained / n < err_untrained / n);
  CHECK(err_trained / n < 120);
  CHECK(err_untrained / n > 150);
}

TEST_CASE("hold span grows with the interval and saturates") {
  CHECK(hold_span_ms(100) == doctest::Approx(55));
  CHECK(hold_span_ms(2000) == doctest::Approx(180));
  double prev = 0;
  for (double i = 50; i <= 3200; i += 50) {
    double h = hold_span_ms(i);
    CHECK(h >= prev);
    CHECK(h <= 180);
    prev = h;
  }
}

TEST_CASE("button captures round-trip through sensing") {
  for (std::uint64_t seed = 0; seed < 40; ++seed)
    check_capture_roundtrip(UiType::Button, seed, 1e-9);
}

TEST_CASE("knob captures round-trip through sensing") {
  for (std::uint64_t seed = 100; seed < 140; ++seed)
    check_capture_roundtrip(UiType::Knob, seed, 1e-6);
}

TEST_CASE("screen captures round-trip through sensing") {
  for (std::uint64_t seed = 200; seed < 240; ++seed)
    check_capture_roundtrip(UiType::Screen, seed, 1e-9);
}

TEST_CASE("captures are seed-deterministic") {
  UserModel m = UserModel::for_ui(UiType::Knob);
  EvidencePolicy p = EvidencePolicy::for_ui(UiType::Knob);
  TraceConfig tc = TraceConfig::for_ui(UiType::Knob);
  SyntheticCapture a = gen_capture(m, p, tc, 5);
  SyntheticCapture b = gen_capture(m, p, tc, 5);
  REQUIRE(a.helper_trace.samples.size() == b.helper_trace.samples.size());
  for (std::size_t i = 0; i < a.helper_trace.samples.size(); ++i) {
    CHECK(a.helper_trace.samples[i].t_ms == b.helper_trace.samples[i].t_ms);
    CHECK(a.helper_trace.samples[i].gyro == b.helper_trace.samples[i].gyro);
    CHECK(a.helper_trace.samples[i].accel == b.helper_trace.samples[i].accel);
  }
  REQUIRE(a.device_events.events.size() == b.device_events.events.size());
  for (std::size_t i = 0; i < a.device_events.events.size(); ++i) {
    CHECK(a.device_events.events[i].t_ms == b.device_events.events[i].t_ms);
    CHECK(a.device_events.events[i].kind == b.device_events.events[i].kind);
  }
}

}  // TEST_SUITE
