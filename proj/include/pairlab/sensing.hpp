#pragma once

#include <array>
#include <vector>

#include "pairlab/evidence.hpp"

namespace pairlab {

struct ImuSample {
  double t_ms = 0;
  std::array<double, 3> accel{};  // m/s^2
  std::array<double, 3> gyro{};   // rad/s
};

struct SensorTrace {
  std::vector<ImuSample> samples;
  double rate_hz = 80;
};

enum class DeviceEventKind { PressedDown, Released, RotationStart, RotationEnd, SwipeDirectionChange };

const char* event_kind_name(DeviceEventKind k);
DeviceEventKind event_kind_from_name(std::string_view name);

struct DeviceEvent {
  double t_ms = 0;
  DeviceEventKind kind = DeviceEventKind::PressedDown;
};

struct EventTrace {
  std::vector<DeviceEvent> events;
  UiType ui = UiType::Button;
};

struct SensingConfig {
  double silence_window_ms = 200;   // moving-variance window
  double silence_min_ms = 1500;     // leading quiet run needed before trimming
  double silence_var_frac = 0.05;   // quiet threshold, fraction of peak variance
  double button_peak_sigmas = 3.0;  // peak gate: mean + k*stddev
  double button_min_sep_ms = 60;
  double knob_max_gap_ms = 1000;    // rotation-end to next-start gap for one salient
  double zc_window_ms = 150;        // crossing must see amplitude this close on both sides
  double zc_amp_frac = 0.20;        // significance gate, fraction of trace peak
};

// Knob/screen ride on the gyroscope, buttons on the accelerometer.
bool uses_gyro(UiType ui);

// Timestamps the operation's salient points from the device's own events.
std::vector<double> extract_device_salients(const EventTrace& t, const SensingConfig& cfg = {});

// Axis (0..2) of the relevant sensor with the largest peak-to-peak swing.
int dominant_axis(const SensorTrace& t, UiType ui);

// Drops the leading still period preceding the operation; the operation start
// is located by the first window whose moving variance leaves the quiet band.
SensorTrace trim_big_silence(const SensorTrace& t, UiType ui, const SensingConfig& cfg = {});

// Salient points from a helper-side inertial trace (already trimmed).
std::vector<double> extract_helper_salients(const SensorTrace& t, UiType ui,
                                            const SensingConfig& cfg = {});

}  // namespace pairlab
