#include "pairlab/sensing.hpp"

#include <algorithm>
#include <cmath>

namespace pairlab {

const char* event_kind_name(DeviceEventKind k) {
  switch (k) {
    case DeviceEventKind::PressedDown: return "pressed_down";
    case DeviceEventKind::Released: return "released";
    case DeviceEventKind::RotationStart: return "rotation_start";
    case DeviceEventKind::RotationEnd: return "rotation_end";
    case DeviceEventKind::SwipeDirectionChange: return "swipe_direction_change";
  }
  return "unknown";
}

DeviceEventKind event_kind_from_name(std::string_view name) {
  for (DeviceEventKind k :
       {DeviceEventKind::PressedDown, DeviceEventKind::Released, DeviceEventKind::RotationStart,
        DeviceEventKind::RotationEnd, DeviceEventKind::SwipeDirectionChange})
    if (name == event_kind_name(k)) return k;
  fail(Err::Config, "unknown device event kind: " + std::string(name));
}

bool uses_gyro(UiType ui) { return ui != UiType::Button; }

namespace {

void check_monotone(const EventTrace& t) {
  for (std::size_t i = 1; i < t.events.size(); ++i)
    if (t.events[i].t_ms <= t.events[i - 1].t_ms)
      fail(Err::MalformedTrace, "event times must strictly increase");
}

std::vector<double> button_salients(const EventTrace& t) {
  std::vector<double> out;
  bool expect_down = true;
  for (const auto& e : t.events) {
    if (e.kind != DeviceEventKind::PressedDown && e.kind != DeviceEventKind::Released)
      fail(Err::MalformedTrace, "unexpected event kind in button trace");
    bool is_down = e.kind == DeviceEventKind::PressedDown;
    if (is_down != expect_down) fail(Err::MalformedTrace, "press/release alternation broken");
    if (is_down) out.push_back(e.t_ms);
    expect_down = !is_down;
  }
  return out;
}

std::vector<double> knob_salients(const EventTrace& t, const SensingConfig& cfg) {
  std::vector<double> out;
  for (const auto& e : t.events)
    if (e.kind != DeviceEventKind::RotationStart && e.kind != DeviceEventKind::RotationEnd)
      fail(Err::MalformedTrace, "unexpected event kind in knob trace");
  // A direction change shows up as RotationEnd closely followed by
  // RotationStart; distant restarts are separate operations, not salients.
  for (std::size_t i = 0; i + 1 < t.events.size(); ++i) {
    if (t.events[i].kind != DeviceEventKind::RotationEnd) continue;
    const auto& next = t.events[i + 1];
    if (next.kind != DeviceEventKind::RotationStart) continue;
    if (next.t_ms - t.events[i].t_ms > cfg.knob_max_gap_ms) continue;
    out.push_back(0.5 * (t.events[i].t_ms + next.t_ms));
  }
  return out;
}

std::vector<double> screen_salients(const EventTrace& t) {
  std::vector<double> out;
  for (const auto& e : t.events) {
    if (e.kind != DeviceEventKind::SwipeDirectionChange)
      fail(Err::MalformedTrace, "unexpected event kind in screen trace");
    out.push_back(e.t_ms);
  }
  return out;
}

}  // namespace

std::vector<double> extract_device_salients(const EventTrace& t, const SensingConfig& cfg) {
  if (t.events.empty()) fail(Err::EmptyTrace, "no device events");
  check_monotone(t);
  std::vector<double> out;
  switch (t.ui) {
    case UiType::Button: out = button_salients(t); break;
    case UiType::Knob: out = knob_salients(t, cfg); break;
    case UiType::Screen: out = screen_salients(t); break;
  }
  if (out.size() < 2) fail(Err::TooFewEvents, "fewer than two salient points");
  return out;
}

namespace {

double axis_value(const ImuSample& s, UiType ui, int axis) {
  return uses_gyro(ui) ? s.gyro[static_cast<std::size_t>(axis)]
                       : s.accel[static_cast<std::size_t>(axis)];
}

std::vector<double> axis_series(const SensorTrace& t, UiType ui, int axis) {
  std::vector<double> v;
  v.reserve(t.samples.size());
  for (const auto& s : t.samples) v.push_back(axis_value(s, ui, axis));
  return v;
}

}  // namespace

int dominant_axis(const SensorTrace& t, UiType ui) {
  if (t.samples.empty()) fail(Err::EmptyTrace, "no samples");
  double best = -1;
  int best_axis = -1;
  for (int axis = 0; axis < 3; ++axis) {
    double lo = axis_value(t.samples[0], ui, axis), hi = lo;
    for (const auto& s : t.samples) {
      double v = axis_value(s, ui, axis);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (hi - lo > best) {
      best = hi - lo;
      best_axis = axis;
    }
  }
  if (best <= 0) fail(Err::DegenerateTrace, "flat signal on every axis");
  return best_axis;
}

namespace {

// Trailing moving variance over cfg.silence_window_ms, one value per sample.
std::vector<double> moving_variance(const std::vector<double>& v, const std::vector<double>& t,
                                    double window_ms) {
  std::size_t n = v.size();
  std::vector<double> out(n, 0.0);
  std::vector<double> sum(n + 1, 0.0), sq(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    sum[i + 1] = sum[i] + v[i];
    sq[i + 1] = sq[i] + v[i] * v[i];
  }
  std::size_t lo = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (t[i] - t[lo] > window_ms) ++lo;
    std::size_t cnt = i - lo + 1;
    double mean = (sum[i + 1] - sum[lo]) / static_cast<double>(cnt);
    out[i] = (sq[i + 1] - sq[lo]) / static_cast<double>(cnt) - mean * mean;
    if (out[i] < 0) out[i] = 0;
  }
  return out;
}

}  // namespace

SensorTrace trim_big_silence(const SensorTrace& t, UiType ui, const SensingConfig& cfg) {
  if (t.samples.empty()) fail(Err::EmptyTrace, "no samples");
  int axis = dominant_axis(t, ui);
  std::vector<double> v = axis_series(t, ui, axis);
  std::vector<double> times;
  times.reserve(t.samples.size());
  for (const auto& s : t.samples) times.push_back(s.t_ms);

  std::vector<double> var = moving_variance(v, times, cfg.silence_window_ms);
  double peak = *std::max_element(var.begin(), var.end());
  if (peak <= 0) fail(Err::DegenerateTrace, "no variance anywhere in trace");
  double quiet = cfg.silence_var_frac * peak;

  std::size_t first_loud = 0;
  while (first_loud < var.size() && var[first_loud] < quiet) ++first_loud;
  if (first_loud == var.size()) fail(Err::DegenerateTrace, "no activity after leading window");
  double quiet_span = times[first_loud] - times.front();
  if (quiet_span < cfg.silence_min_ms)
    fail(Err::NoSilenceFound, "leading still period shorter than required");

  // Back off half a window so the onset that raised the variance survives.
  double cut = std::max(times.front(), times[first_loud] - 0.5 * cfg.silence_window_ms);
  SensorTrace out;
  out.rate_hz = t.rate_hz;
  for (const auto& s : t.samples)
    if (s.t_ms >= cut) out.samples.push_back(s);
  return out;
}

namespace {

std::vector<double> button_peaks(const std::vector<double>& v, const std::vector<double>& times,
                                 const SensingConfig& cfg) {
  std::size_t n = v.size();
  double mean = 0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(n);
  double var = 0;
  for (double x : v) var += (x - mean) * (x - mean);
  var /= static_cast<double>(n);
  double thr = mean + cfg.button_peak_sigmas * std::sqrt(var);

  std::vector<double> out;
  std::vector<double> amps;
  for (std::size_t i = 0; i < n; ++i) {
    if (v[i] <= thr) continue;
    if (i > 0 && v[i] < v[i - 1]) continue;
    if (i + 1 < n && v[i] < v[i + 1]) continue;
    if (!out.empty() && times[i] - out.back() < cfg.button_min_sep_ms) {
      if (v[i] > amps.back()) {  // keep the taller of two crowding peaks
        out.back() = times[i];
        amps.back() = v[i];
      }
      continue;
    }
    out.push_back(times[i]);
    amps.push_back(v[i]);
  }
  return out;
}

std::vector<double> gyro_crossings(const std::vector<double>& v, const std::vector<double>& times,
                                   const SensingConfig& cfg) {
  double peak = 0;
  for (double x : v) peak = std::max(peak, std::fabs(x));
  double thr = cfg.zc_amp_frac * peak;

  // Sign transitions between consecutive significant samples, timed at the
  // midpoint of the quiet gap between them. Sub-threshold wiggle inside a
  // pause never reaches significance, so it cannot mint crossings; the
  // +-zc_window_ms amplitude validation bounds how far apart the flanking
  // significant samples may sit.
  std::vector<double> out;
  double prev_t = 0;
  int prev_sign = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (std::fabs(v[i]) <= thr) continue;
    int sign = v[i] > 0 ? 1 : -1;
    if (prev_sign != 0 && sign != prev_sign && times[i] - prev_t <= 2 * cfg.zc_window_ms)
      out.push_back(0.5 * (prev_t + times[i]));
    prev_sign = sign;
    prev_t = times[i];
  }
  return out;
}

}  // namespace

std::vector<double> extract_helper_salients(const SensorTrace& t, UiType ui,
                                            const SensingConfig& cfg) {
  if (t.samples.empty()) fail(Err::EmptyTrace, "no samples");
  int axis = dominant_axis(t, ui);
  std::vector<double> v = axis_series(t, ui, axis);
  std::vector<double> times;
  times.reserve(t.samples.size());
  for (const auto& s : t.samples) times.push_back(s.t_ms);

  std::vector<double> out = (ui == UiType::Button) ? button_peaks(v, times, cfg)
                                                   : gyro_crossings(v, times, cfg);
  if (out.size() < 2) fail(Err::TooFewEvents, "fewer than two salient points");
  return out;
}

}  // namespace pairlab
