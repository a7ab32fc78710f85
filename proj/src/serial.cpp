#include "pairlab/serial.hpp"

#include <fstream>
#include <sstream>

#include "pairlab/crypto.hpp"

namespace pairlab {

Json evidence_json(const Evidence& ev) {
  return Json{{"ui", ui_name(ev.ui)}, {"intervals_ms", ev.intervals_ms}};
}

Evidence evidence_from_json(const Json& j) {
  Evidence ev;
  ev.ui = ui_from_name(j.at("ui").get<std::string>());
  ev.intervals_ms = j.at("intervals_ms").get<std::vector<int>>();
  return ev;
}

Json trace_json(const SensorTrace& t) {
  Json samples = Json::array();
  for (const ImuSample& s : t.samples)
    samples.push_back(Json{{"t_ms", s.t_ms},
                           {"accel", {s.accel[0], s.accel[1], s.accel[2]}},
                           {"gyro", {s.gyro[0], s.gyro[1], s.gyro[2]}}});
  return Json{{"rate_hz", t.rate_hz}, {"samples", std::move(samples)}};
}

SensorTrace trace_from_json(const Json& j) {
  SensorTrace t;
  t.rate_hz = j.at("rate_hz").get<double>();
  for (const Json& s : j.at("samples")) {
    ImuSample smp;
    smp.t_ms = s.at("t_ms").get<double>();
    for (int i = 0; i < 3; ++i) {
      smp.accel[static_cast<std::size_t>(i)] = s.at("accel").at(i).get<double>();
      smp.gyro[static_cast<std::size_t>(i)] = s.at("gyro").at(i).get<double>();
    }
    t.samples.push_back(smp);
  }
  return t;
}

Json events_json(const EventTrace& t) {
  Json events = Json::array();
  for (const DeviceEvent& e : t.events)
    events.push_back(Json{{"t_ms", e.t_ms}, {"kind", event_kind_name(e.kind)}});
  return Json{{"ui", ui_name(t.ui)}, {"events", std::move(events)}};
}

EventTrace events_from_json(const Json& j) {
  EventTrace t;
  t.ui = ui_from_name(j.at("ui").get<std::string>());
  for (const Json& e : j.at("events"))
    t.events.push_back(
        {e.at("t_ms").get<double>(), event_kind_from_name(e.at("kind").get<std::string>())});
  return t;
}

Json capture_json(const SyntheticCapture& c) {
  return Json{{"truth",
               {{"device_salients_ms", c.truth.device_salients},
                {"helper_salients_ms", c.truth.helper_salients},
                {"pause_positions", c.truth.pause_positions},
                {"device_evidence", evidence_json(c.truth.device)},
                {"helper_evidence", evidence_json(c.truth.helper)},
                {"t_end_device_ms", c.truth.t_end_device},
                {"t_end_helper_ms", c.truth.t_end_helper}}},
              {"device_events", events_json(c.device_events)},
              {"helper_trace", trace_json(c.helper_trace)}};
}

namespace {

std::string key_digest(const Bytes& key) {
  if (key.empty()) return "";
  return to_hex(sha256(key)).substr(0, 16);
}

}  // namespace

Json transcript_json(const SessionResult& r) {
  Json msgs = Json::array();
  for (const TranscriptEntry& e : r.transcript) {
    Json m{{"sent_ms", e.sent_ms},  {"delivered_ms", e.delivered_ms}, {"from", e.from},
           {"to", e.to},            {"kind", e.kind},                 {"payload_hex", to_hex(e.payload)}};
    if (!e.note.empty()) m["note"] = e.note;
    msgs.push_back(std::move(m));
  }
  Json outcomes = Json::object();
  for (const auto& [name, o] : r.outcomes) outcomes[name] = outcome_name(o);
  Json keys = Json::object();
  for (const auto& [name, k] : r.keys)
    if (!k.empty()) keys[name] = key_digest(k);
  return Json{{"outcomes", std::move(outcomes)},
              {"key_digests", std::move(keys)},
              {"end_ms", r.end_ms},
              {"messages", std::move(msgs)}};
}

Json pair_run_json(const PairRun& r) {
  return Json{{"device", outcome_name(r.device)},
              {"helper", outcome_name(r.helper)},
              {"paired", r.paired},
              {"key_digest", key_digest(r.key_device)},
              {"session", transcript_json(r.session)}};
}

Json classifier_json(const Classifier& c) {
  if (const auto* t = std::get_if<ThresholdBaseline>(&c))
    return Json{{"kind", "threshold"}, {"max_avg_ms", t->max_avg_ms}};
  const LinearModel& m = std::get<LinearModel>(c);
  return Json{{"kind", "linear"},
              {"weights", m.weights},
              {"bias", m.bias},
              {"tau", m.tau},
              {"standardization", Json{{"mean", m.feat_mean}, {"std", m.feat_std}}}};
}

Classifier classifier_from_json(const Json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "threshold") {
    ThresholdBaseline t;
    t.max_avg_ms = j.at("max_avg_ms").get<double>();
    return t;
  }
  if (kind != "linear") fail(Err::Config, "unknown classifier kind: " + kind);
  LinearModel m;
  auto w = j.at("weights").get<std::vector<double>>();
  const Json& st = j.at("standardization");
  auto mean = st.at("mean").get<std::vector<double>>();
  auto std_ = st.at("std").get<std::vector<double>>();
  constexpr std::size_t dim = FeatureVector::kDim;
  if (w.size() != dim || mean.size() != dim || std_.size() != dim)
    fail(Err::Config, "classifier parameter vectors must have 7 entries");
  std::copy(w.begin(), w.end(), m.weights.begin());
  std::copy(mean.begin(), mean.end(), m.feat_mean.begin());
  std::copy(std_.begin(), std_.end(), m.feat_std.begin());
  m.bias = j.at("bias").get<double>();
  m.tau = j.at("tau").get<double>();
  return m;
}

Json record_json(const DatasetRecord& r) {
  Json j{{"kind", r.kind},
         {"device", evidence_json(r.device)},
         {"helper", evidence_json(r.helper)},
         {"label", r.label}};
  if (r.kind == "mimicry") j["skill"] = r.skill;
  return j;
}

DatasetRecord record_from_json(const Json& j) {
  DatasetRecord r;
  r.kind = j.at("kind").get<std::string>();
  r.device = evidence_from_json(j.at("device"));
  r.helper = evidence_from_json(j.at("helper"));
  r.label = j.at("label").get<int>();
  r.skill = j.value("skill", 0.0);
  return r;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Err::Io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Err::Io, "cannot write " + path);
  out << text;
  if (!out) fail(Err::Io, "short write to " + path);
}

Json read_json_file(const std::string& path) {
  try {
    return Json::parse(read_text(path));
  } catch (const Json::parse_error& e) {
    fail(Err::Io, path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  write_text(path, j.dump(2) + "\n");
}

std::vector<Json> read_jsonl(const std::string& path) {
  std::istringstream in(read_text(path));
  std::vector<Json> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      rows.push_back(Json::parse(line));
    } catch (const Json::parse_error& e) {
      fail(Err::Io, path + " line " + std::to_string(rows.size() + 1) + ": " + e.what());
    }
  }
  return rows;
}

void write_jsonl(const std::string& path, const std::vector<Json>& rows) {
  std::string out;
  for (const Json& r : rows) {
    out += r.dump();
    out += '\n';
  }
  write_text(path, out);
}

std::string config_hash(const Json& j) {
  return to_hex(sha256(str_bytes(j.dump()))).substr(0, 16);
}

}  // namespace pairlab
