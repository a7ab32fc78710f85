#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pairlab/correlation.hpp"
#include "pairlab/sensing.hpp"
#include "pairlab/simnet.hpp"
#include "pairlab/synthgen.hpp"

namespace pairlab {

using Json = nlohmann::json;

Json evidence_json(const Evidence& ev);
Evidence evidence_from_json(const Json& j);

Json trace_json(const SensorTrace& t);
SensorTrace trace_from_json(const Json& j);

Json events_json(const EventTrace& t);
EventTrace events_from_json(const Json& j);

Json capture_json(const SyntheticCapture& c);

Json transcript_json(const SessionResult& r);
Json pair_run_json(const PairRun& r);  // keys are reported as digests, never raw

Json classifier_json(const Classifier& c);
Classifier classifier_from_json(const Json& j);

// One labelled evidence pair of a generated dataset.
struct DatasetRecord {
  std::string kind;  // genuine | impostor | mimicry
  double skill = 0;  // mimicry only
  Evidence device, helper;
  int label = 0;  // 1 when both sides watched the same operation
};

Json record_json(const DatasetRecord& r);
DatasetRecord record_from_json(const Json& j);

std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

std::vector<Json> read_jsonl(const std::string& path);
void write_jsonl(const std::string& path, const std::vector<Json>& rows);

// Short stable digest of a canonicalized configuration object; stamped into
// every generated artifact so outputs can be traced to their settings.
std::string config_hash(const Json& j);

}  // namespace pairlab
