#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wmprc/clustering.hpp"
#include "wmprc/selection.hpp"

namespace wmprc {

// FNV-1a 64-bit fingerprint of input bytes; embedded in emitted files for
// reproducibility bookkeeping (not a cryptographic digest).
uint64_t fnv1a64(const std::string& bytes);
std::string digest_string(const std::string& bytes);
std::string digest_file(const std::string& path);

// A fitted model plus the roster it was fitted on, as stored on disk.
struct StoredModel {
  RobotRoster roster;
  ClusteredModel model;
  std::string event_id;
  std::string method;
  std::string criterion;
  CriterionRow row;
};

// Versioned JSON serialization (schema_version / tool_version embedded).
// Labels serialize 1-based.
std::string model_to_json(const StoredModel& stored,
                          const std::string& input_digest);
StoredModel model_from_json(const std::string& json_text);
StoredModel load_model(const std::string& path);

// Criterion-curve CSV: one row per cluster count with all six estimated
// criteria plus PCP and the feasibility flag.
std::string criterion_curve_csv(const std::vector<CriterionRow>& table);

// Chain trace serialization, for the trace-diff workflow.
std::string trace_to_json(const ChainTrace& trace);
ChainTrace trace_from_json(const std::string& json_text);

}  // namespace wmprc
