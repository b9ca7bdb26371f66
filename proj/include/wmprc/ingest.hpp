#pragma once

#include <string>
#include <vector>

#include "wmprc/types.hpp"

namespace wmprc {

// A loaded qualification dataset: validated matches sorted by match number,
// the derived roster, and provenance.
struct EventDataset {
  std::string event_id;
  std::vector<MatchRecord> matches;
  RobotRoster roster;
  std::vector<std::string> exclusions_applied;
  std::string source;  // csv | api | cache

  int match_count() const { return static_cast<int>(matches.size()); }
  int robot_count() const { return roster.size(); }
};

// Canonical CSV schema (UTF-8, comma separated, header required):
//   match_id,red1,red2,red3,blue1,blue2,blue3,red_score,blue_score
extern const char* kCsvHeader;

// Parses and validates a canonical CSV; `exclusions` are match ids dropped
// after parsing. Malformed rows raise IngestError with the line number;
// an empty post-exclusion dataset is an error.
EventDataset read_matches_csv(const std::string& path,
                              const std::vector<std::string>& exclusions = {});

// Canonical emission; read_matches_csv(write_matches_csv(ds)) round-trips
// byte-identically for canonical files.
std::string matches_to_csv(const std::vector<MatchRecord>& matches);
void write_matches_csv(const std::string& path, const EventDataset& dataset);

// Converts a foreign CSV layout to the canonical schema. Column names are
// matched case-insensitively against common variants (red1/r1/red_1, ...);
// `overrides` entries of the form canonical=source force a mapping. When the
// source has no match-id column, ids qm1, qm2, ... are assigned in row order.
std::string import_matches_csv(
    const std::string& path,
    const std::vector<std::pair<std::string, std::string>>& overrides = {});

// Shared post-processing for every source: validate, sort by match number,
// reject duplicates, apply exclusions, derive the roster.
EventDataset finalize_dataset(std::string event_id,
                              std::vector<MatchRecord> matches,
                              const std::vector<std::string>& exclusions,
                              std::string source);

}  // namespace wmprc
