#include "wmprc/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace wmprc {

const char* kCsvHeader =
    "match_id,red1,red2,red3,blue1,blue2,blue3,red_score,blue_score";

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(field);
      field.clear();
    } else if (ch != '\r') {
      field += ch;
    }
  }
  fields.push_back(field);
  return fields;
}

int parse_score(const std::string& text, int line_no) {
  try {
    size_t used = 0;
    const int value = std::stoi(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw IngestError("line " + std::to_string(line_no) +
                      ": bad score field '" + text + "'");
  }
}

std::string lower(std::string s) {
  for (char& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return s;
}

}  // namespace

EventDataset finalize_dataset(std::string event_id,
                              std::vector<MatchRecord> matches,
                              const std::vector<std::string>& exclusions,
                              std::string source) {
  std::vector<std::string> applied;
  if (!exclusions.empty()) {
    std::set<std::string> drop(exclusions.begin(), exclusions.end());
    std::vector<MatchRecord> kept;
    for (auto& m : matches) {
      if (drop.count(m.match_id)) {
        applied.push_back(m.match_id);
      } else {
        kept.push_back(std::move(m));
      }
    }
    matches = std::move(kept);
  }
  if (matches.empty()) {
    throw IngestError("dataset '" + event_id + "' is empty after exclusions");
  }
  std::set<std::string> ids;
  for (const auto& m : matches) {
    validate_match(m);
    if (!ids.insert(m.match_id).second) {
      throw IngestError("duplicate match id '" + m.match_id + "'");
    }
  }
  std::sort(matches.begin(), matches.end(),
            [](const MatchRecord& a, const MatchRecord& b) {
              return natural_less(a.match_id, b.match_id);
            });
  RobotRoster roster = RobotRoster::from_matches(matches);
  return EventDataset{std::move(event_id), std::move(matches),
                      std::move(roster), std::move(applied),
                      std::move(source)};
}

EventDataset read_matches_csv(const std::string& path,
                              const std::vector<std::string>& exclusions) {
  std::ifstream in(path);
  if (!in) throw IngestError("cannot open match file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw IngestError("empty match file: " + path);
  {
    auto header = split_csv_line(line);
    auto expected = split_csv_line(kCsvHeader);
    if (header != expected) {
      throw IngestError("unexpected CSV header in " + path + " (want '" +
                        kCsvHeader + "')");
    }
  }
  std::vector<MatchRecord> matches;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    auto fields = split_csv_line(line);
    if (fields.size() != 9) {
      throw IngestError("line " + std::to_string(line_no) + ": expected 9 fields, got " +
                        std::to_string(fields.size()));
    }
    MatchRecord m;
    m.match_id = fields[0];
    for (int j = 0; j < 3; ++j) {
      m.red[j] = fields[1 + j];
      m.blue[j] = fields[4 + j];
    }
    m.red_score = parse_score(fields[7], line_no);
    m.blue_score = parse_score(fields[8], line_no);
    for (const auto& f : {fields[0], fields[1], fields[2], fields[3],
                          fields[4], fields[5], fields[6]}) {
      if (f.empty()) {
        throw IngestError("line " + std::to_string(line_no) + ": empty field");
      }
    }
    matches.push_back(std::move(m));
  }

  // Event id from the file stem.
  std::string stem = path;
  if (auto slash = stem.find_last_of("/\\"); slash != std::string::npos) {
    stem = stem.substr(slash + 1);
  }
  if (auto dot = stem.find_last_of('.'); dot != std::string::npos) {
    stem = stem.substr(0, dot);
  }
  return finalize_dataset(stem, std::move(matches), exclusions, "csv");
}

std::string matches_to_csv(const std::vector<MatchRecord>& matches) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const auto& m : matches) {
    out << m.match_id;
    for (const auto& id : m.red) out << ',' << id;
    for (const auto& id : m.blue) out << ',' << id;
    out << ',' << m.red_score << ',' << m.blue_score << '\n';
  }
  return out.str();
}

void write_matches_csv(const std::string& path, const EventDataset& dataset) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IngestError("cannot write match file: " + path);
  out << matches_to_csv(dataset.matches);
}

std::string import_matches_csv(
    const std::string& path,
    const std::vector<std::pair<std::string, std::string>>& overrides) {
  std::ifstream in(path);
  if (!in) throw IngestError("cannot open import file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw IngestError("empty import file: " + path);
  auto header = split_csv_line(line);
  std::vector<std::string> lowered;
  for (const auto& h : header) lowered.push_back(lower(h));

  auto find_column = [&](std::initializer_list<const char*> names) {
    for (const char* name : names) {
      auto it = std::find(lowered.begin(), lowered.end(), name);
      if (it != lowered.end()) return static_cast<int>(it - lowered.begin());
    }
    return -1;
  };

  const char* canonical[9] = {"match_id", "red1", "red2",       "red3",
                              "blue1",    "blue2", "blue3",
                              "red_score", "blue_score"};
  int cols[9];
  cols[0] = find_column({"match_id", "match", "id", "qm", "match_number"});
  cols[1] = find_column({"red1", "r1", "red_1", "redteam1", "red.1"});
  cols[2] = find_column({"red2", "r2", "red_2", "redteam2", "red.2"});
  cols[3] = find_column({"red3", "r3", "red_3", "redteam3", "red.3"});
  cols[4] = find_column({"blue1", "b1", "blue_1", "blueteam1", "blue.1"});
  cols[5] = find_column({"blue2", "b2", "blue_2", "blueteam2", "blue.2"});
  cols[6] = find_column({"blue3", "b3", "blue_3", "blueteam3", "blue.3"});
  cols[7] = find_column({"red_score", "redscore", "rs", "score_red", "redfinal"});
  cols[8] = find_column({"blue_score", "bluescore", "bs", "score_blue", "bluefinal"});

  for (const auto& [canon, source] : overrides) {
    auto it = std::find(lowered.begin(), lowered.end(), lower(source));
    if (it == lowered.end()) {
      throw IngestError("import override names unknown column '" + source + "'");
    }
    bool known = false;
    for (int j = 0; j < 9; ++j) {
      if (canon == canonical[j]) {
        cols[j] = static_cast<int>(it - lowered.begin());
        known = true;
      }
    }
    if (!known) throw IngestError("import override for unknown field '" + canon + "'");
  }
  for (int j = 1; j < 9; ++j) {
    if (cols[j] < 0) {
      throw IngestError(std::string("cannot locate column for '") +
                        canonical[j] + "' in " + path);
    }
  }

  std::vector<MatchRecord> matches;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    auto fields = split_csv_line(line);
    auto field = [&](int col) -> std::string {
      if (col < 0 || col >= static_cast<int>(fields.size())) {
        throw IngestError("line " + std::to_string(line_no) + ": missing field");
      }
      return fields[col];
    };
    MatchRecord m;
    m.match_id = cols[0] >= 0 ? field(cols[0])
                              : "qm" + std::to_string(line_no - 1);
    if (!m.match_id.empty() &&
        std::isdigit(static_cast<unsigned char>(m.match_id[0]))) {
      m.match_id = "qm" + m.match_id;  // bare match numbers
    }
    for (int j = 0; j < 3; ++j) {
      m.red[j] = field(cols[1 + j]);
      m.blue[j] = field(cols[4 + j]);
    }
    m.red_score = parse_score(field(cols[7]), line_no);
    m.blue_score = parse_score(field(cols[8]), line_no);
    matches.push_back(std::move(m));
  }
  EventDataset ds = finalize_dataset("import", std::move(matches), {}, "csv");
  return matches_to_csv(ds.matches);
}

}  // namespace wmprc
