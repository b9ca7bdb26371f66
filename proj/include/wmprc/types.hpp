#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace wmprc {

// Error hierarchy. Everything user-facing derives from Error so the CLI can
// map failures to machine-readable JSON with a stable "type" field.
class Error : public std::runtime_error {
 public:
  Error(std::string type, const std::string& msg)
      : std::runtime_error(msg), type_(std::move(type)) {}
  const std::string& type() const { return type_; }

 private:
  std::string type_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& msg) : Error("validation", msg) {}
};

class IngestError : public Error {
 public:
  explicit IngestError(const std::string& msg) : Error("ingest", msg) {}
};

class TransportError : public Error {
 public:
  explicit TransportError(const std::string& msg) : Error("transport", msg) {}
};

class CredentialError : public Error {
 public:
  explicit CredentialError(const std::string& msg) : Error("credential", msg) {}
};

class SelectionError : public Error {
 public:
  explicit SelectionError(const std::string& msg) : Error("selection", msg) {}
};

// One qualification match: three robots per alliance and final scores.
struct MatchRecord {
  std::string match_id;
  std::array<std::string, 3> red;
  std::array<std::string, 3> blue;
  int red_score = 0;
  int blue_score = 0;

  int score_diff() const { return red_score - blue_score; }
};

// Validates the per-match invariants (six distinct robots, non-negative
// scores). Throws ValidationError naming the match on violation.
void validate_match(const MatchRecord& match);

// Ordered list of K distinct robot identifiers with an id -> column lookup.
// Column indices are 0-based internally; serialization uses 1-based labels.
class RobotRoster {
 public:
  RobotRoster() = default;
  explicit RobotRoster(std::vector<std::string> ids);

  // Roster derived from the robots appearing in `matches`, ordered by
  // (alphabetic prefix, numeric suffix) so "frc254" sorts before "frc1323".
  static RobotRoster from_matches(const std::vector<MatchRecord>& matches);

  int size() const { return static_cast<int>(ids_.size()); }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::string& id(int index) const { return ids_.at(index); }

  bool contains(const std::string& id) const { return index_.count(id) > 0; }
  // Throws IngestError naming the identifier when absent.
  int index_of(const std::string& id) const;

  bool operator==(const RobotRoster& other) const { return ids_ == other.ids_; }

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, int> index_;
};

// Natural ordering used for rosters and match ids: split a token into an
// alphabetic prefix and a trailing integer ("qm12" -> ("qm", 12)).
bool natural_less(const std::string& a, const std::string& b);

}  // namespace wmprc
