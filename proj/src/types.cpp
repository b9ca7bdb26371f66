#include "wmprc/types.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace wmprc {

void validate_match(const MatchRecord& match) {
  std::set<std::string> seen;
  for (const auto& id : match.red) seen.insert(id);
  for (const auto& id : match.blue) seen.insert(id);
  if (seen.size() != 6) {
    throw ValidationError("duplicate robot within match '" + match.match_id + "'");
  }
  if (match.red_score < 0 || match.blue_score < 0) {
    throw ValidationError("negative score in match '" + match.match_id + "'");
  }
}

RobotRoster::RobotRoster(std::vector<std::string> ids) : ids_(std::move(ids)) {
  for (int i = 0; i < static_cast<int>(ids_.size()); ++i) {
    if (!index_.emplace(ids_[i], i).second) {
      throw ValidationError("duplicate robot identifier in roster: " + ids_[i]);
    }
  }
}

RobotRoster RobotRoster::from_matches(const std::vector<MatchRecord>& matches) {
  std::set<std::string> ids;
  for (const auto& m : matches) {
    for (const auto& id : m.red) ids.insert(id);
    for (const auto& id : m.blue) ids.insert(id);
  }
  std::vector<std::string> ordered(ids.begin(), ids.end());
  std::sort(ordered.begin(), ordered.end(), natural_less);
  return RobotRoster(std::move(ordered));
}

int RobotRoster::index_of(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) {
    throw IngestError("unknown robot identifier: " + id);
  }
  return it->second;
}

bool natural_less(const std::string& a, const std::string& b) {
  auto split = [](const std::string& s) {
    size_t pos = s.size();
    while (pos > 0 && std::isdigit(static_cast<unsigned char>(s[pos - 1]))) --pos;
    long long num = -1;
    if (pos < s.size() && s.size() - pos <= 18) num = std::stoll(s.substr(pos));
    return std::pair<std::string, long long>(s.substr(0, pos), num);
  };
  auto [pa, na] = split(a);
  auto [pb, nb] = split(b);
  if (pa != pb) return pa < pb;
  if (na != nb) return na < nb;
  return a < b;
}

}  // namespace wmprc
