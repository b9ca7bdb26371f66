#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "httplib.h"

#include "wmprc/tba_client.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace wmprc {

namespace {

namespace fs = std::filesystem;

std::string cache_path(const std::string& cache_dir,
                       const std::string& event_key) {
  return (fs::path(cache_dir) / ("tba_" + event_key + "_matches.json")).string();
}

bool read_file(const std::string& path, std::string* out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buf;
  buf << in.rdbuf();
  *out = buf.str();
  return true;
}

// Write-to-temp then atomic rename; a reader never sees a partial file.
void write_file_atomic(const std::string& path, const std::string& body) {
  fs::create_directories(fs::path(path).parent_path());
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw TransportError("cannot write cache file: " + tmp);
    out << body;
  }
  fs::rename(tmp, path);
}

}  // namespace

std::vector<MatchRecord> parse_tba_matches(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw IngestError(std::string("match response is not valid JSON: ") +
                      e.what());
  }
  if (!doc.is_array()) {
    throw IngestError("match response: expected a JSON array");
  }
  std::vector<MatchRecord> matches;
  for (const auto& entry : doc) {
    try {
      if (entry.at("comp_level").get<std::string>() != "qm") continue;
      MatchRecord m;
      m.match_id = "qm" + std::to_string(entry.at("match_number").get<int>());
      const auto& alliances = entry.at("alliances");
      const auto& red = alliances.at("red");
      const auto& blue = alliances.at("blue");
      const auto& red_teams = red.at("team_keys");
      const auto& blue_teams = blue.at("team_keys");
      if (red_teams.size() != 3 || blue_teams.size() != 3) {
        throw IngestError("match " + m.match_id +
                          ": expected three team_keys per alliance");
      }
      for (int j = 0; j < 3; ++j) {
        m.red[j] = red_teams[j].get<std::string>();
        m.blue[j] = blue_teams[j].get<std::string>();
      }
      m.red_score = red.at("score").get<int>();
      m.blue_score = blue.at("score").get<int>();
      matches.push_back(std::move(m));
    } catch (const nlohmann::json::exception& e) {
      throw IngestError(std::string("match response field error: ") + e.what());
    }
  }
  return matches;
}

EventDataset fetch_event_matches(const std::string& event_key,
                                 const std::string& api_key,
                                 const std::string& cache_dir,
                                 const std::vector<std::string>& exclusions) {
  if (api_key.empty()) {
    throw CredentialError("no API key: set TBA_AUTH_KEY or pass --api-key");
  }
  const std::string cached = cache_path(cache_dir, event_key);
  std::string body;
  std::string source = "cache";
  if (!read_file(cached, &body)) {
    httplib::SSLClient client("www.thebluealliance.com");
    client.set_connection_timeout(10);
    client.set_read_timeout(30);
    httplib::Headers headers{{"X-TBA-Auth-Key", api_key}};
    auto res = client.Get(("/api/v3/event/" + event_key + "/matches").c_str(),
                          headers);
    if (!res) {
      throw TransportError("request to The Blue Alliance failed and no cache "
                           "exists for event '" + event_key + "'");
    }
    if (res->status == 401) {
      throw CredentialError("The Blue Alliance rejected the API key");
    }
    if (res->status != 200) {
      throw TransportError("The Blue Alliance returned HTTP " +
                           std::to_string(res->status) + " for event '" +
                           event_key + "'");
    }
    body = res->body;
    // Validate before caching so a bad payload is never served later.
    parse_tba_matches(body);
    write_file_atomic(cached, body);
    source = "api";
  }
  return finalize_dataset(event_key, parse_tba_matches(body), exclusions,
                          source);
}

}  // namespace wmprc
