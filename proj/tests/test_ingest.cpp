#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "wmprc/design.hpp"
#include "wmprc/ingest.hpp"
#include "wmprc/tba_client.hpp"

using namespace wmprc;

namespace {

std::string fixture_path(const std::string& name) {
  return std::string(WMPRC_TEST_DIR) + "/fixtures/" + name;
}

std::string temp_file(const std::string& name, const std::string& body) {
  const std::string path = "/tmp/wmprc_" + name;
  std::ofstream out(path, std::ios::binary);
  out << body;
  return path;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("canonical csv parses, validates and derives the roster") {
  const std::string body =
      "match_id,red1,red2,red3,blue1,blue2,blue3,red_score,blue_score\n"
      "qm2,frc1,frc2,frc3,frc4,frc5,frc6,12,40\n"
      "qm1,frc1,frc2,frc3,frc4,frc5,frc6,30,21\n"
      "qm10,frc2,frc4,frc7,frc1,frc5,frc6,8,8\n";
  EventDataset ds = read_matches_csv(temp_file("basic.csv", body));
  CHECK(ds.match_count() == 3);
  CHECK(ds.matches[0].match_id == "qm1");  // sorted by match number
  CHECK(ds.matches[2].match_id == "qm10");
  CHECK(ds.matches[0].score_diff() == 9);
  CHECK(ds.robot_count() == 7);
  CHECK(ds.source == "csv");

  DesignMatrix design = build_design(ds.matches, ds.roster);
  CHECK(design.y()[0] == 9.0);
  CHECK(design.outcome()[2] == 0.5);
}

TEST_CASE("exclusions drop matches and an empty result errors") {
  const std::string body =
      "match_id,red1,red2,red3,blue1,blue2,blue3,red_score,blue_score\n"
      "qm1,frc1,frc2,frc3,frc4,frc5,frc6,30,21\n"
      "qm2,frc1,frc2,frc4,frc3,frc5,frc6,10,20\n";
  const std::string path = temp_file("excl.csv", body);
  EventDataset ds = read_matches_csv(path, {"qm2"});
  CHECK(ds.match_count() == 1);
  CHECK(ds.exclusions_applied == std::vector<std::string>{"qm2"});
  CHECK_THROWS_AS(read_matches_csv(path, {"qm1", "qm2"}), IngestError);
}

TEST_CASE("malformed rows name the line") {
  const std::string body =
      "match_id,red1,red2,red3,blue1,blue2,blue3,red_score,blue_score\n"
      "qm1,frc1,frc2,frc3,frc4,frc5,frc6,30,21\n"
      "qm2,frc1,frc2,frc3,frc4,frc5,frc6,thirty,21\n";
  try {
    read_matches_csv(temp_file("bad.csv", body));
    FAIL("expected IngestError");
  } catch (const IngestError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK_THROWS_AS(
      read_matches_csv(temp_file(
          "header.csv", "match,red1,red2,red3,blue1,blue2,blue3,rs,bs\n")),
      IngestError);
  CHECK_THROWS_AS(read_matches_csv("/nonexistent/file.csv"), IngestError);
}

TEST_CASE("duplicate match ids are rejected") {
  const std::string body =
      "match_id,red1,red2,red3,blue1,blue2,blue3,red_score,blue_score\n"
      "qm1,frc1,frc2,frc3,frc4,frc5,frc6,30,21\n"
      "qm1,frc1,frc2,frc4,frc3,frc5,frc6,10,20\n";
  CHECK_THROWS_AS(read_matches_csv(temp_file("dup.csv", body)), IngestError);
}

TEST_CASE("canonical files round-trip byte for byte") {
  const std::string body =
      "match_id,red1,red2,red3,blue1,blue2,blue3,red_score,blue_score\n"
      "qm1,frc1,frc2,frc3,frc4,frc5,frc6,30,21\n"
      "qm2,frc1,frc2,frc4,frc3,frc5,frc6,10,20\n";
  const std::string in_path = temp_file("round.csv", body);
  EventDataset ds = read_matches_csv(in_path);
  const std::string out_path = "/tmp/wmprc_round_out.csv";
  write_matches_csv(out_path, ds);
  CHECK(slurp(out_path) == body);
}

TEST_CASE("import maps foreign layouts onto the canonical schema") {
  const std::string body =
      "Match,Red1,Red2,Red3,Blue1,Blue2,Blue3,RedScore,BlueScore\n"
      "1,frc10,frc20,frc30,frc40,frc50,frc60,55,41\n"
      "2,frc20,frc40,frc70,frc10,frc50,frc60,12,12\n";
  std::string canonical = import_matches_csv(temp_file("import.csv", body));
  CHECK(canonical.find("match_id,red1") == 0);
  CHECK(canonical.find("qm1,frc10,frc20,frc30,frc40,frc50,frc60,55,41\n") !=
        std::string::npos);
  CHECK(canonical.find("qm2,") != std::string::npos);

  // Unknown layout fails unless overridden.
  const std::string odd =
      "id,ra,rb,rc,ba,bb,bc,sr,sb\n"
      "1,frc1,frc2,frc3,frc4,frc5,frc6,3,4\n";
  const std::string odd_path = temp_file("odd.csv", odd);
  CHECK_THROWS_AS(import_matches_csv(odd_path), IngestError);
  std::string mapped = import_matches_csv(
      odd_path, {{"red1", "ra"},
                 {"red2", "rb"},
                 {"red3", "rc"},
                 {"blue1", "ba"},
                 {"blue2", "bb"},
                 {"blue3", "bc"},
                 {"red_score", "sr"},
                 {"blue_score", "sb"}});
  CHECK(mapped.find("qm1,frc1,frc2,frc3,frc4,frc5,frc6,3,4\n") !=
        std::string::npos);
}

TEST_CASE("tba fixture parses to the expected shape") {
  std::vector<MatchRecord> matches =
      parse_tba_matches(slurp(fixture_path("tba_matches.json")));
  // The fixture holds 12 qualification matches plus playoff entries that
  // must be ignored.
  CHECK(matches.size() == 12);
  EventDataset ds = finalize_dataset("2019test", std::move(matches), {}, "api");
  CHECK(ds.match_count() == 12);
  CHECK(ds.robot_count() == 12);
  CHECK(ds.matches[0].match_id == "qm1");
}

TEST_CASE("tba cache round-trips through fetch") {
  namespace fs = std::filesystem;
  const std::string cache_dir = "/tmp/wmprc_cache_test";
  fs::remove_all(cache_dir);
  fs::create_directories(cache_dir);
  // Warm the cache by hand: fetch must then succeed without network.
  fs::copy_file(fixture_path("tba_matches.json"),
                cache_dir + "/tba_2019test_matches.json");
  EventDataset ds = fetch_event_matches("2019test", "dummy-key", cache_dir);
  CHECK(ds.source == "cache");
  CHECK(ds.match_count() == 12);

  // Cold cache without network: transport error, no partial dataset.
  CHECK_THROWS_AS(fetch_event_matches("2019nowhere", "dummy-key", cache_dir),
                  TransportError);
  CHECK_FALSE(fs::exists(cache_dir + "/tba_2019nowhere_matches.json"));
  // Missing key: credential error before any I/O.
  CHECK_THROWS_AS(fetch_event_matches("2019test", "", cache_dir),
                  CredentialError);
}

TEST_CASE("malformed tba payloads name the problem") {
  CHECK_THROWS_AS(parse_tba_matches("not json"), IngestError);
  CHECK_THROWS_AS(parse_tba_matches("{\"an\":\"object\"}"), IngestError);
  CHECK_THROWS_AS(
      parse_tba_matches(
          R"([{"comp_level":"qm","match_number":1,"alliances":{}}])"),
      IngestError);
}
