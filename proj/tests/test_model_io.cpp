#include "doctest.h"
#include "oracles.hpp"
#include "wmprc/model_io.hpp"

using namespace wmprc;

TEST_CASE("fnv1a64 digest anchors") {
  CHECK(fnv1a64("") == 0xCBF29CE484222325ull);
  CHECK(fnv1a64("a") == 0xAF63DC4C8601EC8Cull);
  CHECK(digest_string("abc").substr(0, 8) == "fnv1a64:");
}

TEST_CASE("models round-trip through json") {
  auto inst = oracles::random_instance(555, 8, 18, 3);
  ClusteredModel model = fit_wmprc(inst.design, inst.assignment);
  CriterionRow row = evaluate_candidate(model, inst.design);

  std::vector<std::string> ids;
  for (int i = 0; i < 8; ++i) ids.push_back("frc" + std::to_string(100 + i));
  StoredModel stored{RobotRoster(ids), model, "2019test", "tcl", "mspeb_d",
                     row};
  const std::string text = model_to_json(stored, digest_string("input"));
  StoredModel loaded = model_from_json(text);

  CHECK(loaded.roster == stored.roster);
  CHECK(loaded.model.assignment.labels() == model.assignment.labels());
  CHECK(loaded.model.theta == model.theta);
  CHECK(loaded.model.beta == model.beta);
  CHECK(loaded.model.residuals == model.residuals);
  CHECK(loaded.model.rss == model.rss);
  CHECK(loaded.event_id == "2019test");
  CHECK(loaded.method == "tcl");
  CHECK(loaded.row.mspe_y == row.mspe_y);
  CHECK(loaded.row.cluster_count == row.cluster_count);

  // The reconstructed empirical CDF answers queries identically.
  for (double t : {-3.0, 0.0, 1.5}) {
    CHECK(loaded.model.cdf(t) == model.cdf(t));
  }
  CHECK_THROWS_AS(model_from_json("{}"), IngestError);
  CHECK_THROWS_AS(model_from_json("not json"), IngestError);
}

TEST_CASE("criterion curve csv has one row per cluster count") {
  auto inst = oracles::random_instance(556, 7, 16, 3);
  CandidateChain chain = generate_candidates(inst.design, Method::kTcl);
  std::vector<CriterionRow> table;
  for (const auto& cand : chain.candidates) table.push_back(cand.row);
  const std::string csv = criterion_curve_csv(table);
  CHECK(csv.find("c,feasible,mspe_y") == 0);
  int lines = 0;
  for (char ch : csv) lines += ch == '\n';
  CHECK(lines == 1 + static_cast<int>(table.size()));
}

TEST_CASE("traces round-trip through json") {
  auto inst = oracles::random_instance(557, 8, 18, 3);
  CandidateChain chain = generate_candidates(inst.design, Method::kTcl);
  const std::string text = trace_to_json(chain.trace);
  ChainTrace loaded = trace_from_json(text);
  REQUIRE(loaded.events.size() == chain.trace.events.size());
  CHECK_FALSE(trace_diff(chain.trace, loaded).has_value());
  CHECK_THROWS_AS(trace_from_json("[]"), IngestError);
}
