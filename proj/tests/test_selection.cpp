#include <algorithm>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "wmprc/selection.hpp"

using namespace wmprc;

namespace {

// Chain with hand-set criterion rows; models are placeholders fitted on a
// small shared instance.
CandidateChain synthetic_chain(const std::vector<double>& mspe_d_values) {
  auto inst = oracles::random_instance(123, 8, 18, 3);
  CandidateChain chain;
  chain.method = Method::kTcl;
  const int k = static_cast<int>(mspe_d_values.size()) + 1;
  for (int c = k; c >= 2; --c) {
    Candidate cand{fit_wmprc(inst.design, ClusterAssignment::single_cluster(8)),
                   CriterionRow{}};
    cand.row.cluster_count = c;
    cand.row.feasible = true;
    const double v = mspe_d_values[k - c];
    cand.row.mspe_d = v;
    cand.row.pcp = 1.0 - v;
    cand.row.mspe_y = 10.0 * v;
    cand.row.mspe_p = 0.5 * v;
    const double penalty = c * std::log(100.0) / 100.0;
    cand.row.mspeb_y = std::log(cand.row.mspe_y) + penalty;
    cand.row.mspeb_p = std::log(cand.row.mspe_p) + penalty;
    cand.row.mspeb_d = std::log(cand.row.mspe_d) + penalty;
    chain.candidates.push_back(std::move(cand));
  }
  return chain;
}

}  // namespace

TEST_CASE("a u-shaped criterion has its unique minimizer selected") {
  // c runs 9..2; values dip at c = 5.
  CandidateChain chain =
      synthetic_chain({0.9, 0.7, 0.5, 0.3, 0.2, 0.4, 0.6, 0.8});
  SelectionResult result = select(chain, Criterion::kMspeD);
  CHECK(result.chosen_c == 5);
  CHECK(result.table.size() == 8);
}

TEST_CASE("ties resolve to the smallest cluster count") {
  CandidateChain chain =
      synthetic_chain({0.9, 0.2, 0.5, 0.3, 0.2, 0.4, 0.6, 0.8});
  // mspe_d = 0.2 at c = 8 and c = 5.
  SelectionResult result = select(chain, Criterion::kMspeD);
  CHECK(result.chosen_c == 5);
}

TEST_CASE("infeasible rows are skipped and all-infeasible errors") {
  CandidateChain chain =
      synthetic_chain({0.9, 0.7, 0.5, 0.3, 0.2, 0.4, 0.6, 0.8});
  for (auto& cand : chain.candidates) {
    if (cand.row.cluster_count == 5) {
      cand.row = CriterionRow{};  // +inf sentinels
      cand.row.cluster_count = 5;
      cand.row.feasible = false;
    }
  }
  SelectionResult result = select(chain, Criterion::kMspeD);
  CHECK(result.chosen_c == 6);  // next best after the infeasible minimum

  for (auto& cand : chain.candidates) {
    cand.row.feasible = false;
  }
  CHECK_THROWS_AS(select(chain, Criterion::kMspeD), SelectionError);
}

TEST_CASE("selection ignores chain storage order") {
  CandidateChain chain =
      synthetic_chain({0.9, 0.7, 0.5, 0.3, 0.2, 0.4, 0.6, 0.8});
  CandidateChain shuffled = chain;
  std::mt19937_64 rng(5);
  std::shuffle(shuffled.candidates.begin(), shuffled.candidates.end(), rng);
  CHECK(select(chain, Criterion::kMspebD).chosen_c ==
        select(shuffled, Criterion::kMspebD).chosen_c);
}

TEST_CASE("mspeb with the penalty removed selects like the mspe") {
  // Real chains: strip the penalty from mspeb and compare code paths.
  auto inst = oracles::random_instance(321, 9, 20, 3);
  CandidateChain chain = generate_candidates(inst.design, Method::kTcl);
  const int m = inst.design.match_count();
  CandidateChain stripped = chain;
  for (auto& cand : stripped.candidates) {
    if (!cand.row.feasible) continue;
    const double penalty = cand.row.cluster_count * std::log(double(m)) / m;
    cand.row.mspeb_y -= penalty;
    cand.row.mspeb_p -= penalty;
    cand.row.mspeb_d -= penalty;
  }
  for (auto [log_crit, plain] :
       {std::pair{Criterion::kMspebY, Criterion::kMspeY},
        std::pair{Criterion::kMspebP, Criterion::kMspeP},
        std::pair{Criterion::kMspebD, Criterion::kMspeD}}) {
    CHECK(select(stripped, log_crit).chosen_c ==
          select(chain, plain).chosen_c);
  }
}
