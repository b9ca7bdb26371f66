#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "wmprc/indices.hpp"
#include "wmprc/simulator.hpp"

using namespace wmprc;

namespace {

// Builds a model directly from labels and cluster strengths (no fitting).
ClusteredModel synthetic_model(std::vector<int> labels,
                               std::vector<double> strengths) {
  const int c = static_cast<int>(strengths.size());
  const int k = static_cast<int>(labels.size());
  ClusteredModel model{ClusterAssignment(c, std::move(labels)),
                       Eigen::VectorXd(c), Eigen::VectorXd(k),
                       Eigen::VectorXd::Zero(1), 0.0, EmpiricalCdf()};
  for (int j = 0; j < c; ++j) model.theta[j] = strengths[j];
  for (int i = 0; i < k; ++i) {
    model.beta[i] = model.theta[model.assignment.label(i)];
  }
  return model;
}

}  // namespace

TEST_CASE("identical models have index one") {
  auto inst = oracles::random_instance(800, 8, 18, 3);
  ClusteredModel model = fit_wmprc(inst.design, inst.assignment);
  CHECK(minr(model, model) == 1.0);
  CHECK(rank_correlation(model, model) == 1.0);
}

TEST_CASE("perfect nesting scores one") {
  ClusteredModel coarse = synthetic_model({0, 0, 1, 1}, {-1.0, 1.0});
  ClusteredModel fine =
      synthetic_model({0, 1, 2, 3}, {-1.2, -0.8, 0.8, 1.2});
  CHECK(minr(coarse, fine) == 1.0);
  CHECK(minr(fine, coarse) == 1.0);
}

TEST_CASE("one robot nearest to the wrong cluster costs one sixth") {
  // Reference model b: clusters at -2 and +2. Model a (6 robots, 3
  // clusters): strengths -2.1, 0.5, 2.2. The robot at 0.5 is labelled with
  // the low cluster in b but sits nearer +2.
  ClusteredModel a =
      synthetic_model({0, 0, 1, 2, 2, 1}, {-2.1, 0.5, 2.2});
  ClusteredModel b = synthetic_model({0, 0, 0, 1, 1, 1}, {-2.0, 2.0});
  const double expected =
      oracles::minr_reference(a.beta, a.theta, a.assignment.labels(), b.beta,
                              b.theta, b.assignment.labels());
  CHECK(expected == doctest::Approx(5.0 / 6.0));
  CHECK(minr(a, b) == doctest::Approx(expected));
  CHECK(minr(b, a) == doctest::Approx(expected));
}

TEST_CASE("minr and rc match literal-formula oracles on random pairs") {
  std::mt19937_64 rng(900);
  for (int round = 0; round < 40; ++round) {
    auto ia = oracles::random_instance(900 + round, 9, 18, 2 + round % 4);
    auto ib = oracles::random_instance(1900 + round, 9, 18, 2 + (round + 1) % 4);
    ClusteredModel a = fit_wmprc(ia.design, ia.assignment);
    ClusteredModel b = fit_wmprc(ib.design, ib.assignment);
    const double m_expected =
        oracles::minr_reference(a.beta, a.theta, a.assignment.labels(), b.beta,
                                b.theta, b.assignment.labels());
    CHECK(minr(a, b) == doctest::Approx(m_expected).epsilon(1e-12));
    CHECK(minr(a, b) == doctest::Approx(minr(b, a)).epsilon(1e-12));
    const double rc_expected = oracles::rc_reference(a.beta, b.beta);
    CHECK(rank_correlation(a, b) ==
          doctest::Approx(rc_expected).epsilon(1e-12));
    CHECK(rank_correlation(a, b) ==
          doctest::Approx(rank_correlation(b, a)).epsilon(1e-12));
    CHECK(minr(a, b) >= 0.0);
    CHECK(minr(a, b) <= 1.0);
    CHECK(rank_correlation(a, b) >= 0.0);
    CHECK(rank_correlation(a, b) <= 1.0);
  }
}

TEST_CASE("indices are invariant to relabeling either argument") {
  auto inst = oracles::random_instance(901, 8, 20, 3);
  ClusteredModel a = fit_wmprc(inst.design, inst.assignment);
  ClusteredModel b = synthetic_model({0, 1, 1, 2, 2, 0, 1, 2},
                                     {-3.0, 0.5, 3.5});
  // Permute b's labels; strengths move with the labels.
  ClusteredModel b_permuted = synthetic_model({2, 0, 0, 1, 1, 2, 0, 1},
                                              {0.5, 3.5, -3.0});
  CHECK(minr(a, b) == doctest::Approx(minr(a, b_permuted)).epsilon(1e-14));
  CHECK(rank_correlation(a, b) ==
        doctest::Approx(rank_correlation(a, b_permuted)).epsilon(1e-14));
}

TEST_CASE("reversed order kills the rank correlation") {
  ClusteredModel a = synthetic_model({0, 1, 2, 3}, {1.0, 2.0, 3.0, 4.0});
  ClusteredModel b = synthetic_model({0, 1, 2, 3}, {4.0, 3.0, 2.0, 1.0});
  CHECK(rank_correlation(a, a) == 1.0);
  CHECK(rank_correlation(a, b) == 0.0);
}

TEST_CASE("scaling changes minr but never the rank correlation") {
  ClusteredModel a = synthetic_model({0, 0, 1, 1, 2, 2}, {-4.0, 1.0, 4.0});
  ClusteredModel b = synthetic_model({0, 0, 1, 1, 2, 2}, {-4.0, 1.0, 4.0});
  ClusteredModel b_scaled = b;
  b_scaled.theta *= 10.0;
  b_scaled.beta *= 10.0;
  CHECK(rank_correlation(a, b_scaled) == rank_correlation(a, b));
  // With c = d the direction mapping a -> b_scaled collapses every robot
  // onto b's extreme clusters region differently than the unscaled pair.
  CHECK(minr(a, b) == 1.0);
  CHECK(minr(a, b_scaled) < 1.0);
}

TEST_CASE("truth-referenced variants use the truth as reference") {
  DesignMatrix schedule = synthetic_schedule(67, 112, 404);
  TruthSpec truth = make_scenario(Scenario::kM1, 1.0, schedule);

  // sigma = 0 recovery: fitting the exact responses at the true clustering
  // reproduces the truth.
  DesignMatrix exact =
      schedule.with_response(generate_response(
          make_scenario(Scenario::kM1, 0.0, schedule), schedule, 7));
  ClusteredModel fitted = fit_wmprc(exact, truth.assignment);
  CHECK(minr_vs_truth(fitted, truth) == 1.0);
  CHECK(rank_correlation_vs_truth(fitted, truth) == 1.0);

  // All robots collapsed to one cluster at 0: every strength maps to the
  // true cluster at -4.75 (4.75 < 4.76), so the score is the fraction of
  // robots genuinely in that cluster.
  ClusteredModel collapsed =
      synthetic_model(std::vector<int>(67, 0), {0.0});
  CHECK(minr_vs_truth(collapsed, truth) == doctest::Approx(25.0 / 67.0));
}

TEST_CASE("classification thresholds") {
  CHECK(classify_strength(0.95) == "outstanding");
  CHECK(classify_strength(0.9) == "outstanding");
  CHECK(classify_strength(0.8) == "excellent");
  CHECK(classify_strength(0.89) == "excellent");
  CHECK(classify_strength(0.7) == "acceptable");
  CHECK(classify_strength(0.0) == "poor");
}
