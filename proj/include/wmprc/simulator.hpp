#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "wmprc/clustering.hpp"
#include "wmprc/simulator_types.hpp"

namespace wmprc {

enum class Scenario { kM1, kM2 };

Scenario parse_scenario(const std::string& name);
std::string scenario_name(Scenario s);

// Published scenario parameters: cluster strengths, sizes and the base error
// scale sigma-hat the multiplier applies to.
struct ScenarioSpec {
  Eigen::VectorXd strengths;
  std::vector<int> sizes;
  double sigma_hat;
};
const ScenarioSpec& scenario_spec(Scenario s);

// Ground truth over the given schedule: cluster blocks follow roster order
// with the scenario's sizes; sigma = multiplier * sigma_hat. Throws when the
// schedule's K differs from the scenario's robot total.
TruthSpec make_scenario(Scenario base, double sigma_multiplier,
                        const DesignMatrix& design);

// Y = X beta_o + sigma * z, z from the documented counter stream under
// `key`; the outcome vector is recomputed from the drawn responses.
Eigen::VectorXd generate_response(const TruthSpec& truth,
                                  const DesignMatrix& design, uint64_t key);

// Closed-form prediction errors of a fitted model under the truth, with the
// future covariate uniform over the observed schedule rows.
struct OracleMspe {
  double y = 0.0;
  double p = 0.0;
  double d = 0.0;
};
OracleMspe oracle_mspe(const ClusteredModel& model, const TruthSpec& truth,
                       const DesignMatrix& design);

// Sum over robots of (beta_hat_i - beta_{o,g_i})^2.
double mse_strengths(const ClusteredModel& model, const TruthSpec& truth);

// Random balanced 3-vs-3 schedule: every robot appears floor(6M/K) or
// ceil(6M/K) times, six distinct robots per match. Deterministic in `seed`.
DesignMatrix synthetic_schedule(int robots, int matches, uint64_t seed);

// Aggregates over one method x criterion cell (or the WMPR baseline).
struct SummaryRow {
  std::string method;
  std::string criterion;  // "none" for the WMPR baseline row
  double mean_c = 0.0;
  double sd_c = 0.0;
  double mse = 0.0;
  double minr = 0.0;
  double rc = 0.0;
  OracleMspe oracle;        // means of the true prediction errors
  double est_mspe_y = 0.0;  // means of the cross-validation estimates
  double est_mspe_p = 0.0;
  double est_mspe_d = 0.0;
};

struct ExperimentSummary {
  std::string scenario;
  double sigma = 0.0;
  int replications = 0;
  uint64_t master_seed = 0;
  int robots = 0;
  int matches = 0;
  std::string schedule_source;
  std::vector<SummaryRow> rows;

  const SummaryRow& row(const std::string& method,
                        const std::string& criterion) const;
};

// Runs `reps` independent replications: draw Y, build each method's chain,
// apply all six criteria, and aggregate. Replications are farmed out to
// `threads` workers but accumulated in replication order, so the summary is
// identical for any thread count.
ExperimentSummary run_experiment(const TruthSpec& truth,
                                 const DesignMatrix& design, int reps,
                                 const std::vector<Method>& methods,
                                 uint64_t master_seed, int threads = 1);

// Plain config file (JSON) for the simulate subcommand.
struct ExperimentConfig {
  Scenario scenario = Scenario::kM1;
  double sigma_multiplier = 1.0;
  int reps = 100;
  std::vector<Method> methods;
  std::vector<Criterion> criteria;  // rows to keep in the written summary
  uint64_t seed = 0;
  std::string schedule_csv;         // empty -> synthetic schedule
  int synthetic_matches = 0;        // 0 -> scenario default

  static ExperimentConfig from_file(const std::string& path);
};

std::string summary_to_csv(const ExperimentSummary& summary,
                           const std::vector<Criterion>& criteria);

}  // namespace wmprc
