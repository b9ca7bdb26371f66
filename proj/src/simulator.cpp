#include "wmprc/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "wmprc/indices.hpp"
#include "wmprc/rng.hpp"
#include "wmprc/selection.hpp"

namespace wmprc {

Eigen::VectorXd TruthSpec::expanded() const {
  Eigen::VectorXd beta(robot_count());
  for (int i = 0; i < robot_count(); ++i) beta[i] = strengths[assignment.label(i)];
  return beta;
}

Scenario parse_scenario(const std::string& name) {
  if (name == "M1" || name == "m1") return Scenario::kM1;
  if (name == "M2" || name == "m2") return Scenario::kM2;
  throw ValidationError("unknown scenario: " + name);
}

std::string scenario_name(Scenario s) {
  return s == Scenario::kM1 ? "M1" : "M2";
}

const ScenarioSpec& scenario_spec(Scenario s) {
  static const ScenarioSpec m1{
      (Eigen::VectorXd(4) << -15.07, -4.75, 4.76, 14.52).finished(),
      {9, 25, 24, 9},
      11.056};
  static const ScenarioSpec m2{
      (Eigen::VectorXd(8) << -18.16, -13.57, -9.81, -0.58, 4.88, 7.90, 11.16,
       18.20)
          .finished(),
      {5, 3, 8, 22, 17, 6, 5, 2},
      10.275};
  return s == Scenario::kM1 ? m1 : m2;
}

TruthSpec make_scenario(Scenario base, double sigma_multiplier,
                        const DesignMatrix& design) {
  const ScenarioSpec& spec = scenario_spec(base);
  int total = 0;
  for (int n : spec.sizes) total += n;
  if (total != design.robot_count()) {
    throw ValidationError("scenario " + scenario_name(base) + " needs K = " +
                          std::to_string(total) + ", schedule has K = " +
                          std::to_string(design.robot_count()));
  }
  std::vector<int> labels;
  labels.reserve(total);
  for (int k = 0; k < static_cast<int>(spec.sizes.size()); ++k) {
    labels.insert(labels.end(), spec.sizes[k], k);
  }
  return TruthSpec{scenario_name(base),
                   ClusterAssignment(static_cast<int>(spec.sizes.size()),
                                     std::move(labels)),
                   spec.strengths, sigma_multiplier * spec.sigma_hat};
}

Eigen::VectorXd generate_response(const TruthSpec& truth,
                                  const DesignMatrix& design, uint64_t key) {
  const Eigen::VectorXd beta = truth.expanded();
  Eigen::VectorXd y(design.match_count());
  for (int s = 0; s < design.match_count(); ++s) {
    y[s] = design.row_dot(s, beta) +
           truth.sigma * stream_normal(key, static_cast<uint64_t>(s));
  }
  return y;
}

OracleMspe oracle_mspe(const ClusteredModel& model, const TruthSpec& truth,
                       const DesignMatrix& design) {
  const int m = design.match_count();
  const Eigen::VectorXd beta_o = truth.expanded();
  const double sigma = truth.sigma;

  OracleMspe out;
  double bias_sq = 0.0, sum_p = 0.0, sum_d = 0.0;
  for (int s = 0; s < m; ++s) {
    const double mu = design.row_dot(s, beta_o);
    const double y_hat = design.row_dot(s, model.beta);
    bias_sq += (y_hat - mu) * (y_hat - mu);

    double p;
    if (sigma > 0.0) {
      p = normal_cdf(mu / sigma);
    } else {
      p = outcome_of(mu);  // degenerate error: win/draw/loss is deterministic
    }
    const double p_hat = 1.0 - model.cdf(-y_hat);
    const double d_hat = outcome_from_prob(p_hat);
    sum_p += p * (1.0 - p) + (p - p_hat) * (p - p_hat);
    sum_d += p * (1.0 - d_hat) * (1.0 - d_hat) + (1.0 - p) * d_hat * d_hat;
  }
  out.y = sigma * sigma + bias_sq / m;
  out.p = sum_p / m;
  out.d = sum_d / m;
  return out;
}

double mse_strengths(const ClusteredModel& model, const TruthSpec& truth) {
  if (model.robot_count() != truth.robot_count()) {
    throw ValidationError("model and truth cover different rosters");
  }
  return (model.beta - truth.expanded()).squaredNorm();
}

DesignMatrix synthetic_schedule(int robots, int matches, uint64_t seed) {
  if (robots < 6) throw ValidationError("schedule needs at least 6 robots");
  const int slots = 6 * matches;
  if (slots < robots) throw ValidationError("too few matches to seat all robots");

  // Balanced appearance multiset: floor(6M/K) for everyone, one extra for
  // the first 6M mod K robots.
  std::vector<int> pool;
  pool.reserve(slots);
  const int base = slots / robots;
  const int extra = slots % robots;
  for (int i = 0; i < robots; ++i) {
    for (int j = 0; j < base + (i < extra ? 1 : 0); ++j) pool.push_back(i);
  }

  uint64_t draw = 0;
  auto next_index = [&](int bound) {
    return static_cast<int>(stream_value(seed, draw++) % uint64_t(bound));
  };

  for (int attempt = 0; attempt < 64; ++attempt) {
    // Fisher-Yates, then repair duplicate robots within a match by swapping
    // with a later slot.
    std::vector<int> order = pool;
    for (int i = static_cast<int>(order.size()) - 1; i > 0; --i) {
      std::swap(order[i], order[next_index(i + 1)]);
    }
    bool ok = true;
    for (int s = 0; s < matches && ok; ++s) {
      for (int j = 0; j < 6 && ok; ++j) {
        const int pos = 6 * s + j;
        bool dup = false;
        for (int t = 6 * s; t < pos; ++t) dup |= order[t] == order[pos];
        if (!dup) continue;
        int swap_pos = -1;
        for (int u = pos + 1; u < slots && swap_pos < 0; ++u) {
          bool clash = false;
          for (int t = 6 * s; t < pos; ++t) clash |= order[t] == order[u];
          if (!clash) swap_pos = u;
        }
        if (swap_pos < 0) {
          ok = false;  // tail exhausted; reshuffle
        } else {
          std::swap(order[pos], order[swap_pos]);
        }
      }
    }
    if (!ok) continue;

    std::vector<std::array<int, 3>> red(matches), blue(matches);
    for (int s = 0; s < matches; ++s) {
      for (int j = 0; j < 3; ++j) {
        red[s][j] = order[6 * s + j];
        blue[s][j] = order[6 * s + 3 + j];
      }
    }
    return DesignMatrix(std::move(red), std::move(blue),
                        Eigen::VectorXd::Zero(matches), robots);
  }
  throw ValidationError("failed to build a balanced schedule");
}

namespace {

struct CellMetrics {
  double c_hat = 0.0;
  double mse = 0.0;
  double minr_value = 0.0;
  double rc_value = 0.0;
  OracleMspe oracle;
  double est_y = 0.0, est_p = 0.0, est_d = 0.0;
};

CellMetrics measure(const ClusteredModel& model, const CriterionRow& row,
                    const TruthSpec& truth, const DesignMatrix& design) {
  CellMetrics cell;
  cell.c_hat = model.cluster_count();
  cell.mse = mse_strengths(model, truth);
  cell.minr_value = minr_vs_truth(model, truth);
  cell.rc_value = rank_correlation_vs_truth(model, truth);
  cell.oracle = oracle_mspe(model, truth, design);
  cell.est_y = row.mspe_y;
  cell.est_p = row.mspe_p;
  cell.est_d = row.mspe_d;
  return cell;
}

// One replication: cells[0] is the WMPR baseline, then one cell per
// method x criterion in method-major order.
std::vector<CellMetrics> run_replication(const TruthSpec& truth,
                                         const DesignMatrix& design,
                                         const std::vector<Method>& methods,
                                         uint64_t rep_key) {
  const DesignMatrix replicate =
      design.with_response(generate_response(truth, design, rep_key));
  std::vector<CellMetrics> cells;
  cells.resize(1 + methods.size() * kAllCriteria.size());
  bool have_wmpr = false;
  for (size_t mi = 0; mi < methods.size(); ++mi) {
    CandidateChain chain = generate_candidates(replicate, methods[mi]);
    if (!have_wmpr) {
      const Candidate& wmpr = chain.candidate(design.robot_count());
      cells[0] = measure(wmpr.model, wmpr.row, truth, replicate);
      have_wmpr = true;
    }
    for (size_t ci = 0; ci < kAllCriteria.size(); ++ci) {
      SelectionResult sel = select(chain, kAllCriteria[ci]);
      cells[1 + mi * kAllCriteria.size() + ci] =
          measure(sel.chosen->model, sel.chosen->row, truth, replicate);
    }
  }
  return cells;
}

}  // namespace

const SummaryRow& ExperimentSummary::row(const std::string& method,
                                         const std::string& criterion) const {
  for (const SummaryRow& r : rows) {
    if (r.method == method && r.criterion == criterion) return r;
  }
  throw ValidationError("no summary row for " + method + "/" + criterion);
}

ExperimentSummary run_experiment(const TruthSpec& truth,
                                 const DesignMatrix& design, int reps,
                                 const std::vector<Method>& methods,
                                 uint64_t master_seed, int threads) {
  if (reps < 1) throw ValidationError("replication count must be positive");
  if (methods.empty()) throw ValidationError("no methods configured");

  std::vector<std::vector<CellMetrics>> per_rep(reps);
  std::atomic<int> cursor{0};
  auto worker = [&]() {
    while (true) {
      const int rep = cursor.fetch_add(1);
      if (rep >= reps) return;
      per_rep[rep] = run_replication(truth, design, methods,
                                     stream_subkey(master_seed, rep));
    }
  };
  const int workers = std::max(1, std::min(threads, reps));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> threads_vec;
    for (int t = 0; t < workers; ++t) threads_vec.emplace_back(worker);
    for (auto& t : threads_vec) t.join();
  }

  // Fixed-order reduction over replications.
  const size_t cell_count = 1 + methods.size() * kAllCriteria.size();
  std::vector<CellMetrics> sums(cell_count);
  std::vector<double> c_sq(cell_count, 0.0);
  for (int rep = 0; rep < reps; ++rep) {
    for (size_t j = 0; j < cell_count; ++j) {
      const CellMetrics& m = per_rep[rep][j];
      CellMetrics& acc = sums[j];
      acc.c_hat += m.c_hat;
      acc.mse += m.mse;
      acc.minr_value += m.minr_value;
      acc.rc_value += m.rc_value;
      acc.oracle.y += m.oracle.y;
      acc.oracle.p += m.oracle.p;
      acc.oracle.d += m.oracle.d;
      acc.est_y += m.est_y;
      acc.est_p += m.est_p;
      acc.est_d += m.est_d;
      c_sq[j] += m.c_hat * m.c_hat;
    }
  }

  ExperimentSummary summary;
  summary.scenario = truth.name;
  summary.sigma = truth.sigma;
  summary.replications = reps;
  summary.master_seed = master_seed;
  summary.robots = design.robot_count();
  summary.matches = design.match_count();

  auto emit = [&](size_t j, const std::string& method,
                  const std::string& criterion) {
    SummaryRow row;
    row.method = method;
    row.criterion = criterion;
    const double n = reps;
    row.mean_c = sums[j].c_hat / n;
    const double var =
        reps > 1 ? (c_sq[j] - n * row.mean_c * row.mean_c) / (n - 1.0) : 0.0;
    row.sd_c = std::sqrt(std::max(0.0, var));
    row.mse = sums[j].mse / n;
    row.minr = sums[j].minr_value / n;
    row.rc = sums[j].rc_value / n;
    row.oracle = {sums[j].oracle.y / n, sums[j].oracle.p / n,
                  sums[j].oracle.d / n};
    row.est_mspe_y = sums[j].est_y / n;
    row.est_mspe_p = sums[j].est_p / n;
    row.est_mspe_d = sums[j].est_d / n;
    summary.rows.push_back(std::move(row));
  };

  emit(0, "wmpr", "none");
  for (size_t mi = 0; mi < methods.size(); ++mi) {
    for (size_t ci = 0; ci < kAllCriteria.size(); ++ci) {
      emit(1 + mi * kAllCriteria.size() + ci, method_name(methods[mi]),
           criterion_name(kAllCriteria[ci]));
    }
  }
  return summary;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IngestError("cannot open config file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw IngestError("config parse error in " + path + ": " + e.what());
  }
  ExperimentConfig cfg;
  cfg.scenario = parse_scenario(doc.at("scenario").get<std::string>());
  cfg.sigma_multiplier = doc.at("sigma_multiplier").get<double>();
  cfg.reps = doc.at("reps").get<int>();
  for (const auto& m : doc.at("methods")) {
    cfg.methods.push_back(parse_method(m.get<std::string>()));
  }
  if (doc.contains("criteria")) {
    for (const auto& c : doc.at("criteria")) {
      cfg.criteria.push_back(parse_criterion(c.get<std::string>()));
    }
  } else {
    cfg.criteria.assign(kAllCriteria.begin(), kAllCriteria.end());
  }
  cfg.seed = doc.at("seed").get<uint64_t>();
  if (doc.contains("schedule_csv")) {
    cfg.schedule_csv = doc.at("schedule_csv").get<std::string>();
  }
  if (doc.contains("synthetic_matches")) {
    cfg.synthetic_matches = doc.at("synthetic_matches").get<int>();
  }
  return cfg;
}

std::string summary_to_csv(const ExperimentSummary& summary,
                           const std::vector<Criterion>& criteria) {
  std::ostringstream out;
  out << "method,criterion,mean_c,sd_c,mse,minr,rc,"
         "oracle_mspe_y,oracle_mspe_p,oracle_mspe_d,"
         "est_mspe_y,est_mspe_p,est_mspe_d\n";
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    out << ',' << buf;
  };
  std::vector<std::string> wanted;
  wanted.reserve(criteria.size());
  for (Criterion c : criteria) wanted.push_back(criterion_name(c));
  for (const SummaryRow& row : summary.rows) {
    if (row.criterion != "none" &&
        std::find(wanted.begin(), wanted.end(), row.criterion) ==
            wanted.end()) {
      continue;
    }
    out << row.method << ',' << row.criterion;
    num(row.mean_c);
    num(row.sd_c);
    num(row.mse);
    num(row.minr);
    num(row.rc);
    num(row.oracle.y);
    num(row.oracle.p);
    num(row.oracle.d);
    num(row.est_mspe_y);
    num(row.est_mspe_p);
    num(row.est_mspe_d);
    out << '\n';
  }
  return out.str();
}

}  // namespace wmprc
