#pragma once

#include <Eigen/Dense>
#include <array>
#include <limits>
#include <string>
#include <vector>

#include "wmprc/model.hpp"

namespace wmprc {

// Model-selection criteria. The MSPEB variants are log-MSPE plus the
// c ln(M)/M penalty.
enum class Criterion {
  kMspeY,
  kMspeP,
  kMspeD,
  kMspebY,
  kMspebP,
  kMspebD,
};

inline constexpr std::array<Criterion, 6> kAllCriteria = {
    Criterion::kMspeY,  Criterion::kMspeP,  Criterion::kMspeD,
    Criterion::kMspebY, Criterion::kMspebP, Criterion::kMspebD};

std::string criterion_name(Criterion c);
Criterion parse_criterion(const std::string& name);
bool is_mspeb(Criterion c);
// The MSPE criterion a MSPEB variant penalizes (identity on plain MSPEs).
Criterion base_criterion(Criterion c);

// Per-match leave-one-out quantities.
struct LooRecord {
  double leverage = 0.0;   // h_ss
  double y_hat = 0.0;      // prediction with match s deleted
  double p_hat = 0.0;      // probability predictor from the deleted fit
  double d_hat = 0.0;      // outcome predictor
};

struct LooSet {
  int cluster_count = 0;
  bool feasible = true;    // false when some h_ss >= 1 - 1e-10
  std::vector<LooRecord> records;
};

// Estimated criteria for one candidate. Infeasible rows carry +inf values
// so that selection skips them.
struct CriterionRow {
  int cluster_count = 0;
  bool feasible = true;
  double mspe_y = std::numeric_limits<double>::infinity();
  double mspe_p = std::numeric_limits<double>::infinity();
  double mspe_d = std::numeric_limits<double>::infinity();
  double pcp = -std::numeric_limits<double>::infinity();
  double mspeb_y = std::numeric_limits<double>::infinity();
  double mspeb_p = std::numeric_limits<double>::infinity();
  double mspeb_d = std::numeric_limits<double>::infinity();

  double value(Criterion c) const;
};

// Leverages h_ss = z_s' (Z'X'XZ)^+ z_s over the cluster-collapsed design,
// z_s the s-th reduced row.
Eigen::VectorXd leverage(const DesignMatrix& design, const ClusterAssignment& g);

// Leave-one-out predictions through the rank-one downdate
//   theta^{-s} = theta - (A^+ z_s) e_s / (1 - h_ss),
// which reproduces the delete-and-refit estimates whenever h_ss < 1. The
// empirical CDF behind p_hat is rebuilt from the M-1 recomputed residuals of
// the deleted fit. A leverage within 1e-10 of 1 marks the whole candidate
// infeasible (the deleted problem no longer identifies that prediction).
LooSet loo_predictions(const ClusteredModel& model, const DesignMatrix& design);

// Aggregates a LooSet into the six estimated criteria plus PCP.
CriterionRow mspe_hats(const LooSet& loo, const DesignMatrix& design);

// Convenience: full evaluation of one candidate.
CriterionRow evaluate_candidate(const ClusteredModel& model,
                                const DesignMatrix& design);

}  // namespace wmprc
