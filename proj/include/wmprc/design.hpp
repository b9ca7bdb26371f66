#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "wmprc/types.hpp"

namespace wmprc {

// M x K alliance design. Row s has +1 in the three red columns, -1 in the
// three blue columns, 0 elsewhere. Only the six signed column indices are
// stored per row; the Gram matrix X'X and X'Y are kept precomputed because
// every cluster-level fit aggregates them instead of touching X.
//
// The response Y is the red-minus-blue score difference and the outcome
// vector D is 1 / 0.5 / 0 for Y positive / zero / negative.
class DesignMatrix {
 public:
  DesignMatrix(std::vector<std::array<int, 3>> red,
               std::vector<std::array<int, 3>> blue, Eigen::VectorXd y, int k);

  int match_count() const { return m_; }
  int robot_count() const { return k_; }

  const std::array<int, 3>& red(int s) const { return red_[s]; }
  const std::array<int, 3>& blue(int s) const { return blue_[s]; }
  const Eigen::VectorXd& y() const { return y_; }
  const Eigen::VectorXd& outcome() const { return outcome_; }
  const Eigen::MatrixXd& gram() const { return gram_; }
  const Eigen::VectorXd& xty() const { return xty_; }

  // x_s' beta for a per-robot strength vector.
  double row_dot(int s, const Eigen::VectorXd& beta) const;

  // Dense materializations; used by oracles, prediction rows and tests.
  Eigen::MatrixXd dense() const;
  Eigen::VectorXd dense_row(int s) const;

  // Same schedule with a different response (simulation replications).
  DesignMatrix with_response(Eigen::VectorXd y) const;

  // Schedule with match s removed (delete-one refits).
  DesignMatrix without_match(int s) const;

 private:
  int m_ = 0;
  int k_ = 0;
  std::vector<std::array<int, 3>> red_, blue_;
  Eigen::VectorXd y_, outcome_;
  Eigen::MatrixXd gram_;
  Eigen::VectorXd xty_;
};

// Outcome coding for a score difference: 1 win, 0.5 draw, 0 loss.
double outcome_of(double score_diff);

// Builds the design from validated match records. Throws IngestError for a
// robot missing from the roster (naming match and identifier) and
// ValidationError for duplicate robots within a match.
DesignMatrix build_design(const std::vector<MatchRecord>& matches,
                          const RobotRoster& roster);

// Length-K prediction row for a hypothetical match between two alliances.
Eigen::VectorXd make_design_row(const RobotRoster& roster,
                                const std::array<std::string, 3>& red,
                                const std::array<std::string, 3>& blue);

// Checks a prediction row: entries in {-1, 0, +1}, exactly three of each
// nonzero sign. Throws ValidationError otherwise.
void validate_design_row(const Eigen::VectorXd& row);

}  // namespace wmprc
