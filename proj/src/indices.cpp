#include "wmprc/indices.hpp"

#include <cmath>

namespace wmprc {

namespace {

// Index of the reference cluster strength nearest to `value`; ties resolve
// to the smallest cluster index.
int nearest_cluster(double value, const Eigen::VectorXd& reference) {
  int best = 0;
  double best_dist = std::fabs(value - reference[0]);
  for (int j = 1; j < reference.size(); ++j) {
    const double d = std::fabs(value - reference[j]);
    if (d < best_dist) {
      best_dist = d;
      best = j;
    }
  }
  return best;
}

// Fraction of robots whose strengths in `mapped` land on their cluster in
// the reference model.
double directional_minr(const Eigen::VectorXd& mapped_beta,
                        const Eigen::VectorXd& reference_theta,
                        const std::vector<int>& reference_labels) {
  const int k = static_cast<int>(mapped_beta.size());
  int agree = 0;
  for (int i = 0; i < k; ++i) {
    if (nearest_cluster(mapped_beta[i], reference_theta) ==
        reference_labels[i]) {
      ++agree;
    }
  }
  return static_cast<double>(agree) / k;
}

double rc_pairs(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const int k = static_cast<int>(a.size());
  if (k < 2) throw ValidationError("rank correlation requires K >= 2");
  long long numer = 0;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (i == j) continue;
      const double da = a[i] - a[j];
      const double db = b[i] - b[j];
      if (da * db > 0.0 || (da == 0.0 && db == 0.0)) ++numer;
    }
  }
  return static_cast<double>(numer) /
         (static_cast<double>(k) * (k - 1));
}

void check_same_roster(int ka, int kb) {
  if (ka != kb) throw ValidationError("models cover different rosters");
}

}  // namespace

double minr(const ClusteredModel& a, const ClusteredModel& b) {
  check_same_roster(a.robot_count(), b.robot_count());
  const int ca = a.cluster_count();
  const int cb = b.cluster_count();
  if (ca > cb) {
    return directional_minr(a.beta, b.theta, b.assignment.labels());
  }
  if (ca < cb) {
    return directional_minr(b.beta, a.theta, a.assignment.labels());
  }
  return 0.5 * (directional_minr(a.beta, b.theta, b.assignment.labels()) +
                directional_minr(b.beta, a.theta, a.assignment.labels()));
}

double minr_vs_truth(const ClusteredModel& model, const TruthSpec& truth) {
  check_same_roster(model.robot_count(), truth.robot_count());
  return directional_minr(model.beta, truth.strengths,
                          truth.assignment.labels());
}

double rank_correlation(const ClusteredModel& a, const ClusteredModel& b) {
  check_same_roster(a.robot_count(), b.robot_count());
  return rc_pairs(a.beta, b.beta);
}

double rank_correlation_vs_truth(const ClusteredModel& model,
                                 const TruthSpec& truth) {
  check_same_roster(model.robot_count(), truth.robot_count());
  return rc_pairs(model.beta, truth.expanded());
}

std::string classify_strength(double value) {
  if (value >= 0.9) return "outstanding";
  if (value >= 0.8) return "excellent";
  if (value >= 0.7) return "acceptable";
  return "poor";
}

}  // namespace wmprc
