#pragma once

#include <Eigen/Dense>
#include <vector>

#include "wmprc/design.hpp"

namespace wmprc {

// Cluster labels for the K robots, 0-based, every label in [0, c) used at
// least once. Labels are canonical when clusters are numbered in ascending
// order of their defining strength; fitting and the clustering operations
// re-establish that ordering.
class ClusterAssignment {
 public:
  ClusterAssignment(int cluster_count, std::vector<int> labels);

  static ClusterAssignment singletons(int k);
  static ClusterAssignment single_cluster(int k);

  int cluster_count() const { return c_; }
  int robot_count() const { return static_cast<int>(labels_.size()); }
  int label(int robot) const { return labels_[robot]; }
  const std::vector<int>& labels() const { return labels_; }
  const std::vector<int>& sizes() const { return sizes_; }

  // Relabels clusters so that cluster k gets rank k under ascending
  // `strengths` (ties keep the current label order). Returns the permutation
  // applied: new_label = perm[old_label].
  std::vector<int> relabel_ascending(const Eigen::VectorXd& strengths);

  bool operator==(const ClusterAssignment& o) const {
    return c_ == o.c_ && labels_ == o.labels_;
  }

 private:
  int c_;
  std::vector<int> labels_;
  std::vector<int> sizes_;
};

// Right-continuous empirical distribution of residuals:
// F(t) = #{e_s <= t} / M.
class EmpiricalCdf {
 public:
  explicit EmpiricalCdf(const Eigen::VectorXd& values);
  EmpiricalCdf() = default;

  double operator()(double t) const;
  int count() const { return static_cast<int>(sorted_.size()); }

 private:
  std::vector<double> sorted_;
};

// A fitted WMPRC instance: assignment, cluster strengths theta (ascending),
// per-robot strengths beta (beta_i = theta[g_i], sum over robots = 0),
// residuals and their empirical distribution.
struct ClusteredModel {
  ClusterAssignment assignment;
  Eigen::VectorXd theta;
  Eigen::VectorXd beta;
  Eigen::VectorXd residuals;
  double rss = 0.0;
  EmpiricalCdf cdf;

  int cluster_count() const { return assignment.cluster_count(); }
  int robot_count() const { return assignment.robot_count(); }
};

namespace detail {

// Least-squares machinery for one (design, assignment): the cluster-level
// normal matrix A = Z'X'XZ, its pseudo-inverse action, and the min-norm
// solution of min ||Y - XZ theta||.
//
// The all-ones vector is always in the null space of XZ (each design row
// sums to zero), so the generic rank of A is c-1. The fast path solves on
// the orthogonal complement of ones via the Helmert basis and Cholesky; if
// that fails (additional rank deficiency) it falls back to an SVD of the
// reduced design with singular values below 1e-10 * largest treated as zero.
class ClusterSolver {
 public:
  ClusterSolver(const DesignMatrix& design, const ClusterAssignment& g);

  int cluster_count() const { return c_; }
  const Eigen::MatrixXd& normal_matrix() const { return a_; }

  // A^+ v (symmetric pseudo-inverse action).
  Eigen::VectorXd apply_pinv(const Eigen::VectorXd& v) const;
  Eigen::MatrixXd apply_pinv(const Eigen::MatrixXd& v) const;

  // Minimum-norm solution of the cluster-level least squares.
  Eigen::VectorXd min_norm_theta(const Eigen::VectorXd& b) const;

 private:
  void build_svd_fallback(const DesignMatrix& design,
                          const ClusterAssignment& g);

  int c_;
  Eigen::MatrixXd a_;
  bool svd_path_ = false;
  Eigen::LLT<Eigen::MatrixXd> llt_;  // of the Helmert-reduced normal matrix
  Eigen::MatrixXd v_range_;          // SVD fallback: right vectors, kept ranks
  Eigen::VectorXd inv_eigs_;         // 1 / sigma_r^2
};

// Reduced design XZ as a dense M x c matrix.
Eigen::MatrixXd reduced_design(const DesignMatrix& design,
                               const ClusterAssignment& g);

// Cluster-level right-hand side b = Z'X'Y.
Eigen::VectorXd reduced_rhs(const DesignMatrix& design,
                            const ClusterAssignment& g);

// Fits theta only (min-norm then centered to sum_k |G_k| theta_k = 0),
// without relabeling. Shared by fit_wmprc and the breakout refits.
Eigen::VectorXd fit_theta(const DesignMatrix& design,
                          const ClusterAssignment& g);

}  // namespace detail

// Constrained least squares for the given clusters: theta minimizes
// ||Y - XZ theta||, selected among minimizers as the one with
// sum_k |G_k| theta_k = 0 (min-norm solve then a constant shift, the shift
// direction lying in the design null space). Clusters are relabeled to
// ascending-strength order.
ClusteredModel fit_wmprc(const DesignMatrix& design, ClusterAssignment g);

// x_o' beta for a validated prediction row.
double predict_score(const ClusteredModel& model, const Eigen::VectorXd& x_o);

// p = 1 - F(-x_o' beta) with F the residual empirical CDF.
double predict_prob(const ClusteredModel& model, const Eigen::VectorXd& x_o);

// I(p - 0.5 > 0) + 0.5 I(p - 0.5 = 0), evaluated on the computed double.
double outcome_from_prob(double p);
double predict_outcome(const ClusteredModel& model, const Eigen::VectorXd& x_o);

}  // namespace wmprc
