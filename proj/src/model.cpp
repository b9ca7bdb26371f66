#include "wmprc/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace wmprc {

ClusterAssignment::ClusterAssignment(int cluster_count, std::vector<int> labels)
    : c_(cluster_count), labels_(std::move(labels)) {
  if (c_ < 1) throw ValidationError("cluster count must be positive");
  if (labels_.empty()) throw ValidationError("assignment must cover robots");
  sizes_.assign(c_, 0);
  for (int g : labels_) {
    if (g < 0 || g >= c_) throw ValidationError("cluster label out of range");
    ++sizes_[g];
  }
  for (int k = 0; k < c_; ++k) {
    if (sizes_[k] == 0) {
      throw ValidationError("cluster " + std::to_string(k + 1) + " is empty");
    }
  }
}

ClusterAssignment ClusterAssignment::singletons(int k) {
  std::vector<int> labels(k);
  std::iota(labels.begin(), labels.end(), 0);
  return ClusterAssignment(k, std::move(labels));
}

ClusterAssignment ClusterAssignment::single_cluster(int k) {
  return ClusterAssignment(1, std::vector<int>(k, 0));
}

std::vector<int> ClusterAssignment::relabel_ascending(
    const Eigen::VectorXd& strengths) {
  std::vector<int> order(c_);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return strengths[a] < strengths[b];
  });
  std::vector<int> perm(c_);
  for (int rank = 0; rank < c_; ++rank) perm[order[rank]] = rank;
  for (int& g : labels_) g = perm[g];
  std::vector<int> new_sizes(c_);
  for (int k = 0; k < c_; ++k) new_sizes[perm[k]] = sizes_[k];
  sizes_ = std::move(new_sizes);
  return perm;
}

EmpiricalCdf::EmpiricalCdf(const Eigen::VectorXd& values)
    : sorted_(values.data(), values.data() + values.size()) {
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double t) const {
  auto it = std::upper_bound(sorted_.begin(), sorted_.end(), t);
  return static_cast<double>(it - sorted_.begin()) /
         static_cast<double>(sorted_.size());
}

namespace detail {

namespace {

// Helmert basis of the orthogonal complement of the all-ones vector in R^c:
// v_j = (1,...,1,-j,0,...,0)/sqrt(j(j+1)) with j leading ones, j = 1..c-1.
// Q' x via prefix sums, Q phi via suffix sums; both O(c).
Eigen::VectorXd helmert_t(const Eigen::VectorXd& x) {
  const int c = static_cast<int>(x.size());
  Eigen::VectorXd out(c - 1);
  double prefix = 0.0;
  for (int j = 1; j < c; ++j) {
    prefix += x[j - 1];
    out[j - 1] = (prefix - j * x[j]) / std::sqrt(double(j) * (j + 1));
  }
  return out;
}

Eigen::VectorXd helmert(const Eigen::VectorXd& phi) {
  const int c = static_cast<int>(phi.size()) + 1;
  Eigen::VectorXd out(c);
  double suffix = 0.0;
  for (int i = c; i >= 1; --i) {
    double v = suffix;
    if (i >= 2) v += -double(i - 1) * phi[i - 2] / std::sqrt(double(i - 1) * i);
    out[i - 1] = v;
    if (i >= 2) suffix += phi[i - 2] / std::sqrt(double(i - 1) * i);
    // after this step suffix = sum_{j >= i-1} a_j phi_j with a_j = 1/sqrt(j(j+1))
  }
  return out;
}

Eigen::MatrixXd helmert_t_cols(const Eigen::MatrixXd& m) {
  Eigen::MatrixXd out(m.rows() - 1, m.cols());
  for (int j = 0; j < m.cols(); ++j) out.col(j) = helmert_t(m.col(j));
  return out;
}

Eigen::MatrixXd helmert_cols(const Eigen::MatrixXd& m) {
  Eigen::MatrixXd out(m.rows() + 1, m.cols());
  for (int j = 0; j < m.cols(); ++j) out.col(j) = helmert(m.col(j));
  return out;
}

}  // namespace

Eigen::MatrixXd reduced_design(const DesignMatrix& design,
                               const ClusterAssignment& g) {
  Eigen::MatrixXd xz = Eigen::MatrixXd::Zero(design.match_count(),
                                             g.cluster_count());
  for (int s = 0; s < design.match_count(); ++s) {
    for (int j = 0; j < 3; ++j) {
      xz(s, g.label(design.red(s)[j])) += 1.0;
      xz(s, g.label(design.blue(s)[j])) -= 1.0;
    }
  }
  return xz;
}

Eigen::VectorXd reduced_rhs(const DesignMatrix& design,
                            const ClusterAssignment& g) {
  Eigen::VectorXd b = Eigen::VectorXd::Zero(g.cluster_count());
  for (int i = 0; i < design.robot_count(); ++i) {
    b[g.label(i)] += design.xty()[i];
  }
  return b;
}

ClusterSolver::ClusterSolver(const DesignMatrix& design,
                             const ClusterAssignment& g)
    : c_(g.cluster_count()) {
  // A = Z'(X'X)Z, aggregated from the exact integer Gram matrix.
  a_ = Eigen::MatrixXd::Zero(c_, c_);
  const Eigen::MatrixXd& gram = design.gram();
  const int k = design.robot_count();
  for (int i = 0; i < k; ++i) {
    const int gi = g.label(i);
    for (int j = 0; j < k; ++j) a_(gi, g.label(j)) += gram(i, j);
  }
  if (c_ == 1) {
    svd_path_ = false;  // XZ is the zero column; min-norm theta is 0.
    return;
  }
  Eigen::MatrixXd reduced = helmert_t_cols(helmert_t_cols(a_).transpose());
  llt_.compute(reduced);
  bool healthy = llt_.info() == Eigen::Success;
  if (healthy) {
    // A rank deficiency beyond the all-ones direction shows up as a pivot
    // at roundoff level; Cholesky may still "succeed" on it, so inspect the
    // pivot spread. Genuine spectra of these integer normal matrices sit
    // far above this cutoff.
    Eigen::VectorXd pivots = llt_.matrixLLT().diagonal();
    healthy = pivots.minCoeff() > 1e-6 * pivots.maxCoeff();
  }
  if (!healthy) build_svd_fallback(design, g);
}

void ClusterSolver::build_svd_fallback(const DesignMatrix& design,
                                       const ClusterAssignment& g) {
  svd_path_ = true;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(reduced_design(design, g),
                                     Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double cutoff = 1e-10 * sv[0];
  int rank = 0;
  while (rank < sv.size() && sv[rank] > cutoff) ++rank;
  v_range_ = svd.matrixV().leftCols(rank);
  inv_eigs_ = sv.head(rank).array().square().inverse();
}

Eigen::VectorXd ClusterSolver::apply_pinv(const Eigen::VectorXd& v) const {
  if (c_ == 1) return Eigen::VectorXd::Zero(1);
  if (svd_path_) {
    return v_range_ * (inv_eigs_.asDiagonal() * (v_range_.transpose() * v));
  }
  return helmert(llt_.solve(helmert_t(v)));
}

Eigen::MatrixXd ClusterSolver::apply_pinv(const Eigen::MatrixXd& v) const {
  if (c_ == 1) return Eigen::MatrixXd::Zero(1, v.cols());
  if (svd_path_) {
    return v_range_ * (inv_eigs_.asDiagonal() * (v_range_.transpose() * v));
  }
  return helmert_cols(llt_.solve(helmert_t_cols(v)));
}

Eigen::VectorXd ClusterSolver::min_norm_theta(const Eigen::VectorXd& b) const {
  return apply_pinv(b);
}

Eigen::VectorXd fit_theta(const DesignMatrix& design,
                          const ClusterAssignment& g) {
  ClusterSolver solver(design, g);
  Eigen::VectorXd theta = solver.min_norm_theta(reduced_rhs(design, g));
  // Shift onto sum_k |G_k| theta_k = 0; the constant direction is in the
  // null space of XZ so fitted values are unchanged.
  double weighted = 0.0;
  for (int k = 0; k < g.cluster_count(); ++k) {
    weighted += g.sizes()[k] * theta[k];
  }
  theta.array() -= weighted / design.robot_count();
  return theta;
}

}  // namespace detail

ClusteredModel fit_wmprc(const DesignMatrix& design, ClusterAssignment g) {
  if (g.robot_count() != design.robot_count()) {
    throw ValidationError("assignment does not cover the design roster");
  }
  Eigen::VectorXd theta = detail::fit_theta(design, g);
  std::vector<int> perm = g.relabel_ascending(theta);
  Eigen::VectorXd sorted_theta(theta.size());
  for (int k = 0; k < theta.size(); ++k) sorted_theta[perm[k]] = theta[k];

  const int k_robots = design.robot_count();
  Eigen::VectorXd beta(k_robots);
  for (int i = 0; i < k_robots; ++i) beta[i] = sorted_theta[g.label(i)];

  const int m = design.match_count();
  Eigen::VectorXd residuals(m);
  for (int s = 0; s < m; ++s) {
    residuals[s] = design.y()[s] - design.row_dot(s, beta);
  }
  ClusteredModel model{std::move(g), std::move(sorted_theta), std::move(beta),
                       residuals, residuals.squaredNorm(),
                       EmpiricalCdf(residuals)};
  return model;
}

double predict_score(const ClusteredModel& model, const Eigen::VectorXd& x_o) {
  if (x_o.size() != model.beta.size()) {
    throw ValidationError("prediction row length does not match roster");
  }
  validate_design_row(x_o);
  return x_o.dot(model.beta);
}

double predict_prob(const ClusteredModel& model, const Eigen::VectorXd& x_o) {
  return 1.0 - model.cdf(-predict_score(model, x_o));
}

double outcome_from_prob(double p) {
  if (p - 0.5 > 0.0) return 1.0;
  if (p - 0.5 == 0.0) return 0.5;
  return 0.0;
}

double predict_outcome(const ClusteredModel& model, const Eigen::VectorXd& x_o) {
  return outcome_from_prob(predict_prob(model, x_o));
}

}  // namespace wmprc
