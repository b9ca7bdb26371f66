#include "wmprc/crossval.hpp"

#include <cmath>

namespace wmprc {

std::string criterion_name(Criterion c) {
  switch (c) {
    case Criterion::kMspeY: return "mspe_y";
    case Criterion::kMspeP: return "mspe_p";
    case Criterion::kMspeD: return "mspe_d";
    case Criterion::kMspebY: return "mspeb_y";
    case Criterion::kMspebP: return "mspeb_p";
    case Criterion::kMspebD: return "mspeb_d";
  }
  throw ValidationError("unknown criterion");
}

Criterion parse_criterion(const std::string& name) {
  for (Criterion c : kAllCriteria) {
    if (criterion_name(c) == name) return c;
  }
  throw ValidationError("unknown criterion name: " + name);
}

bool is_mspeb(Criterion c) {
  return c == Criterion::kMspebY || c == Criterion::kMspebP ||
         c == Criterion::kMspebD;
}

Criterion base_criterion(Criterion c) {
  switch (c) {
    case Criterion::kMspebY: return Criterion::kMspeY;
    case Criterion::kMspebP: return Criterion::kMspeP;
    case Criterion::kMspebD: return Criterion::kMspeD;
    default: return c;
  }
}

double CriterionRow::value(Criterion c) const {
  switch (c) {
    case Criterion::kMspeY: return mspe_y;
    case Criterion::kMspeP: return mspe_p;
    case Criterion::kMspeD: return mspe_d;
    case Criterion::kMspebY: return mspeb_y;
    case Criterion::kMspebP: return mspeb_p;
    case Criterion::kMspebD: return mspeb_d;
  }
  throw ValidationError("unknown criterion");
}

namespace {

constexpr double kLeverageTol = 1e-10;

// Reduced rows and hat matrix for one candidate: H = XZ A^+ (XZ)'.
struct HatWorkspace {
  Eigen::MatrixXd reduced_rows;  // c x M, column s = z_s
  Eigen::MatrixXd pinv_rows;     // c x M, column s = A^+ z_s
  Eigen::MatrixXd hat;           // M x M
};

HatWorkspace build_hat(const DesignMatrix& design, const ClusterAssignment& g) {
  const int m = design.match_count();
  const int c = g.cluster_count();
  HatWorkspace ws;
  ws.reduced_rows = Eigen::MatrixXd::Zero(c, m);
  for (int s = 0; s < m; ++s) {
    for (int j = 0; j < 3; ++j) {
      ws.reduced_rows(g.label(design.red(s)[j]), s) += 1.0;
      ws.reduced_rows(g.label(design.blue(s)[j]), s) -= 1.0;
    }
  }
  detail::ClusterSolver solver(design, g);
  ws.pinv_rows = solver.apply_pinv(ws.reduced_rows);
  ws.hat = ws.reduced_rows.transpose() * ws.pinv_rows;
  return ws;
}

}  // namespace

Eigen::VectorXd leverage(const DesignMatrix& design,
                         const ClusterAssignment& g) {
  if (g.robot_count() != design.robot_count()) {
    throw ValidationError("assignment does not cover the design roster");
  }
  HatWorkspace ws = build_hat(design, g);
  return ws.hat.diagonal();
}

LooSet loo_predictions(const ClusteredModel& model,
                       const DesignMatrix& design) {
  const int m = design.match_count();
  HatWorkspace ws = build_hat(design, model.assignment);

  LooSet out;
  out.cluster_count = model.cluster_count();
  out.records.resize(m);
  for (int s = 0; s < m; ++s) {
    const double h = ws.hat(s, s);
    out.records[s].leverage = h;
    if (h >= 1.0 - kLeverageTol) out.feasible = false;
  }
  if (!out.feasible) return out;

  const Eigen::VectorXd& y = design.y();
  const Eigen::VectorXd& e = model.residuals;
  for (int s = 0; s < m; ++s) {
    LooRecord& rec = out.records[s];
    const double gamma = e[s] / (1.0 - rec.leverage);
    rec.y_hat = y[s] - gamma;
    // Residuals of the other matches under the deleted fit are
    // e_t^{-s} = e_t + H_ts * gamma; p_hat counts those above -y_hat,
    // i.e. 1 - F^{-s}(-y_hat) for the empirical CDF over M-1 values.
    int above = 0;
    const double threshold = -rec.y_hat;
    for (int t = 0; t < m; ++t) {
      if (t == s) continue;
      if (e[t] + ws.hat(t, s) * gamma > threshold) ++above;
    }
    rec.p_hat = static_cast<double>(above) / static_cast<double>(m - 1);
    rec.d_hat = outcome_from_prob(rec.p_hat);
  }
  return out;
}

CriterionRow mspe_hats(const LooSet& loo, const DesignMatrix& design) {
  CriterionRow row;
  row.cluster_count = loo.cluster_count;
  row.feasible = loo.feasible;
  if (!loo.feasible) return row;

  const int m = design.match_count();
  const Eigen::VectorXd& y = design.y();
  const Eigen::VectorXd& d = design.outcome();
  // Score errors at numerical roundoff level are exact zeros of the
  // underlying least squares (noiseless data); counting them would break
  // the exact-tie / smallest-c selection rule.
  const double zero_scale = 1e-8 * std::max(1.0, y.cwiseAbs().maxCoeff());
  double sum_y = 0.0, sum_p = 0.0, sum_d = 0.0;
  for (int s = 0; s < m; ++s) {
    const LooRecord& rec = loo.records[s];
    const double dy = y[s] - rec.y_hat;
    if (std::fabs(dy) > zero_scale) sum_y += dy * dy;
    const double dp = d[s] - rec.p_hat;
    sum_p += dp * dp;
    const double dd = d[s] - rec.d_hat;
    sum_d += dd * dd;
  }
  row.mspe_y = sum_y / m;
  row.mspe_p = sum_p / m;
  row.mspe_d = sum_d / m;
  row.pcp = 1.0 - row.mspe_d;
  const double penalty = loo.cluster_count * std::log(double(m)) / m;
  row.mspeb_y = std::log(row.mspe_y) + penalty;
  row.mspeb_p = std::log(row.mspe_p) + penalty;
  row.mspeb_d = std::log(row.mspe_d) + penalty;
  return row;
}

CriterionRow evaluate_candidate(const ClusteredModel& model,
                                const DesignMatrix& design) {
  return mspe_hats(loo_predictions(model, design), design);
}

}  // namespace wmprc
