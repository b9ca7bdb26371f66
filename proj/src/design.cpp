#include "wmprc/design.hpp"

#include <string>

namespace wmprc {

double outcome_of(double score_diff) {
  if (score_diff > 0) return 1.0;
  if (score_diff < 0) return 0.0;
  return 0.5;
}

DesignMatrix::DesignMatrix(std::vector<std::array<int, 3>> red,
                           std::vector<std::array<int, 3>> blue,
                           Eigen::VectorXd y, int k)
    : m_(static_cast<int>(red.size())),
      k_(k),
      red_(std::move(red)),
      blue_(std::move(blue)),
      y_(std::move(y)) {
  if (m_ < 1) throw ValidationError("design requires at least one match");
  if (static_cast<int>(blue_.size()) != m_ || y_.size() != m_) {
    throw ValidationError("design rows, blue alliances and responses disagree");
  }
  outcome_.resize(m_);
  for (int s = 0; s < m_; ++s) outcome_[s] = outcome_of(y_[s]);

  // Gram and X'Y from the six nonzeros per row.
  gram_ = Eigen::MatrixXd::Zero(k_, k_);
  xty_ = Eigen::VectorXd::Zero(k_);
  for (int s = 0; s < m_; ++s) {
    std::array<std::pair<int, double>, 6> nz;
    for (int j = 0; j < 3; ++j) {
      nz[j] = {red_[s][j], 1.0};
      nz[3 + j] = {blue_[s][j], -1.0};
    }
    for (const auto& [i, si] : nz) {
      if (i < 0 || i >= k_) throw ValidationError("robot index out of range");
      xty_[i] += si * y_[s];
      for (const auto& [j, sj] : nz) gram_(i, j) += si * sj;
    }
  }
}

double DesignMatrix::row_dot(int s, const Eigen::VectorXd& beta) const {
  double v = 0.0;
  for (int j = 0; j < 3; ++j) v += beta[red_[s][j]] - beta[blue_[s][j]];
  return v;
}

Eigen::MatrixXd DesignMatrix::dense() const {
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(m_, k_);
  for (int s = 0; s < m_; ++s) {
    for (int j = 0; j < 3; ++j) {
      x(s, red_[s][j]) = 1.0;
      x(s, blue_[s][j]) = -1.0;
    }
  }
  return x;
}

Eigen::VectorXd DesignMatrix::dense_row(int s) const {
  Eigen::VectorXd row = Eigen::VectorXd::Zero(k_);
  for (int j = 0; j < 3; ++j) {
    row[red_[s][j]] = 1.0;
    row[blue_[s][j]] = -1.0;
  }
  return row;
}

DesignMatrix DesignMatrix::with_response(Eigen::VectorXd y) const {
  return DesignMatrix(red_, blue_, std::move(y), k_);
}

DesignMatrix DesignMatrix::without_match(int s) const {
  if (m_ < 2) throw ValidationError("cannot delete the only match");
  std::vector<std::array<int, 3>> red, blue;
  Eigen::VectorXd y(m_ - 1);
  int t = 0;
  for (int i = 0; i < m_; ++i) {
    if (i == s) continue;
    red.push_back(red_[i]);
    blue.push_back(blue_[i]);
    y[t++] = y_[i];
  }
  return DesignMatrix(std::move(red), std::move(blue), std::move(y), k_);
}

DesignMatrix build_design(const std::vector<MatchRecord>& matches,
                          const RobotRoster& roster) {
  if (matches.empty()) throw ValidationError("no matches to build design from");
  std::vector<std::array<int, 3>> red, blue;
  Eigen::VectorXd y(static_cast<int>(matches.size()));
  int s = 0;
  for (const auto& match : matches) {
    validate_match(match);
    std::array<int, 3> r, b;
    for (int j = 0; j < 3; ++j) {
      try {
        r[j] = roster.index_of(match.red[j]);
        b[j] = roster.index_of(match.blue[j]);
      } catch (const IngestError&) {
        const std::string& id = roster.contains(match.red[j]) ? match.blue[j]
                                                              : match.red[j];
        throw IngestError("match '" + match.match_id +
                          "': unknown robot identifier '" + id + "'");
      }
    }
    red.push_back(r);
    blue.push_back(b);
    y[s++] = match.score_diff();
  }
  return DesignMatrix(std::move(red), std::move(blue), std::move(y),
                      roster.size());
}

Eigen::VectorXd make_design_row(const RobotRoster& roster,
                                const std::array<std::string, 3>& red,
                                const std::array<std::string, 3>& blue) {
  MatchRecord probe{"hypothetical", red, blue, 0, 0};
  validate_match(probe);
  Eigen::VectorXd row = Eigen::VectorXd::Zero(roster.size());
  for (int j = 0; j < 3; ++j) {
    row[roster.index_of(red[j])] = 1.0;
    row[roster.index_of(blue[j])] = -1.0;
  }
  return row;
}

void validate_design_row(const Eigen::VectorXd& row) {
  int plus = 0, minus = 0;
  for (int i = 0; i < row.size(); ++i) {
    if (row[i] == 1.0) {
      ++plus;
    } else if (row[i] == -1.0) {
      ++minus;
    } else if (row[i] != 0.0) {
      throw ValidationError("design row entries must be -1, 0 or +1");
    }
  }
  if (plus != 3 || minus != 3) {
    throw ValidationError("design row must have three +1 and three -1 entries");
  }
}

}  // namespace wmprc
