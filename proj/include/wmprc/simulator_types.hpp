#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "wmprc/model.hpp"

namespace wmprc {

// Simulation ground truth: clusters, true strengths and the error scale.
struct TruthSpec {
  std::string name;                 // scenario tag, e.g. "M1"
  ClusterAssignment assignment;     // g^o over the schedule's K robots
  Eigen::VectorXd strengths;        // length c_o, cluster strengths (points)
  double sigma = 0.0;               // error standard deviation (points)

  int cluster_count() const { return assignment.cluster_count(); }
  int robot_count() const { return assignment.robot_count(); }
  // Per-robot strengths beta_{o, g_i}.
  Eigen::VectorXd expanded() const;
};

}  // namespace wmprc
