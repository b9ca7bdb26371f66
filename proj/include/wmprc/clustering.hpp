#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "wmprc/crossval.hpp"
#include "wmprc/model.hpp"

namespace wmprc {

// Candidate-generation procedures. LCT chains are pure sequential merges;
// TCL interleaves each merge with the breakout-and-reassign refinement and
// feeds the refined strengths into the next merge; ALT keeps the LCT merge
// backbone but attaches the refinement to each emitted candidate.
enum class Method { kTcl, kLct, kAlt };

std::string method_name(Method m);
Method parse_method(const std::string& name);

struct RefinementOptions {
  double epsilon = 1e-8;  // Euclidean tolerance on the length-K strengths
  int max_iterations = 100;
};

// History of one breakout-and-reassign refinement run.
struct RefinementTrace {
  int iterations = 0;  // m_o
  bool converged = false;
  double epsilon = 1e-8;
  std::vector<Eigen::VectorXd> strength_history;  // beta^(0) .. beta^(m_o)
};

// Trace of chain generation, for diffing against a reference run. One merge
// event per hierarchical step and one event per refinement iteration.
struct TraceEvent {
  enum class Kind { kMerge, kRefineIteration } kind;
  int cluster_count = 0;       // clusters after the event
  int merged_low = 0;          // merge: canonical labels of the merged pair
  int merged_high = 0;
  int iteration = 0;           // refinement: m
  std::vector<int> labels;     // assignment after the event (0-based)
};

struct ChainTrace {
  std::vector<TraceEvent> events;
};

struct Candidate {
  ClusteredModel model;
  CriterionRow row;
};

// One candidate per c = K..2, stored descending; candidate(c) fetches by
// cluster count. The c = K entry is the WMPR fit.
struct CandidateChain {
  Method method = Method::kTcl;
  std::vector<Candidate> candidates;
  ChainTrace trace;

  const Candidate& candidate(int cluster_count) const;
};

// Agglomerative centroid-linkage on scalars: repeatedly merges the two
// clusters whose means are closest until `target` clusters remain. Clusters
// live in a stable slot list (initial slots follow input order; a merged
// pair keeps the lower slot); distance ties pick the lexicographically
// smallest slot pair. Output labels are canonical ascending by centroid.
ClusterAssignment centroid_linkage(const Eigen::VectorXd& values, int target);

// Merges the pair of cluster strengths with minimal absolute difference
// (ties: lexicographically smallest label pair). Labels of the result are
// canonical ascending by the merged-centroid strengths.
ClusterAssignment merge_closest(const ClusteredModel& model);

// Step 3.2.1 strengths: robots in singleton clusters keep their current
// estimate; each robot in a cluster of size >= 2 gets its element of the
// c+1-cluster fit with that robot split into a new singleton.
Eigen::VectorXd breakout_strengths(const DesignMatrix& design,
                                   const ClusteredModel& model);

// Steps 3.2-3.3: iterate breakout strengths -> centroid linkage at the same
// cluster count -> refit, until the strength vector comes within epsilon of
// any earlier iterate or the cap is reached.
std::pair<ClusteredModel, RefinementTrace> refine_nonhierarchical(
    const DesignMatrix& design, const ClusterAssignment& g,
    const RefinementOptions& options = {});

// Full chain for one method, with criteria attached to every candidate.
CandidateChain generate_candidates(const DesignMatrix& design, Method method,
                                   const RefinementOptions& options = {});

// First event where two traces disagree, if any.
struct TraceDivergence {
  int event_index = 0;
  std::string description;
};
std::optional<TraceDivergence> trace_diff(const ChainTrace& actual,
                                          const ChainTrace& reference);

}  // namespace wmprc
