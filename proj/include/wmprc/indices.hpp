#pragma once

#include <string>

#include "wmprc/model.hpp"
#include "wmprc/simulator_types.hpp"

namespace wmprc {

// Matching index of the nested relation between two fitted models. Each
// robot's strength in the larger-c model maps to the nearest cluster
// strength of the smaller-c (reference) model; the index is the fraction of
// robots whose mapped cluster agrees with their reference label. Equal
// cluster counts average the two directions. Nearest-cluster ties resolve to
// the smallest cluster index.
double minr(const ClusteredModel& a, const ClusteredModel& b);

// MINR against a simulation ground truth; the truth is always the reference.
double minr_vs_truth(const ClusteredModel& model, const TruthSpec& truth);

// Modified rank correlation: over ordered pairs i != j, the fraction that
// are strictly concordant or tied in both strength vectors.
double rank_correlation(const ClusteredModel& a, const ClusteredModel& b);
double rank_correlation_vs_truth(const ClusteredModel& model,
                                 const TruthSpec& truth);

// Strength classification for index values in [0,1]:
// >= 0.9 outstanding, [0.8, 0.9) excellent, [0.7, 0.8) acceptable, else poor.
std::string classify_strength(double value);

}  // namespace wmprc
