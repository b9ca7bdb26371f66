#include "wmprc/selection.hpp"

namespace wmprc {

SelectionResult select(const CandidateChain& chain, Criterion criterion) {
  SelectionResult result;
  result.criterion = criterion;
  const Candidate* best = nullptr;
  for (const Candidate& cand : chain.candidates) {
    result.table.push_back(cand.row);
    if (!cand.row.feasible) continue;
    if (best == nullptr) {
      best = &cand;
      continue;
    }
    const double value = cand.row.value(criterion);
    const double incumbent = best->row.value(criterion);
    if (value < incumbent ||
        (value == incumbent &&
         cand.row.cluster_count < best->row.cluster_count)) {
      best = &cand;
    }
  }
  if (best == nullptr) {
    throw SelectionError(
        "no feasible candidate: every cluster count has a leave-one-out "
        "leverage at 1");
  }
  result.chosen = best;
  result.chosen_c = best->row.cluster_count;
  return result;
}

}  // namespace wmprc
