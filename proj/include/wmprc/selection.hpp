#pragma once

#include "wmprc/clustering.hpp"

namespace wmprc {

struct SelectionResult {
  Criterion criterion;
  int chosen_c = 0;
  const Candidate* chosen = nullptr;           // points into the chain
  std::vector<CriterionRow> table;             // one row per c, descending
};

// Argmin of the criterion over feasible rows; exact ties resolve to the
// smallest cluster count. Throws SelectionError when every row is infeasible.
SelectionResult select(const CandidateChain& chain, Criterion criterion);

}  // namespace wmprc
