#include "wmprc/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace wmprc {

std::string method_name(Method m) {
  switch (m) {
    case Method::kTcl: return "tcl";
    case Method::kLct: return "lct";
    case Method::kAlt: return "alt";
  }
  throw ValidationError("unknown method");
}

Method parse_method(const std::string& name) {
  if (name == "tcl") return Method::kTcl;
  if (name == "lct") return Method::kLct;
  if (name == "alt") return Method::kAlt;
  throw ValidationError("unknown method name: " + name);
}

const Candidate& CandidateChain::candidate(int cluster_count) const {
  for (const Candidate& cand : candidates) {
    if (cand.model.cluster_count() == cluster_count) return cand;
  }
  throw ValidationError("no candidate with " + std::to_string(cluster_count) +
                        " clusters");
}

ClusterAssignment centroid_linkage(const Eigen::VectorXd& values, int target) {
  const int k = static_cast<int>(values.size());
  if (target < 1 || target > k) {
    throw ValidationError("centroid linkage target out of range");
  }
  // Slot list: (sum, count, members). Initial slots in input order; merges
  // keep the lower slot.
  struct Slot {
    double sum;
    int count;
    std::vector<int> members;
  };
  std::vector<Slot> slots;
  slots.reserve(k);
  for (int i = 0; i < k; ++i) slots.push_back({values[i], 1, {i}});

  while (static_cast<int>(slots.size()) > target) {
    int best_a = 0, best_b = 1;
    double best = std::numeric_limits<double>::infinity();
    for (int a = 0; a < static_cast<int>(slots.size()); ++a) {
      const double ca = slots[a].sum / slots[a].count;
      for (int b = a + 1; b < static_cast<int>(slots.size()); ++b) {
        const double d = std::fabs(ca - slots[b].sum / slots[b].count);
        if (d < best) {
          best = d;
          best_a = a;
          best_b = b;
        }
      }
    }
    Slot& a = slots[best_a];
    Slot& b = slots[best_b];
    a.sum += b.sum;
    a.count += b.count;
    a.members.insert(a.members.end(), b.members.begin(), b.members.end());
    slots.erase(slots.begin() + best_b);
  }

  // Canonical labels ascend by centroid; centroid ties keep slot order.
  std::vector<int> order(slots.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return slots[a].sum / slots[a].count < slots[b].sum / slots[b].count;
  });
  std::vector<int> labels(k);
  for (int rank = 0; rank < static_cast<int>(order.size()); ++rank) {
    for (int member : slots[order[rank]].members) labels[member] = rank;
  }
  return ClusterAssignment(target, std::move(labels));
}

namespace {

// Assignment after merging clusters lo and hi of `g`, relabeled ascending by
// the post-merge centroid strengths (the merged pair gets its size-weighted
// mean).
ClusterAssignment merged_assignment(const ClusterAssignment& g,
                                    const Eigen::VectorXd& theta, int lo,
                                    int hi) {
  const int c = g.cluster_count();
  Eigen::VectorXd centroid(c - 1);
  std::vector<int> remap(c);
  int next = 1;
  for (int k = 0; k < c; ++k) {
    if (k == lo || k == hi) {
      remap[k] = 0;
    } else {
      remap[k] = next;
      centroid[next] = theta[k];
      ++next;
    }
  }
  const double wl = g.sizes()[lo], wh = g.sizes()[hi];
  centroid[0] = (wl * theta[lo] + wh * theta[hi]) / (wl + wh);

  std::vector<int> labels(g.robot_count());
  for (int i = 0; i < g.robot_count(); ++i) labels[i] = remap[g.label(i)];
  ClusterAssignment merged(c - 1, std::move(labels));
  merged.relabel_ascending(centroid);
  return merged;
}

std::pair<int, int> closest_pair(const Eigen::VectorXd& theta) {
  int best_lo = 0, best_hi = 1;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < theta.size(); ++i) {
    for (int j = i + 1; j < theta.size(); ++j) {
      const double d = std::fabs(theta[i] - theta[j]);
      if (d < best) {
        best = d;
        best_lo = i;
        best_hi = j;
      }
    }
  }
  return {best_lo, best_hi};
}

void record_merge(ChainTrace* trace, const ClusterAssignment& merged, int lo,
                  int hi) {
  if (!trace) return;
  TraceEvent ev;
  ev.kind = TraceEvent::Kind::kMerge;
  ev.cluster_count = merged.cluster_count();
  ev.merged_low = lo;
  ev.merged_high = hi;
  ev.labels = merged.labels();
  trace->events.push_back(std::move(ev));
}

void record_refine(ChainTrace* trace, const ClusterAssignment& g,
                   int iteration) {
  if (!trace) return;
  TraceEvent ev;
  ev.kind = TraceEvent::Kind::kRefineIteration;
  ev.cluster_count = g.cluster_count();
  ev.iteration = iteration;
  ev.labels = g.labels();
  trace->events.push_back(std::move(ev));
}

}  // namespace

ClusterAssignment merge_closest(const ClusteredModel& model) {
  if (model.cluster_count() < 2) {
    throw ValidationError("merge requires at least two clusters");
  }
  auto [lo, hi] = closest_pair(model.theta);
  return merged_assignment(model.assignment, model.theta, lo, hi);
}

Eigen::VectorXd breakout_strengths(const DesignMatrix& design,
                                   const ClusteredModel& model) {
  const ClusterAssignment& g = model.assignment;
  const int c = g.cluster_count();
  Eigen::VectorXd strengths = model.beta;
  for (int i = 0; i < g.robot_count(); ++i) {
    if (g.sizes()[g.label(i)] < 2) continue;  // singletons keep their estimate
    std::vector<int> labels = g.labels();
    labels[i] = c;  // new singleton cluster
    ClusterAssignment split(c + 1, std::move(labels));
    Eigen::VectorXd theta = detail::fit_theta(design, split);
    strengths[i] = theta[c];
  }
  return strengths;
}

namespace {

std::pair<ClusteredModel, RefinementTrace> refine_impl(
    const DesignMatrix& design, const ClusterAssignment& g,
    const RefinementOptions& options, ChainTrace* trace) {
  const int c = g.cluster_count();
  if (c < 2) throw ValidationError("refinement requires at least two clusters");

  ClusteredModel current = fit_wmprc(design, g);
  RefinementTrace rt;
  rt.epsilon = options.epsilon;
  rt.strength_history.push_back(current.beta);

  for (int m = 1; m <= options.max_iterations; ++m) {
    Eigen::VectorXd broken = breakout_strengths(design, current);
    ClusterAssignment updated = centroid_linkage(broken, c);
    current = fit_wmprc(design, std::move(updated));
    rt.strength_history.push_back(current.beta);
    rt.iterations = m;
    record_refine(trace, current.assignment, m);

    double closest = std::numeric_limits<double>::infinity();
    for (int prev = 0; prev < m; ++prev) {
      closest = std::min(closest,
                         (current.beta - rt.strength_history[prev]).norm());
    }
    if (closest < options.epsilon) {
      rt.converged = true;
      break;
    }
  }
  return {std::move(current), std::move(rt)};
}

}  // namespace

std::pair<ClusteredModel, RefinementTrace> refine_nonhierarchical(
    const DesignMatrix& design, const ClusterAssignment& g,
    const RefinementOptions& options) {
  return refine_impl(design, g, options, nullptr);
}

CandidateChain generate_candidates(const DesignMatrix& design, Method method,
                                   const RefinementOptions& options) {
  const int k = design.robot_count();
  if (k < 3) throw ValidationError("candidate generation requires K >= 3");
  if (design.match_count() < 2) {
    throw ValidationError("candidate generation requires M >= 2");
  }

  CandidateChain chain;
  chain.method = method;
  ChainTrace* trace = &chain.trace;

  auto push = [&](ClusteredModel model) {
    CriterionRow row = evaluate_candidate(model, design);
    chain.candidates.push_back({std::move(model), row});
  };

  // WMPR fit (c = K).
  ClusteredModel wmpr = fit_wmprc(design, ClusterAssignment::singletons(k));
  push(wmpr);

  // First merge, shared by every method.
  auto merge_from = [&](const ClusteredModel& model) {
    auto [lo, hi] = closest_pair(model.theta);
    ClusterAssignment merged =
        merged_assignment(model.assignment, model.theta, lo, hi);
    record_merge(trace, merged, lo, hi);
    return fit_wmprc(design, std::move(merged));
  };

  ClusteredModel hier = merge_from(wmpr);  // c = K - 1
  push(hier);

  // hier walks the hierarchical backbone. For LCT and ALT it advances by
  // pure merges; for TCL the refined candidate feeds the next merge.
  for (int next_c = k - 2; next_c >= 2; --next_c) {
    ClusteredModel base = merge_from(hier);
    if (method == Method::kLct) {
      hier = base;
      push(std::move(base));
      continue;
    }
    auto refined = refine_impl(design, base.assignment, options, trace).first;
    if (method == Method::kTcl) {
      hier = refined;
    } else {
      hier = std::move(base);  // ALT: backbone stays unrefined
    }
    push(std::move(refined));
  }
  return chain;
}

std::optional<TraceDivergence> trace_diff(const ChainTrace& actual,
                                          const ChainTrace& reference) {
  const size_t n = std::min(actual.events.size(), reference.events.size());
  for (size_t i = 0; i < n; ++i) {
    const TraceEvent& a = actual.events[i];
    const TraceEvent& r = reference.events[i];
    std::ostringstream why;
    if (a.kind != r.kind) {
      why << "event kind differs";
    } else if (a.cluster_count != r.cluster_count) {
      why << "cluster count " << a.cluster_count << " vs " << r.cluster_count;
    } else if (a.kind == TraceEvent::Kind::kMerge &&
               (a.merged_low != r.merged_low || a.merged_high != r.merged_high)) {
      why << "merged pair (" << a.merged_low + 1 << "," << a.merged_high + 1
          << ") vs (" << r.merged_low + 1 << "," << r.merged_high + 1 << ")";
    } else if (a.labels != r.labels) {
      int robot = 0;
      while (robot < static_cast<int>(a.labels.size()) &&
             a.labels[robot] == r.labels[robot]) {
        ++robot;
      }
      why << "assignment differs first at robot index " << robot + 1;
    } else {
      continue;
    }
    TraceDivergence div;
    div.event_index = static_cast<int>(i);
    std::ostringstream desc;
    desc << "first divergence at event " << i << " (c="
         << a.cluster_count << "): " << why.str();
    div.description = desc.str();
    return div;
  }
  if (actual.events.size() != reference.events.size()) {
    TraceDivergence div;
    div.event_index = static_cast<int>(n);
    div.description = "traces have different lengths (" +
                      std::to_string(actual.events.size()) + " vs " +
                      std::to_string(reference.events.size()) + ")";
    return div;
  }
  return std::nullopt;
}

}  // namespace wmprc
