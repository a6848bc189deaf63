#pragma once

#include <map>
#include <utility>
#include <vector>

#include "offload/dp.hpp"
#include "offload/model.hpp"

namespace offload {

/// Cached optimal decision of a reduced state at horizon T.
struct PolicyEntry {
  TaskQueueState reduced_state;
  int horizon = 0;
  int decision = 0;

  bool operator==(const PolicyEntry&) const = default;
};

/// Optimal decision split into the part forced by excessive tasks and the part
/// chosen by the DP on the reduced state.
struct DecisionOutcome {
  int total = 0;
  int from_reduction = 0;
  int from_dp = 0;
  bool classified_offloading = false;
};

[[nodiscard]] DecisionOutcome optimal_decision(const TaskQueueState& s, int T, ValueTable& table);

/// s_a with its most imminent task removed.
[[nodiscard]] TaskQueueState adjacency_parent(const TaskQueueState& s_a);

/// Offloading iff J_T(s_a) - J_T(parent) reaches C_o. Exact ties (within
/// tie_tolerance) count as non-offloading, matching the smallest-argmin rule.
[[nodiscard]] bool is_offloading_state(const TaskQueueState& s_a, int T, ValueTable& table);

/// Decisions of the chain states s_{i-steps_down} .. s_{i+steps_up}, inferred
/// from the known decision of s_i. Upward inference needs known_L >= 1.
[[nodiscard]] std::vector<int> infer_adjacent_chain(int known_L, int steps_down, int steps_up);

/// Smallest L whose most-imminent removal leaves a non-offloading state.
[[nodiscard]] int smallest_nonoffloading(const TaskQueueState& s, int T, ValueTable& table);

/// True iff s_a is s plus one task at some deadline j <= d, d being the most
/// imminent occupied deadline of s (any deadline when s is empty).
[[nodiscard]] bool adjacency(const TaskQueueState& s, const TaskQueueState& s_a);

/// Triplet cache (reduced state, horizon) -> optimal decision, precomputed for
/// every seed and horizon 1..T so lookups during simulation are map reads.
class PolicyCache {
 public:
  PolicyCache() = default;

  /// Decision for an arbitrary state at remaining horizon t.
  [[nodiscard]] DecisionOutcome lookup(const TaskQueueState& s, int t) const;
  [[nodiscard]] bool contains(const TaskQueueState& reduced, int t) const;
  [[nodiscard]] int max_horizon() const noexcept { return max_horizon_; }
  /// Entries at horizon T in lexicographic state order.
  [[nodiscard]] std::vector<PolicyEntry> entries(int T) const;
  [[nodiscard]] std::size_t size() const noexcept { return decisions_.size(); }

 private:
  std::map<std::pair<int, TaskQueueState>, int> decisions_;
  int max_horizon_ = 0;

  friend PolicyCache build_policy_cache(ValueTable& table, int T,
                                        const std::vector<TaskQueueState>& seeds);
};

/// Seeds are reduced first; an empty seed list means every reduced state of dimension N.
[[nodiscard]] PolicyCache build_policy_cache(ValueTable& table, int T,
                                             const std::vector<TaskQueueState>& seeds = {});

}  // namespace offload
