#include "offload/policy.hpp"

#include <algorithm>

#include "offload/statespace.hpp"

namespace offload {

DecisionOutcome optimal_decision(const TaskQueueState& s, int T, ValueTable& table) {
  if (T < 1) throw ContractError("horizon must be at least 1");
  const ReducedForm r = reduce(s, T);
  DecisionOutcome out;
  out.from_reduction = r.excessive_count;
  out.from_dp = table.forced(r.reduced, T).argmin();
  out.total = out.from_reduction + out.from_dp;
  out.classified_offloading = out.total >= 1;
  return out;
}

TaskQueueState adjacency_parent(const TaskQueueState& s_a) {
  return offload_most_imminent(s_a, s_a.is_zero() ? 0 : 1);
}

bool is_offloading_state(const TaskQueueState& s_a, int T, ValueTable& table) {
  if (T < 1) throw ContractError("horizon must be at least 1");
  if (s_a.is_zero()) return false;
  const double hi = table.value(s_a, T);
  const double lo = table.value(adjacency_parent(s_a), T);
  const double C_o = table.params().C_o;
  return hi - lo > C_o + tie_tolerance(hi);
}

std::vector<int> infer_adjacent_chain(int known_L, int steps_down, int steps_up) {
  if (known_L < 0) throw ContractError("known decision must be non-negative");
  if (steps_down < 0 || steps_up < 0) throw ContractError("step counts must be non-negative");
  if (steps_up > 0 && known_L == 0)
    throw ContractError("upward inference is only defined from an offloading state");
  std::vector<int> chain;
  chain.reserve(static_cast<std::size_t>(steps_down + steps_up) + 1);
  for (int u = steps_down; u >= 1; --u) chain.push_back(std::max(known_L - u, 0));
  chain.push_back(known_L);
  for (int v = 1; v <= steps_up; ++v) chain.push_back(known_L + v);
  return chain;
}

int smallest_nonoffloading(const TaskQueueState& s, int T, ValueTable& table) {
  for (int L : valid_decisions(s))
    if (!is_offloading_state(offload_most_imminent(s, L), T, table)) return L;
  return s.total();  // unreachable: the empty state is non-offloading
}

bool adjacency(const TaskQueueState& s, const TaskQueueState& s_a) {
  if (s.size() != s_a.size()) return false;
  if (s_a.total() != s.total() + 1) return false;
  const int d = s.is_zero() ? static_cast<int>(s.size()) : s.most_imminent_deadline();
  int added_at = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const int diff = s_a[i] - s[i];
    if (diff == 0) continue;
    if (diff != 1 || added_at != 0) return false;
    added_at = static_cast<int>(i) + 1;
  }
  return added_at >= 1 && added_at <= d;
}

DecisionOutcome PolicyCache::lookup(const TaskQueueState& s, int t) const {
  const ReducedForm r = reduce(s, t);
  const auto it = decisions_.find({t, r.reduced});
  if (it == decisions_.end())
    throw ContractError("policy cache has no entry for " + r.reduced.to_string() +
                        " at horizon " + std::to_string(t));
  DecisionOutcome out;
  out.from_reduction = r.excessive_count;
  out.from_dp = it->second;
  out.total = out.from_reduction + out.from_dp;
  out.classified_offloading = out.total >= 1;
  return out;
}

bool PolicyCache::contains(const TaskQueueState& reduced, int t) const {
  return decisions_.contains({t, reduced});
}

std::vector<PolicyEntry> PolicyCache::entries(int T) const {
  std::vector<PolicyEntry> out;
  for (auto it = decisions_.lower_bound({T, TaskQueueState{}});
       it != decisions_.end() && it->first.first == T; ++it)
    out.push_back({it->first.second, T, it->second});
  return out;
}

PolicyCache build_policy_cache(ValueTable& table, int T, const std::vector<TaskQueueState>& seeds) {
  if (T < 1) throw ContractError("horizon must be at least 1");
  const std::vector<TaskQueueState> states =
      seeds.empty() ? enumerate_reduced(table.params().N) : seeds;
  PolicyCache cache;
  cache.max_horizon_ = T;
  for (int t = 1; t <= T; ++t) {
    for (const TaskQueueState& s : states) {
      const TaskQueueState reduced = reduce(s, t).reduced;
      if (cache.decisions_.contains({t, reduced})) continue;
      cache.decisions_.emplace(std::pair{t, reduced}, table.forced(reduced, t).argmin());
    }
  }
  return cache;
}

}  // namespace offload
