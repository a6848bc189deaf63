#pragma once

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <vector>

#include "offload/model.hpp"

namespace offload {

/// Expected total cost of offloading exactly L most imminent tasks while the AMA is present,
/// for every L in valid_decisions(s).
struct ForcedValue {
  std::vector<double> by_L;

  [[nodiscard]] double min() const;
  /// Smallest minimizing L (ties within tie_tolerance(min()) go to the smaller L).
  [[nodiscard]] int argmin() const;
};

/// Absolute slack used when comparing candidate costs for equality.
[[nodiscard]] double tie_tolerance(double magnitude) noexcept;

/**
 * Memoized minimum expected total cost J_t(s) for t = 1, 2, ...
 *
 * Keys at horizons t >= N are lean states; the cost of any other state is
 * recovered from its lean state plus the closed-form excess cost. Below N the
 * key is the state with deadlines beyond t dropped. Entries are produced
 * bottom-up in t, so arbitrarily long horizons need no deep recursion.
 */
class ValueTable {
 public:
  explicit ValueTable(ModelParams params);

  [[nodiscard]] const ModelParams& params() const noexcept { return params_; }

  /// Stored (key, horizon) entries.
  [[nodiscard]] std::size_t size() const noexcept;
  /// Entries a memo on horizon-truncated raw states would have stored for the
  /// same build_table run; zero for tables not produced by build_table.
  [[nodiscard]] std::size_t naive_entries() const noexcept { return naive_entries_; }
  [[nodiscard]] int max_horizon() const noexcept { return static_cast<int>(levels_.size()) - 1; }

  /// Stored value for a key, without computing anything.
  [[nodiscard]] std::optional<double> find(const TaskQueueState& key, int t) const;

  /// All keys stored at horizon t, sorted.
  [[nodiscard]] std::vector<TaskQueueState> keys_at(int t) const;

  [[nodiscard]] double value(const TaskQueueState& s, int T);
  [[nodiscard]] double value_without_ama(const TaskQueueState& s, int T);
  [[nodiscard]] ForcedValue forced(const TaskQueueState& s, int T);
  [[nodiscard]] double forced_at(const TaskQueueState& s, int L, int T);

 private:
  struct Branch {
    double weight;
    TaskQueueState key;
    double offset;
  };
  /// Successor branches, already mapped to keys, for each L of a state.
  using Expansion = std::vector<std::vector<Branch>>;

  struct Keyed {
    TaskQueueState key;
    double offset;
  };

  [[nodiscard]] Keyed canonical(const TaskQueueState& s, int t) const;
  [[nodiscard]] std::vector<Branch> branches(const TaskQueueState& s, int L, int t) const;
  const Expansion& steady_expansion(const TaskQueueState& key);
  [[nodiscard]] double expected_future(const std::vector<Branch>& branches, int t);
  [[nodiscard]] double future(const TaskQueueState& s, int L, int t);
  [[nodiscard]] double evaluate(const TaskQueueState& key, int t);
  void ensure(const TaskQueueState& key, int t);
  [[nodiscard]] double stored(const TaskQueueState& key, int t) const;

  ModelParams params_;
  std::vector<std::unordered_map<TaskQueueState, double>> levels_;
  std::unordered_map<TaskQueueState, Expansion> steady_;
  std::size_t naive_entries_ = 0;

  friend ValueTable build_table(const ModelParams& params, int T_max,
                                const std::vector<TaskQueueState>& seeds);
};

/// Minimum expected total cost over T slots from s (divide by T for the time average).
[[nodiscard]] double value(const TaskQueueState& s, int T, ValueTable& table);
[[nodiscard]] double value_with_ama(const TaskQueueState& s, int T, ValueTable& table);
[[nodiscard]] double value_without_ama(const TaskQueueState& s, int T, ValueTable& table);
[[nodiscard]] double value_forced(const TaskQueueState& s, int L, int T, ValueTable& table);

/// J^{no AMA}_T(s with L most imminent tasks of deadline >= d removed) + L * C_o.
[[nodiscard]] double f_bar(int T, const TaskQueueState& s, int d, int L, ValueTable& table);

/// States reachable from the seeds under any decision and any draw, with no
/// state-space mapping applied. Sorted.
[[nodiscard]] std::vector<TaskQueueState> reachable_states(const ModelParams& params,
                                                           const std::vector<TaskQueueState>& seeds);

/// Fills the table for every reachable state at horizons 1..T_max and records
/// the naive entry count for the same workload.
[[nodiscard]] ValueTable build_table(const ModelParams& params, int T_max,
                                     const std::vector<TaskQueueState>& seeds);

}  // namespace offload
