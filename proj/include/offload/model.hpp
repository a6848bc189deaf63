#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <ranges>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace offload {

/// Thrown when an operation is called outside its documented domain.
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/**
 * Buffered tasks grouped by deadline.
 *
 * Deadlines are 1-based and measured in slots. Internally index 0 holds the
 * deadline-1 tasks, i.e. those that expire at this slot's deadline shift
 * unless they are offloaded first.
 */
class TaskQueueState {
 public:
  TaskQueueState() = default;
  explicit TaskQueueState(std::size_t max_deadline);
  explicit TaskQueueState(std::vector<int> counts);
  TaskQueueState(std::initializer_list<int> counts);

  [[nodiscard]] std::size_t size() const noexcept { return counts_.size(); }
  [[nodiscard]] int operator[](std::size_t index) const { return counts_[index]; }
  /// Count of tasks with the given 1-based deadline.
  [[nodiscard]] int at_deadline(int deadline) const;
  [[nodiscard]] int total() const noexcept;
  [[nodiscard]] bool is_zero() const noexcept;
  /// Smallest occupied deadline (1-based), 0 for the empty queue.
  [[nodiscard]] int most_imminent_deadline() const noexcept;
  [[nodiscard]] std::span<const int> counts() const noexcept { return counts_; }

  void add(int deadline, int amount);

  auto operator<=>(const TaskQueueState&) const = default;
  bool operator==(const TaskQueueState&) const = default;

  /// "(n_1,...,n_N)"
  [[nodiscard]] std::string to_string() const;

 private:
  std::vector<int> counts_;
};

struct TaskQueueStateHash {
  std::size_t operator()(const TaskQueueState& s) const noexcept;
};

/// Model constants. `arrival[k]` is the probability that the slot's arrival has
/// deadline k, with k = 0 meaning no arrival.
struct ModelParams {
  int N = 1;
  double p_u = 0.0;
  double mu = 0.0;
  double C_o = 1.0;
  double C_p = 2.0;
  std::vector<double> arrival{1.0, 0.0};

  /// Throws ContractError naming the first violated constraint.
  void validate(double sum_tolerance = 1e-12) const;

  /// p_0 given, remaining mass spread evenly over deadlines 1..N.
  static ModelParams with_uniform_arrivals(int N, double p_u, double mu, double C_o, double C_p,
                                           double p_0);
};

enum class CostBranch { ama, no_ama, expected };

/// The three random draws of one slot, in event order.
struct SlotOutcome {
  bool ama_present = false;
  int arrival_deadline = 0;
  bool processing_available = false;
};

/// {0, 1, ..., total(s)}
[[nodiscard]] inline auto valid_decisions(const TaskQueueState& s) {
  return std::views::iota(0, s.total() + 1);
}

[[nodiscard]] double instantaneous_cost(const TaskQueueState& s, int L, const ModelParams& params,
                                        CostBranch branch);

/// Selects the L most imminent tasks of s.
[[nodiscard]] TaskQueueState offload_vector(const TaskQueueState& s, int L);

/// s minus its L most imminent tasks (no lower bound on L, unlike
/// offload_from_deadline with d = 1).
[[nodiscard]] TaskQueueState offload_most_imminent(const TaskQueueState& s, int L);

/// (v_2, ..., v_N, 0); v_1 is dropped.
[[nodiscard]] TaskQueueState deadline_shift(const TaskQueueState& v);

[[nodiscard]] TaskQueueState arrival_vector(int k, int N);

[[nodiscard]] TaskQueueState local_processing_vector(const TaskQueueState& v);

/// Next slot's state after offloading L most imminent tasks, the deadline shift,
/// an arrival with deadline k (0 = none) and, if `processed`, serving the most
/// imminent remaining task.
[[nodiscard]] TaskQueueState successor(const TaskQueueState& s, int L, int k, bool processed);

/// Smallest L in the offload domain for deadline d (n_1 when d = 1, else 0).
[[nodiscard]] int offload_domain_min(const TaskQueueState& s, int d);
/// Largest L in the offload domain for deadline d.
[[nodiscard]] int offload_domain_max(const TaskQueueState& s, int d);

/// Removes the L most imminent tasks among those with deadline >= d.
[[nodiscard]] TaskQueueState offload_from_deadline(const TaskQueueState& s, int d, int L);

/// Components with deadline > limit set to zero.
[[nodiscard]] TaskQueueState truncate_beyond(const TaskQueueState& s, int limit);

TaskQueueState operator+(const TaskQueueState& a, const TaskQueueState& b);
TaskQueueState operator-(const TaskQueueState& a, const TaskQueueState& b);

}  // namespace offload

template <>
struct std::hash<offload::TaskQueueState> : offload::TaskQueueStateHash {};
