#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "offload/model.hpp"

// Independent ground truth. Nothing here reads a ValueTable or uses the
// reduced/lean machinery for values; only the model's transition functions
// are shared with the solver.
namespace offload::oracle {

struct Violation {
  std::string inputs;
  double expected = 0.0;
  double got = 0.0;
};

struct VerificationReport {
  std::string property;
  long long instances_checked = 0;
  std::vector<Violation> violations;

  [[nodiscard]] bool passed() const noexcept { return violations.empty(); }
};

/// Tractability limits of the full event-tree expansion.
struct TreeGuard {
  static constexpr int max_N = 4;
  static constexpr int max_T = 5;
  static constexpr int max_total = 5;
};

/// Exact expectation over the whole event tree, minimizing over L at every AMA
/// branch. Throws ContractError beyond TreeGuard.
[[nodiscard]] double brute_force_value(const TaskQueueState& s, int T, const ModelParams& params);

/// First L = 0, 1, ... whose most-imminent removal (after dropping deadlines
/// beyond min(N, T)) satisfies every reduced-state prefix inequality.
[[nodiscard]] int brute_force_min_excess(const TaskQueueState& s, int T);

/**
 * The same expectation as brute_force_value with repeated subtrees cached by
 * exact (state, horizon). No truncation, no lean mapping. Used where the pure
 * tree is too large.
 */
class ExhaustiveEvaluator {
 public:
  explicit ExhaustiveEvaluator(ModelParams params);

  [[nodiscard]] const ModelParams& params() const noexcept { return params_; }
  [[nodiscard]] double value(const TaskQueueState& s, int T);
  /// C^A(s, L) plus the expected future; T >= 1.
  [[nodiscard]] double forced(const TaskQueueState& s, int L, int T);
  [[nodiscard]] double without_ama(const TaskQueueState& s, int T);
  /// Smallest minimizer of forced(s, ., T).
  [[nodiscard]] int optimal_decision(const TaskQueueState& s, int T);

 private:
  [[nodiscard]] double future(const TaskQueueState& s, int L, int T);

  ModelParams params_;
  std::map<std::pair<int, TaskQueueState>, double> memo_;
};

struct VerifyBounds {
  int max_N = 3;
  int max_total = 3;
  int max_T = 4;
  /// Per-component bound of the state box used by proposition_1.
  int max_component = 3;
  /// Largest N checked by lemma_1.
  int catalan_max_N = 6;
  /// Added to every closed-form excess cost; non-zero only as a negative control.
  double g2m_perturbation = 0.0;
};

[[nodiscard]] const std::vector<std::string>& property_names();

/// `params` supplies p_u, mu, C_o, C_p and p_0; arrivals are spread uniformly
/// over deadlines 1..N for each dimension N checked.
[[nodiscard]] VerificationReport verify(std::string_view property, const VerifyBounds& bounds,
                                        const ModelParams& params);

/// base with its arrival mass beyond p_0 spread uniformly over 1..N.
[[nodiscard]] ModelParams params_for_dimension(const ModelParams& base, int N);

/// All N-dimensional states with component sum at most max_total, lexicographic.
[[nodiscard]] std::vector<TaskQueueState> states_up_to_total(int N, int max_total);
/// All N-dimensional states with every component at most max_component.
[[nodiscard]] std::vector<TaskQueueState> states_in_box(int N, int max_component);
/// Members of S_pp(s) other than s itself: one task of the most imminent
/// deadline moved to a later deadline.
[[nodiscard]] std::vector<TaskQueueState> postponed_states(const TaskQueueState& s);
/// Every s_a adjacent to s.
[[nodiscard]] std::vector<TaskQueueState> adjacent_states(const TaskQueueState& s);

}  // namespace offload::oracle
