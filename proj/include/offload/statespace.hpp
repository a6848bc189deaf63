#pragma once

#include <vector>

#include "offload/model.hpp"

namespace offload {

/// A state without excessive tasks, plus how many tasks had to go to get there.
struct ReducedForm {
  TaskQueueState reduced;
  int excessive_count = 0;
};

struct LeanForm {
  TaskQueueState lean;
  std::vector<int> gammas;
};

/// Distribution of the slot in which the AMA is first seen.
struct FirstAmaDistribution {
  std::vector<double> per_slot;  // P(t = 0) .. P(t = N-1)
  double tail = 0.0;             // P(t >= N)
};

/// True iff every prefix sum n_1 + ... + n_m is at most m - 1.
[[nodiscard]] bool is_reduced(const TaskQueueState& s);

/// Number of tasks guaranteed to expire within the horizon, i.e. the smallest
/// L whose most-imminent removal (after dropping deadlines beyond min(N,T))
/// leaves a reduced state.
[[nodiscard]] int excessive_count(const TaskQueueState& s, int T);

[[nodiscard]] ReducedForm reduce(const TaskQueueState& s, int T);

[[nodiscard]] LeanForm lean(const TaskQueueState& s, int T);

/// All reduced states of dimension N in lexicographic order (Catalan(N) many).
[[nodiscard]] std::vector<TaskQueueState> enumerate_reduced(int N);

[[nodiscard]] long long catalan(int n);

[[nodiscard]] FirstAmaDistribution first_ama_distribution(const ModelParams& params);

/// Expected cost of the tasks in s that are not in its lean state: each is
/// offloaded at the first AMA visit that precedes its deadline, otherwise it
/// expires. Only meaningful for horizons T >= N.
[[nodiscard]] double g2m_cost(const TaskQueueState& s, const LeanForm& leanform,
                              const ModelParams& params);

}  // namespace offload
