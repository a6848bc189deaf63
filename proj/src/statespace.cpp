#include "offload/statespace.hpp"

#include <algorithm>
#include <cmath>

namespace offload {

bool is_reduced(const TaskQueueState& s) {
  int prefix = 0;
  for (std::size_t m = 1; m <= s.size(); ++m) {
    prefix += s[m - 1];
    if (prefix > static_cast<int>(m) - 1) return false;
  }
  return true;
}

int excessive_count(const TaskQueueState& s, int T) {
  if (T < 1) throw ContractError("horizon must be at least 1");
  const int limit = std::min(static_cast<int>(s.size()), T);
  int prefix = 0;
  int worst = 0;
  for (int m = 1; m <= limit; ++m) {
    prefix += s[static_cast<std::size_t>(m - 1)];
    worst = std::max(worst, prefix - m + 1);
  }
  return worst;
}

ReducedForm reduce(const TaskQueueState& s, int T) {
  const int L_g = excessive_count(s, T);
  const TaskQueueState truncated = truncate_beyond(s, T);
  return {offload_most_imminent(truncated, L_g), L_g};
}

LeanForm lean(const TaskQueueState& s, int T) {
  const ReducedForm r = reduce(s, T);
  const auto N = static_cast<int>(s.size());
  const int limit = std::min(N, T);

  std::vector<int> gammas(s.size(), 0);
  int used = 0;
  for (int j = 2; j <= limit; ++j) {
    const auto idx = static_cast<std::size_t>(j - 1);
    gammas[idx] = std::min(s[idx], j - 1 - used);
    used += gammas[idx];
  }

  std::vector<int> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = std::max(gammas[i], r.reduced[i]);
  return {TaskQueueState(std::move(out)), std::move(gammas)};
}

namespace {

// Depth-first over components in lexicographic order, pruning on the prefix bound.
void extend_reduced(int N, std::vector<int>& prefix, int sum, std::vector<TaskQueueState>& out) {
  const auto m = static_cast<int>(prefix.size()) + 1;
  if (m > N) {
    out.emplace_back(prefix);
    return;
  }
  for (int v = 0; sum + v <= m - 1; ++v) {
    prefix.push_back(v);
    extend_reduced(N, prefix, sum + v, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<TaskQueueState> enumerate_reduced(int N) {
  if (N < 1 || N > 12) throw ContractError("enumerate_reduced supports 1 <= N <= 12");
  std::vector<TaskQueueState> out;
  out.reserve(static_cast<std::size_t>(catalan(N)));
  std::vector<int> prefix;
  extend_reduced(N, prefix, 0, out);
  return out;
}

long long catalan(int n) {
  // C(2n, n) / (n + 1) via the running product C_{k+1} = C_k * 2(2k+1) / (k+2).
  long long c = 1;
  for (int k = 0; k < n; ++k) c = c * 2 * (2 * k + 1) / (k + 2);
  return c;
}

FirstAmaDistribution first_ama_distribution(const ModelParams& params) {
  FirstAmaDistribution dist;
  dist.per_slot.resize(static_cast<std::size_t>(params.N));
  double miss = 1.0;
  for (auto& p : dist.per_slot) {
    p = params.p_u * miss;
    miss *= 1.0 - params.p_u;
  }
  dist.tail = miss;
  return dist;
}

double g2m_cost(const TaskQueueState& s, const LeanForm& leanform, const ModelParams& params) {
  const TaskQueueState& m = leanform.lean;
  if (m.size() != s.size()) throw ContractError("lean state dimension differs from state");
  const std::size_t N = s.size();
  std::vector<int> excess(N);
  for (std::size_t i = 0; i < N; ++i) {
    excess[i] = s[i] - m[i];
    if (excess[i] < 0) throw ContractError("lean state exceeds the state it was derived from");
  }

  ModelParams shaped = params;
  shaped.N = static_cast<int>(N);
  const FirstAmaDistribution P = first_ama_distribution(shaped);

  // Deadline-i excess is offloaded if the AMA shows up in slots 0..i-1.
  double offload = 0.0;
  double seen_by = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    seen_by += P.per_slot[i];
    offload += excess[i] * seen_by;
  }

  // First visit at slot i finds every excess task with deadline <= i expired.
  double expire = 0.0;
  int expired_by = 0;
  for (std::size_t i = 1; i < N; ++i) {
    expired_by += excess[i - 1];
    expire += P.per_slot[i] * expired_by;
  }
  expire += P.tail * (expired_by + excess[N - 1]);

  return params.C_o * offload + params.C_p * expire;
}

}  // namespace offload
