#include "offload/dp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <unordered_set>

#include "offload/statespace.hpp"

namespace offload {

double tie_tolerance(double magnitude) noexcept {
  return 1e-10 * std::max(1.0, std::abs(magnitude));
}

double ForcedValue::min() const {
  if (by_L.empty()) throw ContractError("empty forced-value curve");
  return *std::min_element(by_L.begin(), by_L.end());
}

int ForcedValue::argmin() const {
  const double best = min();
  const double slack = tie_tolerance(best);
  for (std::size_t L = 0; L < by_L.size(); ++L)
    if (by_L[L] <= best + slack) return static_cast<int>(L);
  return 0;  // unreachable
}

ValueTable::ValueTable(ModelParams params) : params_(std::move(params)) {
  params_.validate(1e-9);
  levels_.resize(1);
}

std::size_t ValueTable::size() const noexcept {
  std::size_t n = 0;
  for (const auto& level : levels_) n += level.size();
  return n;
}

std::optional<double> ValueTable::find(const TaskQueueState& key, int t) const {
  if (t < 0 || t >= static_cast<int>(levels_.size())) return std::nullopt;
  const auto& level = levels_[static_cast<std::size_t>(t)];
  if (auto it = level.find(key); it != level.end()) return it->second;
  return std::nullopt;
}

std::vector<TaskQueueState> ValueTable::keys_at(int t) const {
  std::vector<TaskQueueState> keys;
  if (t < 0 || t >= static_cast<int>(levels_.size())) return keys;
  for (const auto& [key, v] : levels_[static_cast<std::size_t>(t)]) keys.push_back(key);
  std::sort(keys.begin(), keys.end());
  return keys;
}

ValueTable::Keyed ValueTable::canonical(const TaskQueueState& s, int t) const {
  if (static_cast<int>(s.size()) != params_.N)
    throw ContractError("state dimension " + std::to_string(s.size()) + " differs from N = " +
                        std::to_string(params_.N));
  if (t >= params_.N) {
    LeanForm lf = lean(s, t);
    const double offset = g2m_cost(s, lf, params_);
    return {std::move(lf.lean), offset};
  }
  return {truncate_beyond(s, t), 0.0};
}

std::vector<ValueTable::Branch> ValueTable::branches(const TaskQueueState& s, int L, int t) const {
  std::vector<Branch> out;
  if (t <= 1) return out;
  for (int k = 0; k <= params_.N; ++k) {
    const double pk = params_.arrival[static_cast<std::size_t>(k)];
    if (pk == 0.0) continue;
    for (const bool processed : {true, false}) {
      const double w = pk * (processed ? params_.mu : 1.0 - params_.mu);
      if (w == 0.0) continue;
      Keyed next = canonical(successor(s, L, k, processed), t - 1);
      out.push_back({w, std::move(next.key), next.offset});
    }
  }
  return out;
}

const ValueTable::Expansion& ValueTable::steady_expansion(const TaskQueueState& key) {
  if (auto it = steady_.find(key); it != steady_.end()) return it->second;
  Expansion e;
  e.reserve(static_cast<std::size_t>(key.total()) + 1);
  // Any horizon above N maps successors identically.
  for (int L = 0; L <= key.total(); ++L) e.push_back(branches(key, L, params_.N + 1));
  return steady_.emplace(key, std::move(e)).first->second;
}

double ValueTable::stored(const TaskQueueState& key, int t) const {
  return levels_[static_cast<std::size_t>(t)].at(key);
}

double ValueTable::expected_future(const std::vector<Branch>& brs, int t) {
  double sum = 0.0;
  for (const Branch& b : brs) {
    ensure(b.key, t - 1);
    sum += b.weight * (stored(b.key, t - 1) + b.offset);
  }
  return sum;
}

double ValueTable::future(const TaskQueueState& s, int L, int t) {
  return expected_future(branches(s, L, t), t);
}

double ValueTable::evaluate(const TaskQueueState& key, int t) {
  const int n1 = key[0];
  const bool steady = t - 1 >= params_.N;
  const int max_L = key.total();

  double best = std::numeric_limits<double>::infinity();
  double no_offload_future = 0.0;
  for (int L = 0; L <= max_L; ++L) {
    const double fut =
        steady ? expected_future(steady_expansion(key)[static_cast<std::size_t>(L)], t)
               : future(key, L, t);
    if (L == 0) no_offload_future = fut;
    const double cost = params_.C_o * L + params_.C_p * std::max(n1 - L, 0) + fut;
    best = std::min(best, cost);
  }
  const double without_ama = params_.C_p * n1 + no_offload_future;
  return params_.p_u * best + (1.0 - params_.p_u) * without_ama;
}

void ValueTable::ensure(const TaskQueueState& key, int t) {
  if (t <= 0) return;
  if (static_cast<int>(levels_.size()) <= t) levels_.resize(static_cast<std::size_t>(t) + 1);
  if (levels_[static_cast<std::size_t>(t)].contains(key)) return;

  // Collect every missing entry the new one depends on, then fill upward.
  const auto top = static_cast<std::size_t>(t);
  std::vector<std::vector<TaskQueueState>> pending(top + 1);
  std::vector<std::unordered_set<TaskQueueState>> seen(top + 1);
  pending[top].push_back(key);
  seen[top].insert(key);
  for (std::size_t lvl = top; lvl >= 2; --lvl) {
    const bool steady = static_cast<int>(lvl) - 1 >= params_.N;
    for (std::size_t i = 0; i < pending[lvl].size(); ++i) {
      const TaskQueueState k = pending[lvl][i];
      for (int L = 0; L <= k.total(); ++L) {
        const std::vector<Branch> local =
            steady ? std::vector<Branch>{} : branches(k, L, static_cast<int>(lvl));
        const std::vector<Branch>& brs =
            steady ? steady_expansion(k)[static_cast<std::size_t>(L)] : local;
        for (const Branch& b : brs) {
          if (levels_[lvl - 1].contains(b.key)) continue;
          if (seen[lvl - 1].insert(b.key).second) pending[lvl - 1].push_back(b.key);
        }
      }
    }
  }
  for (std::size_t lvl = 1; lvl <= top; ++lvl)
    for (const TaskQueueState& k : pending[lvl])
      levels_[lvl].emplace(k, evaluate(k, static_cast<int>(lvl)));
}

double ValueTable::value(const TaskQueueState& s, int T) {
  if (T < 0) throw ContractError("horizon must be non-negative");
  if (static_cast<int>(s.size()) != params_.N)
    throw ContractError("state dimension differs from N");
  if (T == 0) return 0.0;
  const Keyed c = canonical(s, T);
  ensure(c.key, T);
  return stored(c.key, T) + c.offset;
}

double ValueTable::value_without_ama(const TaskQueueState& s, int T) {
  if (T < 1) throw ContractError("horizon must be at least 1");
  if (static_cast<int>(s.size()) != params_.N)
    throw ContractError("state dimension differs from N");
  return params_.C_p * s[0] + future(s, 0, T);
}

double ValueTable::forced_at(const TaskQueueState& s, int L, int T) {
  if (T < 1) throw ContractError("horizon must be at least 1");
  if (static_cast<int>(s.size()) != params_.N)
    throw ContractError("state dimension differs from N");
  return instantaneous_cost(s, L, params_, CostBranch::ama) + future(s, L, T);
}

ForcedValue ValueTable::forced(const TaskQueueState& s, int T) {
  if (T < 1) throw ContractError("horizon must be at least 1");
  if (static_cast<int>(s.size()) != params_.N)
    throw ContractError("state dimension differs from N");
  ForcedValue fv;
  fv.by_L.reserve(static_cast<std::size_t>(s.total()) + 1);
  for (int L : valid_decisions(s))
    fv.by_L.push_back(instantaneous_cost(s, L, params_, CostBranch::ama) + future(s, L, T));
  return fv;
}

double value(const TaskQueueState& s, int T, ValueTable& table) { return table.value(s, T); }

double value_with_ama(const TaskQueueState& s, int T, ValueTable& table) {
  return table.forced(s, T).min();
}

double value_without_ama(const TaskQueueState& s, int T, ValueTable& table) {
  return table.value_without_ama(s, T);
}

double value_forced(const TaskQueueState& s, int L, int T, ValueTable& table) {
  return table.forced_at(s, L, T);
}

double f_bar(int T, const TaskQueueState& s, int d, int L, ValueTable& table) {
  return table.value_without_ama(offload_from_deadline(s, d, L), T) + L * table.params().C_o;
}

std::vector<TaskQueueState> reachable_states(const ModelParams& params,
                                             const std::vector<TaskQueueState>& seeds) {
  std::unordered_set<TaskQueueState> seen;
  std::vector<TaskQueueState> frontier;
  for (const auto& s : seeds) {
    if (static_cast<int>(s.size()) != params.N)
      throw ContractError("seed dimension differs from N");
    if (seen.insert(s).second) frontier.push_back(s);
  }
  while (!frontier.empty()) {
    const TaskQueueState s = frontier.back();
    frontier.pop_back();
    for (int L : valid_decisions(s)) {
      for (int k = 0; k <= params.N; ++k) {
        if (params.arrival[static_cast<std::size_t>(k)] == 0.0) continue;
        for (const bool processed : {true, false}) {
          if ((processed ? params.mu : 1.0 - params.mu) == 0.0) continue;
          TaskQueueState next = successor(s, L, k, processed);
          if (seen.insert(next).second) frontier.push_back(std::move(next));
        }
      }
    }
  }
  std::vector<TaskQueueState> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

ValueTable build_table(const ModelParams& params, int T_max,
                       const std::vector<TaskQueueState>& seeds) {
  if (T_max < 1) throw ContractError("T_max must be at least 1");
  ValueTable table(params);
  const std::vector<TaskQueueState> reachable = reachable_states(params, seeds);
  std::size_t naive = 0;
  for (int t = 1; t <= T_max; ++t) {
    std::set<TaskQueueState> truncated;
    for (const auto& s : reachable) {
      truncated.insert(truncate_beyond(s, t));
      (void)table.value(s, t);
    }
    naive += truncated.size();
  }
  table.naive_entries_ = naive;
  return table;
}

}  // namespace offload
