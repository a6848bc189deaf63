#include "offload/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "offload/statespace.hpp"

namespace offload::oracle {

namespace {

constexpr double kTolerance = 1e-9;

double expected_successors(const TaskQueueState& s, int L, const ModelParams& p,
                           const std::function<double(const TaskQueueState&)>& next_value) {
  double sum = 0.0;
  for (int k = 0; k <= p.N; ++k) {
    const double pk = p.arrival[static_cast<std::size_t>(k)];
    if (pk == 0.0) continue;
    if (p.mu != 0.0) sum += pk * p.mu * next_value(successor(s, L, k, true));
    if (p.mu != 1.0) sum += pk * (1.0 - p.mu) * next_value(successor(s, L, k, false));
  }
  return sum;
}

double tree_value(const TaskQueueState& s, int T, const ModelParams& p) {
  if (T == 0) return 0.0;
  auto next = [&](const TaskQueueState& n) { return tree_value(n, T - 1, p); };
  const int n1 = s[0];
  double best = std::numeric_limits<double>::infinity();
  double idle = 0.0;
  for (int L = 0; L <= s.total(); ++L) {
    const double fut = expected_successors(s, L, p, next);
    if (L == 0) idle = fut;
    best = std::min(best, p.C_o * L + p.C_p * std::max(n1 - L, 0) + fut);
  }
  return p.p_u * best + (1.0 - p.p_u) * (p.C_p * n1 + idle);
}

bool prefix_bound_holds(const std::vector<int>& v) {
  int prefix = 0;
  for (std::size_t m = 1; m <= v.size(); ++m) {
    prefix += v[m - 1];
    if (prefix > static_cast<int>(m) - 1) return false;
  }
  return true;
}

int smallest_min_index(const std::vector<double>& values) {
  const double best = *std::min_element(values.begin(), values.end());
  const double slack = 1e-10 * std::max(1.0, std::abs(best));
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] <= best + slack) return static_cast<int>(i);
  return 0;
}

std::string describe(const TaskQueueState& s, int T, int N) {
  return "N=" + std::to_string(N) + " T=" + std::to_string(T) + " s=" + s.to_string();
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

using Check = VerificationReport (*)(const VerifyBounds&, const ModelParams&);

VerificationReport check_lemma_1(const VerifyBounds& b, const ModelParams&) {
  VerificationReport rep{"lemma_1", 0, {}};
  for (int N = 1; N <= b.catalan_max_N; ++N) {
    ++rep.instances_checked;
    long long box_count = 0;
    std::vector<int> v(static_cast<std::size_t>(N), 0);
    // Odometer over [0, N-1]^N.
    while (true) {
      if (prefix_bound_holds(v)) ++box_count;
      std::size_t i = 0;
      while (i < v.size() && ++v[i] > N - 1) v[i++] = 0;
      if (i == v.size()) break;
    }
    const auto listed = enumerate_reduced(N);
    const double formula = binomial(2 * N, N) / (N + 1);
    bool ok = static_cast<double>(box_count) == formula &&
              static_cast<long long>(listed.size()) == box_count &&
              std::is_sorted(listed.begin(), listed.end());
    for (const auto& s : listed)
      ok = ok && prefix_bound_holds(std::vector<int>(s.counts().begin(), s.counts().end()));
    if (!ok)
      rep.violations.push_back(
          {"N=" + std::to_string(N), formula, static_cast<double>(listed.size())});
  }
  return rep;
}

VerificationReport check_proposition_1(const VerifyBounds& b, const ModelParams& base) {
  VerificationReport rep{"proposition_1", 0, {}};
  for (int N = 1; N <= b.max_N; ++N) {
    const ModelParams p = params_for_dimension(base, N);
    ExhaustiveEvaluator ev(p);
    for (int T = N; T <= b.max_T; ++T) {
      for (const auto& s : states_in_box(N, b.max_component)) {
        ++rep.instances_checked;
        const LeanForm lf = lean(s, T);
        const double direct = ev.value(s, T);
        const double bridged = ev.value(lf.lean, T) + g2m_cost(s, lf, p) + b.g2m_perturbation;
        if (std::abs(direct - bridged) > kTolerance)
          rep.violations.push_back({describe(s, T, N) + " lean=" + lf.lean.to_string(), direct,
                                    bridged});
      }
    }
  }
  return rep;
}

VerificationReport check_proposition_2(const VerifyBounds& b, const ModelParams& base) {
  VerificationReport rep{"proposition_2", 0, {}};
  for (int N = 1; N <= b.max_N; ++N) {
    ExhaustiveEvaluator ev(params_for_dimension(base, N));
    for (int T = 1; T <= b.max_T; ++T)
      for (const auto& s : states_up_to_total(N, b.max_total)) {
        if (s.is_zero()) continue;
        const double j = ev.value(s, T);
        for (const auto& later : postponed_states(s)) {
          ++rep.instances_checked;
          const double jl = ev.value(later, T);
          if (j < jl - kTolerance)
            rep.violations.push_back({describe(s, T, N) + " postponed=" + later.to_string(), j, jl});
        }
      }
  }
  return rep;
}

VerificationReport check_proposition_3(const VerifyBounds& b, const ModelParams& base) {
  VerificationReport rep{"proposition_3", 0, {}};
  for (int N = 1; N <= b.max_N; ++N) {
    ExhaustiveEvaluator ev(params_for_dimension(base, N));
    const double C_o = ev.params().C_o;
    for (int T = 1; T <= b.max_T; ++T)
      for (const auto& s : states_up_to_total(N, b.max_total - 1))
        for (const auto& s_a : adjacent_states(s)) {
          ++rep.instances_checked;
          const double gap = ev.value(s_a, T) - ev.value(s, T);
          const bool below = gap <= C_o + 1e-10 * std::max(1.0, ev.value(s_a, T));
          const bool non_offloading = ev.optimal_decision(s_a, T) == 0;
          if (below != non_offloading)
            rep.violations.push_back(
                {describe(s, T, N) + " s_a=" + s_a.to_string(), C_o, gap});
        }
  }
  return rep;
}

VerificationReport check_lemma_2(const VerifyBounds& b, const ModelParams& base) {
  VerificationReport rep{"lemma_2", 0, {}};
  for (int N = 1; N <= b.max_N; ++N) {
    ExhaustiveEvaluator ev(params_for_dimension(base, N));
    const ModelParams& p = ev.params();
    for (int T = 1; T <= b.max_T; ++T)
      for (const auto& s : states_up_to_total(N, b.max_total)) {
        // Offloading: every L-subset of tasks against the L most imminent.
        for (const auto& removal : states_up_to_total(N, s.total())) {
          bool fits = true;
          for (std::size_t i = 0; i < s.size(); ++i) fits = fits && removal[i] <= s[i];
          if (!fits) continue;
          ++rep.instances_checked;
          const int L = removal.total();
          const double most_imminent = ev.forced(s, L, T);
          const double alternative = p.C_o * L + ev.forced(s - removal, 0, T);
          if (most_imminent > alternative + kTolerance)
            rep.violations.push_back(
                {describe(s, T, N) + " offload=" + removal.to_string(), alternative,
                 most_imminent});
        }
        // Processing: serving the most imminent task against serving any other.
        if (s.is_zero() || T < 1) continue;
        const int d = s.most_imminent_deadline();
        TaskQueueState served = s;
        served.add(d, -1);
        const double best = ev.value(served, T);
        for (int j = d + 1; j <= N; ++j) {
          if (s.at_deadline(j) == 0) continue;
          ++rep.instances_checked;
          TaskQueueState other = s;
          other.add(j, -1);
          const double alt = ev.value(other, T);
          if (best > alt + kTolerance)
            rep.violations.push_back(
                {describe(s, T, N) + " processed deadline " + std::to_string(j), alt, best});
        }
      }
  }
  return rep;
}

std::vector<double> f_curve(ExhaustiveEvaluator& ev, const TaskQueueState& s, int d, int T) {
  std::vector<double> curve;
  const int lo = offload_domain_min(s, d);
  const int hi = offload_domain_max(s, d);
  for (int L = lo; L <= hi; ++L)
    curve.push_back(ev.without_ama(offload_from_deadline(s, d, L), T) + L * ev.params().C_o);
  return curve;
}

VerificationReport check_lemma_3(const VerifyBounds& b, const ModelParams& base) {
  VerificationReport rep{"lemma_3", 0, {}};
  for (int N = 1; N <= b.max_N; ++N) {
    ExhaustiveEvaluator ev(params_for_dimension(base, N));
    for (int T = 1; T <= b.max_T; ++T)
      for (const auto& s : states_up_to_total(N, b.max_total))
        for (int d = 1; d <= N; ++d) {
          const auto curve = f_curve(ev, s, d, T);
          for (std::size_t i = 1; i + 1 < curve.size(); ++i) {
            ++rep.instances_checked;
            const double second = curve[i + 1] - 2.0 * curve[i] + curve[i - 1];
            if (second < -kTolerance)
              rep.violations.push_back(
                  {describe(s, T, N) + " d=" + std::to_string(d) + " L=" +
                       std::to_string(offload_domain_min(s, d) + static_cast<int>(i)),
                   0.0, second});
          }
        }
  }
  return rep;
}

VerificationReport check_lemma_4(const VerifyBounds& b, const ModelParams& base) {
  VerificationReport rep{"lemma_4", 0, {}};
  for (int N = 1; N <= b.max_N; ++N) {
    ExhaustiveEvaluator ev(params_for_dimension(base, N));
    for (int T = 1; T <= b.max_T; ++T)
      for (const auto& s : states_up_to_total(N, b.max_total)) {
        ++rep.instances_checked;
        const int via_f = s[0] + smallest_min_index(f_curve(ev, s, 1, T));
        const int optimal = ev.optimal_decision(s, T);
        if (via_f != optimal) rep.violations.push_back({describe(s, T, N), 1.0 * optimal, 1.0 * via_f});
      }
  }
  return rep;
}

VerificationReport check_theorem_1(const VerifyBounds& b, const ModelParams& base) {
  VerificationReport rep{"theorem_1", 0, {}};
  for (int N = 1; N <= b.max_N; ++N) {
    ExhaustiveEvaluator ev(params_for_dimension(base, N));
    for (int T = 1; T <= b.max_T; ++T)
      for (const auto& s : states_up_to_total(N, b.max_total - 1)) {
        const int L = ev.optimal_decision(s, T);
        for (const auto& s_a : adjacent_states(s)) {
          ++rep.instances_checked;
          const int La = ev.optimal_decision(s_a, T);
          const bool ok = (La >= 1 ? L == La - 1 : L == 0) && (L >= 1 ? La == L + 1 : true);
          if (!ok)
            rep.violations.push_back({describe(s, T, N) + " s_a=" + s_a.to_string(), 1.0 * L,
                                      1.0 * La});
        }
      }
  }
  return rep;
}

VerificationReport check_theorem_2(const VerifyBounds& b, const ModelParams& base) {
  VerificationReport rep{"theorem_2", 0, {}};
  for (int N = 1; N <= b.max_N; ++N) {
    ExhaustiveEvaluator ev(params_for_dimension(base, N));
    for (int T = 1; T <= b.max_T; ++T)
      for (const auto& s : states_up_to_total(N, b.max_total)) {
        ++rep.instances_checked;
        int smallest = s.total();
        for (int L = 0; L <= s.total(); ++L)
          if (ev.optimal_decision(offload_most_imminent(s, L), T) == 0) {
            smallest = L;
            break;
          }
        const int optimal = ev.optimal_decision(s, T);
        if (smallest != optimal)
          rep.violations.push_back({describe(s, T, N), 1.0 * optimal, 1.0 * smallest});
      }
  }
  return rep;
}

const std::vector<std::pair<std::string, Check>>& registry() {
  static const std::vector<std::pair<std::string, Check>> checks = {
      {"proposition_1", check_proposition_1}, {"proposition_2", check_proposition_2},
      {"proposition_3", check_proposition_3}, {"lemma_1", check_lemma_1},
      {"lemma_2", check_lemma_2},             {"lemma_3", check_lemma_3},
      {"lemma_4", check_lemma_4},             {"theorem_1", check_theorem_1},
      {"theorem_2", check_theorem_2},
  };
  return checks;
}

}  // namespace

double brute_force_value(const TaskQueueState& s, int T, const ModelParams& params) {
  if (T < 0) throw ContractError("horizon must be non-negative");
  if (static_cast<int>(s.size()) != params.N) throw ContractError("state dimension differs from N");
  if (params.N > TreeGuard::max_N || T > TreeGuard::max_T || s.total() > TreeGuard::max_total)
    throw ContractError("event tree too large: N=" + std::to_string(params.N) +
                        " T=" + std::to_string(T) + " total=" + std::to_string(s.total()) +
                        " (limits N<=" + std::to_string(TreeGuard::max_N) +
                        " T<=" + std::to_string(TreeGuard::max_T) +
                        " total<=" + std::to_string(TreeGuard::max_total) + ")");
  return tree_value(s, T, params);
}

int brute_force_min_excess(const TaskQueueState& s, int T) {
  if (T < 1) throw ContractError("horizon must be at least 1");
  const int limit = std::min(static_cast<int>(s.size()), T);
  std::vector<int> kept(s.counts().begin(), s.counts().end());
  for (std::size_t i = static_cast<std::size_t>(limit); i < kept.size(); ++i) kept[i] = 0;
  for (int L = 0;; ++L) {
    if (prefix_bound_holds(kept)) return L;
    // Remove one more most-imminent task.
    for (int& c : kept)
      if (c > 0) {
        --c;
        break;
      }
  }
}

ExhaustiveEvaluator::ExhaustiveEvaluator(ModelParams params) : params_(std::move(params)) {
  params_.validate(1e-9);
}

double ExhaustiveEvaluator::future(const TaskQueueState& s, int L, int T) {
  if (T <= 1) return 0.0;
  return expected_successors(s, L, params_,
                             [&](const TaskQueueState& n) { return value(n, T - 1); });
}

double ExhaustiveEvaluator::value(const TaskQueueState& s, int T) {
  if (T == 0) return 0.0;
  const auto key = std::pair{T, s};
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  double best = std::numeric_limits<double>::infinity();
  for (int L = 0; L <= s.total(); ++L) best = std::min(best, forced(s, L, T));
  const double v = params_.p_u * best + (1.0 - params_.p_u) * without_ama(s, T);
  memo_.emplace(key, v);
  return v;
}

double ExhaustiveEvaluator::forced(const TaskQueueState& s, int L, int T) {
  return params_.C_o * L + params_.C_p * std::max(s[0] - L, 0) + future(s, L, T);
}

double ExhaustiveEvaluator::without_ama(const TaskQueueState& s, int T) {
  return params_.C_p * s[0] + future(s, 0, T);
}

int ExhaustiveEvaluator::optimal_decision(const TaskQueueState& s, int T) {
  std::vector<double> curve;
  for (int L = 0; L <= s.total(); ++L) curve.push_back(forced(s, L, T));
  return smallest_min_index(curve);
}

const std::vector<std::string>& property_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

VerificationReport verify(std::string_view property, const VerifyBounds& bounds,
                          const ModelParams& params) {
  for (const auto& [name, fn] : registry())
    if (name == property) return fn(bounds, params);
  throw ContractError("unknown property '" + std::string(property) + "'");
}

ModelParams params_for_dimension(const ModelParams& base, int N) {
  if (base.N == N) return base;
  return ModelParams::with_uniform_arrivals(N, base.p_u, base.mu, base.C_o, base.C_p,
                                            base.arrival.at(0));
}

std::vector<TaskQueueState> states_up_to_total(int N, int max_total) {
  std::vector<TaskQueueState> out;
  std::vector<int> v;
  std::function<void(int)> rec = [&](int left) {
    if (static_cast<int>(v.size()) == N) {
      out.emplace_back(v);
      return;
    }
    for (int c = 0; c <= left; ++c) {
      v.push_back(c);
      rec(left - c);
      v.pop_back();
    }
  };
  if (max_total >= 0) rec(max_total);
  return out;
}

std::vector<TaskQueueState> states_in_box(int N, int max_component) {
  std::vector<TaskQueueState> out;
  std::vector<int> v;
  std::function<void()> rec = [&] {
    if (static_cast<int>(v.size()) == N) {
      out.emplace_back(v);
      return;
    }
    for (int c = 0; c <= max_component; ++c) {
      v.push_back(c);
      rec();
      v.pop_back();
    }
  };
  rec();
  return out;
}

std::vector<TaskQueueState> postponed_states(const TaskQueueState& s) {
  std::vector<TaskQueueState> out;
  const int d = s.most_imminent_deadline();
  if (d == 0) return out;
  for (int later = d + 1; later <= static_cast<int>(s.size()); ++later) {
    TaskQueueState moved = s;
    moved.add(d, -1);
    moved.add(later, 1);
    out.push_back(std::move(moved));
  }
  return out;
}

std::vector<TaskQueueState> adjacent_states(const TaskQueueState& s) {
  std::vector<TaskQueueState> out;
  const int d = s.is_zero() ? static_cast<int>(s.size()) : s.most_imminent_deadline();
  for (int j = 1; j <= d; ++j) {
    TaskQueueState a = s;
    a.add(j, 1);
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace offload::oracle
