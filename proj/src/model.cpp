#include "offload/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace offload {

namespace {

void require(bool cond, const std::string& what) {
  if (!cond) throw ContractError(what);
}

}  // namespace

TaskQueueState::TaskQueueState(std::size_t max_deadline) : counts_(max_deadline, 0) {}

TaskQueueState::TaskQueueState(std::vector<int> counts) : counts_(std::move(counts)) {
  for (int c : counts_) require(c >= 0, "task counts must be non-negative");
}

TaskQueueState::TaskQueueState(std::initializer_list<int> counts)
    : TaskQueueState(std::vector<int>(counts)) {}

int TaskQueueState::at_deadline(int deadline) const {
  require(deadline >= 1 && static_cast<std::size_t>(deadline) <= counts_.size(),
          "deadline out of range");
  return counts_[static_cast<std::size_t>(deadline - 1)];
}

int TaskQueueState::total() const noexcept {
  return std::accumulate(counts_.begin(), counts_.end(), 0);
}

bool TaskQueueState::is_zero() const noexcept {
  return std::all_of(counts_.begin(), counts_.end(), [](int c) { return c == 0; });
}

int TaskQueueState::most_imminent_deadline() const noexcept {
  for (std::size_t i = 0; i < counts_.size(); ++i)
    if (counts_[i] > 0) return static_cast<int>(i) + 1;
  return 0;
}

void TaskQueueState::add(int deadline, int amount) {
  require(deadline >= 1 && static_cast<std::size_t>(deadline) <= counts_.size(),
          "deadline out of range");
  int& slot = counts_[static_cast<std::size_t>(deadline - 1)];
  require(slot + amount >= 0, "task counts must be non-negative");
  slot += amount;
}

std::string TaskQueueState::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(counts_[i]);
  }
  out += ')';
  return out;
}

std::size_t TaskQueueStateHash::operator()(const TaskQueueState& s) const noexcept {
  std::size_t h = s.size();
  for (int c : s.counts()) h = (h * 1000003u) ^ (static_cast<std::size_t>(c) + 0x9e3779b97f4a7c15ull);
  return h;
}

void ModelParams::validate(double sum_tolerance) const {
  require(N >= 1, "N must be a positive integer");
  require(p_u >= 0.0 && p_u <= 1.0, "p_u must lie in [0,1]");
  require(mu >= 0.0 && mu <= 1.0, "mu must lie in [0,1]");
  require(C_o > 0.0, "C_o must be positive");
  require(C_p > C_o, "C_p must exceed C_o");
  require(arrival.size() == static_cast<std::size_t>(N) + 1,
          "arrival distribution must have N+1 entries (p_0..p_N)");
  for (double p : arrival) require(p >= 0.0 && p <= 1.0, "arrival probabilities must lie in [0,1]");
  const double sum = std::accumulate(arrival.begin(), arrival.end(), 0.0);
  require(std::abs(sum - 1.0) <= sum_tolerance, "arrival probabilities must sum to 1");
}

ModelParams ModelParams::with_uniform_arrivals(int N, double p_u, double mu, double C_o,
                                               double C_p, double p_0) {
  require(N >= 1, "N must be a positive integer");
  ModelParams params;
  params.N = N;
  params.p_u = p_u;
  params.mu = mu;
  params.C_o = C_o;
  params.C_p = C_p;
  params.arrival.assign(static_cast<std::size_t>(N) + 1, (1.0 - p_0) / N);
  params.arrival[0] = p_0;
  return params;
}

double instantaneous_cost(const TaskQueueState& s, int L, const ModelParams& params,
                          CostBranch branch) {
  require(L >= 0 && L <= s.total(), "offload decision outside valid_decisions(s)");
  const int n1 = s.size() ? s[0] : 0;
  const double with_ama = params.C_o * L + params.C_p * std::max(n1 - L, 0);
  const double without_ama = params.C_p * n1;
  switch (branch) {
    case CostBranch::ama:
      return with_ama;
    case CostBranch::no_ama:
      return without_ama;
    case CostBranch::expected:
      break;
  }
  return params.p_u * with_ama + (1.0 - params.p_u) * without_ama;
}

TaskQueueState offload_vector(const TaskQueueState& s, int L) {
  require(L >= 0 && L <= s.total(), "offload decision outside valid_decisions(s)");
  std::vector<int> o(s.size(), 0);
  for (std::size_t i = 0; i < s.size() && L > 0; ++i) {
    o[i] = std::min(L, s[i]);
    L -= o[i];
  }
  return TaskQueueState(std::move(o));
}

TaskQueueState offload_most_imminent(const TaskQueueState& s, int L) {
  return s - offload_vector(s, L);
}

TaskQueueState deadline_shift(const TaskQueueState& v) {
  std::vector<int> out(v.size(), 0);
  for (std::size_t i = 1; i < v.size(); ++i) out[i - 1] = v[i];
  return TaskQueueState(std::move(out));
}

TaskQueueState arrival_vector(int k, int N) {
  require(N >= 1, "N must be a positive integer");
  require(k >= 0 && k <= N, "arrival deadline must lie in 0..N");
  TaskQueueState a(static_cast<std::size_t>(N));
  if (k > 0) a.add(k, 1);
  return a;
}

TaskQueueState local_processing_vector(const TaskQueueState& v) {
  TaskQueueState l(v.size());
  if (const int d = v.most_imminent_deadline(); d > 0) l.add(d, 1);
  return l;
}

TaskQueueState successor(const TaskQueueState& s, int L, int k, bool processed) {
  const auto N = static_cast<int>(s.size());
  TaskQueueState inte = deadline_shift(offload_most_imminent(s, L)) + arrival_vector(k, N);
  if (!processed) return inte;
  return inte - local_processing_vector(inte);
}

int offload_domain_min(const TaskQueueState& s, int d) {
  require(d >= 1 && static_cast<std::size_t>(d) <= s.size(), "deadline out of range");
  return d == 1 ? s[0] : 0;
}

int offload_domain_max(const TaskQueueState& s, int d) {
  require(d >= 1 && static_cast<std::size_t>(d) <= s.size(), "deadline out of range");
  int sum = 0;
  for (std::size_t i = static_cast<std::size_t>(d - 1); i < s.size(); ++i) sum += s[i];
  return sum;
}

TaskQueueState offload_from_deadline(const TaskQueueState& s, int d, int L) {
  require(L >= offload_domain_min(s, d) && L <= offload_domain_max(s, d),
          "offload count outside the domain for deadline " + std::to_string(d));
  std::vector<int> out(s.counts().begin(), s.counts().end());
  for (std::size_t i = static_cast<std::size_t>(d - 1); i < out.size() && L > 0; ++i) {
    const int taken = std::min(L, out[i]);
    out[i] -= taken;
    L -= taken;
  }
  return TaskQueueState(std::move(out));
}

TaskQueueState truncate_beyond(const TaskQueueState& s, int limit) {
  std::vector<int> out(s.counts().begin(), s.counts().end());
  for (std::size_t i = 0; i < out.size(); ++i)
    if (static_cast<int>(i) + 1 > limit) out[i] = 0;
  return TaskQueueState(std::move(out));
}

TaskQueueState operator+(const TaskQueueState& a, const TaskQueueState& b) {
  require(a.size() == b.size(), "state dimensions differ");
  std::vector<int> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return TaskQueueState(std::move(out));
}

TaskQueueState operator-(const TaskQueueState& a, const TaskQueueState& b) {
  require(a.size() == b.size(), "state dimensions differ");
  std::vector<int> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return TaskQueueState(std::move(out));
}

}  // namespace offload
