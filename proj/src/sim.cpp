#include "offload/sim.hpp"

#include <cmath>
#include <limits>

namespace offload {

SplitMix64 SplitMix64::stream(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 mixer(seed ^ 0x6a09e667f3bcc909ull);
  const std::uint64_t a = mixer.next();
  SplitMix64 idx(index + 0xbb67ae8584caa73bull);
  return SplitMix64(a ^ idx.next());
}

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

PolicyHandle PolicyHandle::optimal(std::shared_ptr<const PolicyCache> cache) {
  if (!cache) throw ContractError("optimal policy needs a policy cache");
  PolicyHandle h;
  h.kind_ = Kind::optimal;
  h.cache_ = std::move(cache);
  return h;
}

PolicyHandle PolicyHandle::never_offload() { return PolicyHandle{}; }

PolicyHandle PolicyHandle::offload_all_on_ama() {
  PolicyHandle h;
  h.kind_ = Kind::offload_all_on_ama;
  return h;
}

PolicyHandle PolicyHandle::fixed_threshold(int threshold) {
  if (threshold < 0) throw ContractError("threshold must be non-negative");
  PolicyHandle h;
  h.kind_ = Kind::fixed_threshold;
  h.threshold_ = threshold;
  return h;
}

std::string PolicyHandle::name() const {
  switch (kind_) {
    case Kind::optimal:
      return "optimal";
    case Kind::never_offload:
      return "never";
    case Kind::offload_all_on_ama:
      return "all";
    case Kind::fixed_threshold:
      return "threshold:" + std::to_string(threshold_);
  }
  return "unknown";
}

int PolicyHandle::max_horizon() const noexcept {
  return kind_ == Kind::optimal ? cache_->max_horizon() : std::numeric_limits<int>::max();
}

int PolicyHandle::decide(const TaskQueueState& s, int remaining) const {
  switch (kind_) {
    case Kind::optimal:
      return cache_->lookup(s, remaining).total;
    case Kind::never_offload:
      return 0;
    case Kind::offload_all_on_ama:
      return s.total();
    case Kind::fixed_threshold: {
      int L = 0;
      for (std::size_t i = 0; i < s.size() && static_cast<int>(i) < threshold_; ++i) L += s[i];
      return L;
    }
  }
  return 0;
}

namespace {

int sample_arrival(double u, const std::vector<double>& arrival) {
  double cumulative = 0.0;
  for (std::size_t k = 0; k + 1 < arrival.size(); ++k) {
    cumulative += arrival[k];
    if (u < cumulative) return static_cast<int>(k);
  }
  return static_cast<int>(arrival.size()) - 1;
}

}  // namespace

EpisodeResult run_episode(const TaskQueueState& s0, int T, const PolicyHandle& policy,
                          const ModelParams& params, std::uint64_t seed, bool keep_trace) {
  if (T < 1) throw ContractError("horizon must be at least 1");
  if (static_cast<int>(s0.size()) != params.N)
    throw ContractError("initial state dimension differs from N");
  if (policy.max_horizon() < T)
    throw ContractError("policy cache covers horizons up to " +
                        std::to_string(policy.max_horizon()) + ", episode needs " +
                        std::to_string(T));

  SplitMix64 rng(seed);
  EpisodeResult result;
  TaskQueueState s = s0;
  for (int t = 0; t < T; ++t) {
    SlotOutcome outcome;
    outcome.ama_present = rng.uniform() < params.p_u;
    outcome.arrival_deadline = sample_arrival(rng.uniform(), params.arrival);
    outcome.processing_available = rng.uniform() < params.mu;

    int L = 0;
    if (outcome.ama_present) {
      L = policy.decide(s, T - t);
      if (L < 0 || L > s.total())
        throw ContractError("policy " + policy.name() + " returned L = " + std::to_string(L) +
                            " outside valid_decisions" + s.to_string());
    }
    const TaskQueueState kept = offload_most_imminent(s, L);
    const int expired = kept[0];
    TaskQueueState inte = deadline_shift(kept) + arrival_vector(outcome.arrival_deadline, params.N);
    int processed = 0;
    if (outcome.processing_available && !inte.is_zero()) {
      inte = inte - local_processing_vector(inte);
      processed = 1;
    }

    const double slot_cost = params.C_o * L + params.C_p * expired;
    if (keep_trace) result.trace.push_back({s, outcome, L, slot_cost});
    result.total_cost += slot_cost;
    result.offloaded += L;
    result.expired += expired;
    result.processed += processed;
    s = std::move(inte);
  }
  return result;
}

CostEstimate estimate_cost(const TaskQueueState& s0, int T, const PolicyHandle& policy,
                           const ModelParams& params, int episodes, std::uint64_t seed) {
  if (episodes < 1) throw ContractError("episodes must be at least 1");
  CostEstimate est;
  est.episodes.reserve(static_cast<std::size_t>(episodes));
  // Welford accumulation keeps the mean stable over long runs.
  double mean = 0.0;
  double m2 = 0.0;
  for (int i = 0; i < episodes; ++i) {
    const std::uint64_t stream_seed =
        SplitMix64::stream(seed, static_cast<std::uint64_t>(i)).next();
    EpisodeResult r = run_episode(s0, T, policy, params, stream_seed);
    const double delta = r.total_cost - mean;
    mean += delta / (i + 1);
    m2 += delta * (r.total_cost - mean);
    est.episodes.push_back(std::move(r));
  }
  est.mean = mean;
  const double variance = episodes > 1 ? m2 / (episodes - 1) : 0.0;
  est.standard_error = std::sqrt(variance / episodes);
  est.ci_low = mean - 1.96 * est.standard_error;
  est.ci_high = mean + 1.96 * est.standard_error;
  return est;
}

}  // namespace offload
