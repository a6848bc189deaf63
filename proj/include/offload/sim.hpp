#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "offload/model.hpp"
#include "offload/policy.hpp"

namespace offload {

/// SplitMix64. Small, seedable, and splittable by (seed, stream index).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  /// Independent generator for stream `index` of a run seeded with `seed`.
  static SplitMix64 stream(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next();
  /// Uniform double in [0, 1) built from the top 53 bits.
  double uniform();

 private:
  std::uint64_t state_;
};

struct SlotRecord {
  TaskQueueState state;
  SlotOutcome outcome;
  int decision = 0;
  double cost = 0.0;
};

struct EpisodeResult {
  double total_cost = 0.0;
  int offloaded = 0;
  int expired = 0;
  int processed = 0;
  std::vector<SlotRecord> trace;
};

/// Offloading rule queried when the AMA is present.
class PolicyHandle {
 public:
  enum class Kind { optimal, never_offload, offload_all_on_ama, fixed_threshold };

  static PolicyHandle optimal(std::shared_ptr<const PolicyCache> cache);
  static PolicyHandle never_offload();
  static PolicyHandle offload_all_on_ama();
  /// Offloads every task whose deadline is at most `threshold`.
  static PolicyHandle fixed_threshold(int threshold);

  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  [[nodiscard]] std::string name() const;
  [[nodiscard]] int decide(const TaskQueueState& s, int remaining) const;
  /// Longest remaining horizon the policy can answer for.
  [[nodiscard]] int max_horizon() const noexcept;

 private:
  Kind kind_ = Kind::never_offload;
  int threshold_ = 0;
  std::shared_ptr<const PolicyCache> cache_;
};

[[nodiscard]] EpisodeResult run_episode(const TaskQueueState& s0, int T, const PolicyHandle& policy,
                                        const ModelParams& params, std::uint64_t seed,
                                        bool keep_trace = false);

struct CostEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::vector<EpisodeResult> episodes;
};

/// Episode i uses stream (seed, i), so adding episodes never perturbs earlier ones.
[[nodiscard]] CostEstimate estimate_cost(const TaskQueueState& s0, int T, const PolicyHandle& policy,
                                         const ModelParams& params, int episodes,
                                         std::uint64_t seed);

}  // namespace offload
