#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "offload/model.hpp"
#include "offload/oracle.hpp"

namespace offload::cli {

/// Malformed or invalid configuration; `field` names the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  [[nodiscard]] const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

struct RunConfig {
  ModelParams model;
  int horizon = 1;
  TaskQueueState initial_state;
  int episodes = 1000;
  std::uint64_t seed = 1;
  std::string output_dir = ".";
};

/**
 * Flat `key = value` text, one entry per line, `#` starts a comment.
 * Arrays are bracketed: `p = [0.5, 0.25, 0.25]`. Instead of `p`, `p_0 = x`
 * spreads 1 - x uniformly over deadlines 1..N.
 *
 * Keys: N, p_u, mu, C_o, C_p, p | p_0, horizon, initial_state, episodes,
 * seed, output_dir. initial_state defaults to the empty queue.
 */
[[nodiscard]] RunConfig parse_config(std::string_view text);
[[nodiscard]] RunConfig load_config(const std::filesystem::path& path);

/// "1,2,3" or "(1,2,3)" or "[1,2,3]".
[[nodiscard]] TaskQueueState parse_state(std::string_view text);
/// States separated by ';'.
[[nodiscard]] std::vector<TaskQueueState> parse_chain(std::string_view text);

/// 12 significant digits, '.' decimal point, independent of locale.
[[nodiscard]] std::string format_cost(double v);

/// Which part of the state space a policy map covers: components named in
/// `fixed` (1-based deadline -> count) are pinned, the rest range over
/// [box_lo, box_hi].
struct SliceSpec {
  std::map<int, int> fixed;
  int box_lo = 0;
  int box_hi = 5;
};

/// "n3=1" or "3=1".
void add_slice_term(SliceSpec& slice, std::string_view term);
/// "lo..hi"
void set_box(SliceSpec& slice, std::string_view range);

inline constexpr std::size_t kPolicyMapBudget = 200000;

enum ExitCode : int { kOk = 0, kFailed = 1, kUsage = 2 };

int cmd_solve(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log);
int cmd_policy_map(const RunConfig& cfg, const SliceSpec& slice,
                   const std::filesystem::path& out_dir, std::ostream& log);
int cmd_adjacent_scan(const RunConfig& cfg, const std::vector<TaskQueueState>& chain,
                      const std::filesystem::path& out_dir, std::ostream& log);
/// Sweeps T = 1..cfg.horizon with the initial state as seed.
int cmd_memory_report(const RunConfig& cfg, const std::filesystem::path& out_dir,
                      std::ostream& log);
/// policy: optimal | never | all | threshold:K
int cmd_simulate(const RunConfig& cfg, std::string_view policy,
                 const std::filesystem::path& out_dir, std::ostream& log);
/// Empty `properties` runs all nine.
int cmd_verify(const ModelParams& params, const oracle::VerifyBounds& bounds,
               const std::vector<std::string>& properties, const std::filesystem::path& out_dir,
               std::ostream& log);

}  // namespace offload::cli
