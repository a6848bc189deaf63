#include <fstream>
#include <memory>

#include "offload/cli.hpp"
#include "offload/dp.hpp"
#include "offload/policy.hpp"
#include "offload/sim.hpp"
#include "offload/statespace.hpp"

namespace offload::cli {

namespace {

std::ofstream open_output(const std::filesystem::path& out_dir, const std::string& name) {
  std::filesystem::create_directories(out_dir);
  std::ofstream out(out_dir / name, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + (out_dir / name).string());
  return out;
}

std::string join_counts(const TaskQueueState& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s[i]);
  }
  return out;
}

std::string state_header(int N) {
  std::string out;
  for (int i = 1; i <= N; ++i) {
    if (i > 1) out += ',';
    out += "n_" + std::to_string(i);
  }
  return out;
}

}  // namespace

int cmd_solve(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log) {
  const int T = cfg.horizon;
  ValueTable table(cfg.model);
  const double J = table.value(cfg.initial_state, T);
  const DecisionOutcome d = optimal_decision(cfg.initial_state, T, table);

  auto out = open_output(out_dir, "decision.csv");
  const std::string header = "T,state,J_total,J_average,L_star,L_g,L_r";
  const std::string row = std::to_string(T) + ",\"" + cfg.initial_state.to_string() + "\"," +
                          format_cost(J) + "," + format_cost(J / T) + "," +
                          std::to_string(d.total) + "," + std::to_string(d.from_reduction) + "," +
                          std::to_string(d.from_dp);
  out << header << '\n' << row << '\n';
  log << "state " << cfg.initial_state.to_string() << "  T=" << T << '\n'
      << "J_T      = " << format_cost(J) << '\n'
      << "J_T / T  = " << format_cost(J / T) << '\n'
      << "L*       = " << d.total << "  (L_g=" << d.from_reduction << ", L_r=" << d.from_dp
      << ")\n";
  return kOk;
}

int cmd_policy_map(const RunConfig& cfg, const SliceSpec& slice,
                   const std::filesystem::path& out_dir, std::ostream& log) {
  const int N = cfg.model.N;
  const int T = cfg.horizon;
  for (const auto& [d, v] : slice.fixed)
    if (d > N) {
      log << "error: slice fixes deadline " << d << " but N = " << N << '\n';
      return kUsage;
    }

  const int free_dims = N - static_cast<int>(slice.fixed.size());
  const long long width = std::max(0, slice.box_hi - slice.box_lo + 1);
  long long rows = width == 0 ? 0 : 1;
  for (int i = 0; i < free_dims && rows > 0; ++i) {
    rows *= width;
    if (rows > static_cast<long long>(kPolicyMapBudget)) break;
  }
  if (rows > static_cast<long long>(kPolicyMapBudget)) {
    log << "error: box covers more than " << kPolicyMapBudget << " states; narrow the box or fix"
        << " more components with --slice\n";
    return kFailed;
  }

  auto out = open_output(out_dir, "policy_map.csv");
  out << state_header(N) << ",T,L_star,offloading_flag\n";
  if (rows == 0) return kOk;

  ValueTable table(cfg.model);
  std::vector<int> counts(static_cast<std::size_t>(N), slice.box_lo);
  for (const auto& [d, v] : slice.fixed) counts[static_cast<std::size_t>(d - 1)] = v;
  std::vector<std::size_t> free_idx;
  for (int i = 0; i < N; ++i)
    if (!slice.fixed.contains(i + 1)) free_idx.push_back(static_cast<std::size_t>(i));

  // Odometer over free components, first deadline varying slowest.
  long long offloading = 0;
  while (true) {
    const TaskQueueState s(counts);
    const DecisionOutcome d = optimal_decision(s, T, table);
    offloading += d.classified_offloading;
    out << join_counts(s) << ',' << T << ',' << d.total << ','
        << (d.classified_offloading ? 1 : 0) << '\n';
    std::size_t k = free_idx.size();
    while (k > 0) {
      auto& c = counts[free_idx[k - 1]];
      if (++c <= slice.box_hi) break;
      c = slice.box_lo;
      --k;
    }
    if (k == 0) break;
  }
  log << "policy map: " << rows << " states, " << offloading << " offloading, "
      << rows - offloading << " non-offloading\n";
  return kOk;
}

int cmd_adjacent_scan(const RunConfig& cfg, const std::vector<TaskQueueState>& chain,
                      const std::filesystem::path& out_dir, std::ostream& log) {
  const int N = cfg.model.N;
  for (const auto& s : chain)
    if (static_cast<int>(s.size()) != N) {
      log << "error: chain state " << s.to_string() << " does not have N = " << N
          << " components\n";
      return kUsage;
    }
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    if (!adjacency(chain[i], chain[i + 1])) {
      log << "error: " << chain[i + 1].to_string() << " is not adjacent to "
          << chain[i].to_string() << '\n';
      return kFailed;
    }

  const int T = cfg.horizon;
  ValueTable table(cfg.model);
  auto out = open_output(out_dir, "adjacent_scan.csv");
  out << "index," << state_header(N) << ",L,J_forced,is_argmin\n";
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const ForcedValue fv = table.forced(chain[i], T);
    const int best = fv.argmin();
    for (std::size_t L = 0; L < fv.by_L.size(); ++L)
      out << i + 1 << ',' << join_counts(chain[i]) << ',' << L << ',' << format_cost(fv.by_L[L])
          << ',' << (static_cast<int>(L) == best ? 1 : 0) << '\n';
    log << "s" << i + 1 << " = " << chain[i].to_string() << "  argmin L = " << best << '\n';
  }
  return kOk;
}

int cmd_memory_report(const RunConfig& cfg, const std::filesystem::path& out_dir,
                      std::ostream& log) {
  auto out = open_output(out_dir, "memory.csv");
  out << "T,naive_entries,lean_entries\n";
  for (int T = 1; T <= cfg.horizon; ++T) {
    const ValueTable table = build_table(cfg.model, T, {cfg.initial_state});
    out << T << ',' << table.naive_entries() << ',' << table.size() << '\n';
    if (T == cfg.horizon)
      log << "T=" << T << ": naive " << table.naive_entries() << " entries, lean "
          << table.size() << " entries\n";
  }
  return kOk;
}

int cmd_simulate(const RunConfig& cfg, std::string_view policy,
                 const std::filesystem::path& out_dir, std::ostream& log) {
  const int T = cfg.horizon;
  ValueTable table(cfg.model);
  PolicyHandle handle;
  if (policy == "optimal") {
    handle = PolicyHandle::optimal(
        std::make_shared<const PolicyCache>(build_policy_cache(table, T)));
  } else if (policy == "never") {
    handle = PolicyHandle::never_offload();
  } else if (policy == "all") {
    handle = PolicyHandle::offload_all_on_ama();
  } else if (policy.starts_with("threshold:")) {
    const std::string arg(policy.substr(10));
    int theta = 0;
    try {
      theta = std::stoi(arg);
    } catch (const std::exception&) {
      log << "error: bad threshold '" << arg << "'\n";
      return kUsage;
    }
    handle = PolicyHandle::fixed_threshold(theta);
  } else {
    log << "error: unknown policy '" << policy << "' (optimal, never, all, threshold:K)\n";
    return kUsage;
  }

  const CostEstimate est =
      estimate_cost(cfg.initial_state, T, handle, cfg.model, cfg.episodes, cfg.seed);
  const double J = table.value(cfg.initial_state, T);

  auto episodes = open_output(out_dir, "episodes.csv");
  episodes << "episode,total_cost,offloaded,expired,processed\n";
  for (std::size_t i = 0; i < est.episodes.size(); ++i) {
    const EpisodeResult& r = est.episodes[i];
    episodes << i << ',' << format_cost(r.total_cost) << ',' << r.offloaded << ',' << r.expired
             << ',' << r.processed << '\n';
  }

  auto summary = open_output(out_dir, "summary.csv");
  summary << "policy,episodes,T,seed,mean_total,standard_error,ci95_low,ci95_high,mean_average,"
             "dp_total,dp_average\n"
          << handle.name() << ',' << cfg.episodes << ',' << T << ',' << cfg.seed << ','
          << format_cost(est.mean) << ',' << format_cost(est.standard_error) << ','
          << format_cost(est.ci_low) << ',' << format_cost(est.ci_high) << ','
          << format_cost(est.mean / T) << ',' << format_cost(J) << ',' << format_cost(J / T)
          << '\n';
  log << "policy " << handle.name() << ", " << cfg.episodes << " episodes, T=" << T << '\n'
      << "mean total cost " << format_cost(est.mean) << " +/- " << format_cost(est.standard_error)
      << " (95% CI " << format_cost(est.ci_low) << " .. " << format_cost(est.ci_high) << ")\n"
      << "optimal expected total cost " << format_cost(J) << '\n';
  return kOk;
}

int cmd_verify(const ModelParams& params, const oracle::VerifyBounds& bounds,
               const std::vector<std::string>& properties, const std::filesystem::path& out_dir,
               std::ostream& log) {
  const auto& known = oracle::property_names();
  const std::vector<std::string> selected = properties.empty() ? known : properties;
  for (const auto& name : selected)
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      log << "error: unknown property '" << name << "'\n";
      return kUsage;
    }

  auto out = open_output(out_dir, "verify.csv");
  out << "property,instances,violations,status\n";
  bool all_passed = true;
  for (const auto& name : selected) {
    const oracle::VerificationReport rep = oracle::verify(name, bounds, params);
    all_passed = all_passed && rep.passed();
    out << rep.property << ',' << rep.instances_checked << ',' << rep.violations.size() << ','
        << (rep.passed() ? "pass" : "FAIL") << '\n';
    log << (rep.passed() ? "[pass] " : "[FAIL] ") << rep.property << "  ("
        << rep.instances_checked << " instances, " << rep.violations.size() << " violations)\n";
    for (std::size_t i = 0; i < rep.violations.size() && i < 5; ++i)
      log << "    " << rep.violations[i].inputs << "  expected " << format_cost(rep.violations[i].expected)
          << " got " << format_cost(rep.violations[i].got) << '\n';
  }
  return all_passed ? kOk : kFailed;
}

}  // namespace offload::cli
