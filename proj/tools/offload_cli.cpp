#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "offload/cli.hpp"

using namespace offload;
using namespace offload::cli;

namespace {

struct CommonArgs {
  std::string config;
  std::string out;
  std::optional<int> horizon;
  std::optional<std::uint64_t> seed;
  std::optional<int> episodes;
  std::optional<std::string> state;
};

void add_common(CLI::App* sub, CommonArgs& a, bool needs_config = true) {
  auto* opt = sub->add_option("--config,-c", a.config, "model configuration file");
  if (needs_config) opt->required();
  sub->add_option("--out,-o", a.out, "output directory (overrides output_dir)");
  sub->add_option("--horizon,-T", a.horizon, "horizon T (overrides config)");
  sub->add_option("--state,-s", a.state, "initial state, e.g. 0,1,2");
}

RunConfig resolve(const CommonArgs& a) {
  RunConfig cfg = load_config(a.config);
  if (a.horizon) {
    if (*a.horizon < 1) throw ConfigError("horizon", "must be at least 1");
    cfg.horizon = *a.horizon;
  }
  if (a.seed) cfg.seed = *a.seed;
  if (a.episodes) {
    if (*a.episodes < 1) throw ConfigError("episodes", "must be at least 1");
    cfg.episodes = *a.episodes;
  }
  if (a.state) {
    cfg.initial_state = parse_state(*a.state);
    if (cfg.initial_state.size() != static_cast<std::size_t>(cfg.model.N))
      throw ConfigError("state", "needs N = " + std::to_string(cfg.model.N) + " components");
  }
  if (!a.out.empty()) cfg.output_dir = a.out;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact finite-horizon offloading policies for deadline-constrained tasks"};
  app.require_subcommand(1);

  CommonArgs args;
  std::vector<std::string> slice_terms;
  std::string box;
  std::string chain;
  std::string policy = "optimal";
  std::vector<std::string> properties;
  oracle::VerifyBounds bounds;
  double corrupt_g2m = 0.0;

  auto* solve = app.add_subcommand("solve", "optimal expected cost and decision for one state");
  add_common(solve, args);

  auto* pmap = app.add_subcommand("policy-map", "optimal decision over a box of states");
  add_common(pmap, args);
  pmap->add_option("--slice", slice_terms, "pin a component, e.g. n3=1 (repeatable)");
  pmap->add_option("--box", box, "component range lo..hi for unpinned deadlines (default 0..5)");

  auto* scan = app.add_subcommand("adjacent-scan", "forced costs along a chain of adjacent states");
  add_common(scan, args);
  scan->add_option("--chain", chain, "states separated by ';'")->required();

  auto* mem = app.add_subcommand("memory-report", "naive vs lean table sizes for T = 1..horizon");
  add_common(mem, args);

  auto* sim = app.add_subcommand("simulate", "Monte Carlo cost of a policy");
  add_common(sim, args);
  sim->add_option("--seed", args.seed, "base seed");
  sim->add_option("--episodes,-n", args.episodes, "number of episodes");
  sim->add_option("--policy", policy, "optimal | never | all | threshold:K");

  auto* ver = app.add_subcommand("verify", "check structural properties on bounded instances");
  add_common(ver, args);
  ver->add_option("--properties", properties, "subset to check (default: all)")->delimiter(',');
  ver->add_option("--max-N", bounds.max_N, "largest dimension");
  ver->add_option("--max-total", bounds.max_total, "largest task count");
  ver->add_option("--max-T", bounds.max_T, "largest horizon");
  ver->add_option("--max-component", bounds.max_component, "per-deadline box bound");
  ver->add_option("--catalan-max-N", bounds.catalan_max_N, "largest N for reduced-state counts");
  ver->add_option("--corrupt-g2m", corrupt_g2m)->group("");  // negative control

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    const RunConfig cfg = resolve(args);
    const std::filesystem::path out = cfg.output_dir;
    if (*solve) return cmd_solve(cfg, out, std::cout);
    if (*pmap) {
      SliceSpec spec;
      for (const auto& t : slice_terms) add_slice_term(spec, t);
      if (!box.empty()) set_box(spec, box);
      return cmd_policy_map(cfg, spec, out, std::cout);
    }
    if (*scan) {
      const auto states = parse_chain(chain);
      if (states.empty()) throw ConfigError("chain", "no states given");
      return cmd_adjacent_scan(cfg, states, out, std::cout);
    }
    if (*mem) return cmd_memory_report(cfg, out, std::cout);
    if (*sim) return cmd_simulate(cfg, policy, out, std::cout);
    if (*ver) {
      bounds.g2m_perturbation = corrupt_g2m;
      return cmd_verify(cfg.model, bounds, properties, out, std::cout);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kUsage;
  } catch (const ContractError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailed;
  }
  return kUsage;
}
