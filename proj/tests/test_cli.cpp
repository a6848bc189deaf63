#include <algorithm>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "offload/cli.hpp"

using namespace offload;
using namespace offload::cli;

namespace {

const char* kTable1 = R"(
# comment
N = 3
p_u = 0.7
mu = 0.7
C_o = 1
C_p = 3
p_0 = 0.5
horizon = 1000
)";

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("offload_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

int count_lines(const std::string& text) {
  return static_cast<int>(std::count(text.begin(), text.end(), '\n'));
}

}  // namespace

TEST_CASE("config parsing") {
  const RunConfig cfg = parse_config(kTable1);
  CHECK(cfg.model.N == 3);
  CHECK(cfg.horizon == 1000);
  CHECK(cfg.model.arrival[3] == doctest::Approx(1.0 / 6));
  CHECK(cfg.initial_state == TaskQueueState{0, 0, 0});

  const RunConfig full = parse_config("N=2\np_u=.5\nmu=.5\nC_o=1\nC_p=3\np=[1/2, 1/4, 1/4]\n");
  CHECK(full.model.arrival == std::vector<double>{0.5, 0.25, 0.25});

  auto field_of = [](const std::string& text) {
    try {
      (void)parse_config(text);
    } catch (const ConfigError& e) {
      return e.field();
    }
    return std::string("<none>");
  };
  CHECK(field_of("N=2\np_u=.5\nmu=.5\nC_o=3\nC_p=1\np_0=.5\n") == "C_p");
  CHECK(field_of("N=2\np_u=.5\nmu=.5\nC_o=1\nC_p=3\np=[.5,.25,.2]\n") == "p");
  CHECK(field_of("N=2\np_u=.5\nmu=.5\nC_o=1\nC_p=3\n") == "p");
  CHECK(field_of("N=2\np_u=.5\nmu=.5\nC_o=1\nC_p=3\np_0=.5\ncolour=red\n") == "colour");
  CHECK(field_of("N=2\np_u=2\nmu=.5\nC_o=1\nC_p=3\np_0=.5\n") == "p_u");
  CHECK(field_of("N=2\np_u=.5\nmu=x\nC_o=1\nC_p=3\np_0=.5\n") == "mu");
  CHECK(field_of("p_u=.5\nmu=.5\nC_o=1\nC_p=3\np_0=.5\n") == "N");
  CHECK(field_of("N=2\np_u=.5\nmu=.5\nC_o=1\nC_p=3\np_0=.5\ninitial_state=1,2,3\n") ==
        "initial_state");
}

TEST_CASE("state and chain parsing") {
  CHECK(parse_state("(0, 1,2)") == TaskQueueState{0, 1, 2});
  CHECK(parse_state("[3]") == TaskQueueState{3});
  CHECK_THROWS_AS((void)parse_state("1,-1"), ConfigError);
  CHECK(parse_chain("0,0;0,1; 1,1").size() == 3);
  CHECK(format_cost(1.375) == "1.375");
}

TEST_CASE("solve writes the decision file") {
  RunConfig cfg = parse_config(kTable1);
  cfg.initial_state = {0, 0, 3};
  const auto dir = scratch("solve");
  std::ostringstream log;
  CHECK(cmd_solve(cfg, dir, log) == kOk);
  const auto csv = slurp(dir / "decision.csv");
  CHECK(csv.starts_with("T,state,J_total,J_average,L_star,L_g,L_r\n"));
  CHECK(csv.find("\"(0,0,3)\"") != std::string::npos);

  cfg.initial_state = {0, 0, 0};
  CHECK(cmd_solve(cfg, dir, log) == kOk);
  CHECK(slurp(dir / "decision.csv").find(",0,0,0\n") != std::string::npos);
}

TEST_CASE("policy map slices") {
  RunConfig cfg = parse_config(kTable1);
  const auto dir = scratch("pmap");
  std::ostringstream log;

  SliceSpec slice;
  add_slice_term(slice, "n3=1");
  CHECK(cmd_policy_map(cfg, slice, dir, log) == kOk);
  auto csv = slurp(dir / "policy_map.csv");
  CHECK(count_lines(csv) == 37);
  CHECK(csv.find("0,0,1,1000,0,0\n") != std::string::npos);
  std::istringstream rows(csv);
  std::string line;
  int non_offloading = 0;
  while (std::getline(rows, line)) non_offloading += line.ends_with(",0") ? 1 : 0;
  CHECK(non_offloading == 1);

  SliceSpec zero;
  add_slice_term(zero, "3=0");
  CHECK(cmd_policy_map(cfg, zero, dir, log) == kOk);
  csv = slurp(dir / "policy_map.csv");
  CHECK(csv.find("0,0,0,1000,0,0\n") != std::string::npos);
  CHECK(csv.find("0,1,0,1000,0,0\n") != std::string::npos);

  SliceSpec empty;
  set_box(empty, "3..2");
  CHECK(cmd_policy_map(cfg, empty, dir, log) == kOk);
  CHECK(slurp(dir / "policy_map.csv") == "n_1,n_2,n_3,T,L_star,offloading_flag\n");

  SliceSpec huge;
  set_box(huge, "0..100");
  CHECK(cmd_policy_map(cfg, huge, dir, log) == kFailed);
}

TEST_CASE("adjacent scan refuses broken chains") {
  RunConfig cfg = parse_config(kTable1);
  const auto dir = scratch("scan");
  std::ostringstream log;
  CHECK(cmd_adjacent_scan(cfg, parse_chain("0,1,0;0,1,1"), dir, log) == kFailed);
  CHECK(log.str().find("(0,1,1)") != std::string::npos);
  CHECK(cmd_adjacent_scan(cfg, parse_chain("0,0,2"), dir, log) == kOk);
  CHECK(count_lines(slurp(dir / "adjacent_scan.csv")) == 1 + 3);
}

TEST_CASE("simulate is reproducible") {
  RunConfig cfg = parse_config(kTable1);
  cfg.horizon = 20;
  cfg.episodes = 200;
  cfg.seed = 99;
  std::ostringstream log;
  const auto a = scratch("sim_a");
  const auto b = scratch("sim_b");
  CHECK(cmd_simulate(cfg, "optimal", a, log) == kOk);
  CHECK(cmd_simulate(cfg, "optimal", b, log) == kOk);
  CHECK(slurp(a / "episodes.csv") == slurp(b / "episodes.csv"));
  CHECK(slurp(a / "summary.csv") == slurp(b / "summary.csv"));
  CHECK(cmd_simulate(cfg, "sometimes", a, log) == kUsage);
}

TEST_CASE("verify and memory report") {
  const RunConfig cfg = parse_config(kTable1);
  std::ostringstream log;
  const auto dir = scratch("verify");
  CHECK(cmd_verify(cfg.model, {}, {"theorem_1", "lemma_1"}, dir, log) == kOk);
  CHECK(count_lines(slurp(dir / "verify.csv")) == 3);
  CHECK(cmd_verify(cfg.model, {}, {"lemma_7"}, dir, log) == kUsage);

  RunConfig m = cfg;
  m.horizon = 12;
  CHECK(cmd_memory_report(m, dir, log) == kOk);
  CHECK(count_lines(slurp(dir / "memory.csv")) == 13);
}

#ifdef OFFLOAD_CONFIG_DIR
TEST_CASE("shipped configs load") {
  for (const char* name : {"table1.cfg", "table2.cfg", "table3.cfg", "table4.cfg"})
    CHECK_NOTHROW((void)load_config(std::filesystem::path(OFFLOAD_CONFIG_DIR) / name));
}
#endif
