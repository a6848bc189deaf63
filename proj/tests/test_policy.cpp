#include "doctest.h"
#include "offload/oracle.hpp"
#include "offload/policy.hpp"
#include "offload/statespace.hpp"

using namespace offload;

namespace {

ModelParams small() { return {2, 0.5, 0.5, 1.0, 3.0, {0.5, 0.25, 0.25}}; }
ModelParams table1() { return ModelParams::with_uniform_arrivals(3, 0.7, 0.7, 1, 3, 0.5); }

}  // namespace

TEST_CASE("optimal decisions, small instance") {
  ValueTable t(small());
  CHECK(optimal_decision({0, 1}, 2, t).total == 1);
  CHECK(is_offloading_state({0, 1}, 2, t));
  CHECK_FALSE(is_offloading_state({0, 0}, 2, t));
  CHECK(smallest_nonoffloading({0, 1}, 2, t) == 1);

  // excessive tasks are offloaded before the DP is consulted
  const auto d = optimal_decision({2, 1}, 2, t);
  CHECK(d.from_reduction == 2);
  CHECK(d.total == d.from_reduction + d.from_dp);
}

TEST_CASE("table1 decisions at T = 1000") {
  ValueTable t(table1());
  const int T = 1000;
  CHECK(optimal_decision({0, 1, 0}, T, t).total == 0);
  CHECK(optimal_decision({0, 0, 0}, T, t).total == 0);
  CHECK_FALSE(is_offloading_state({0, 0, 1}, T, t));
  CHECK_FALSE(is_offloading_state({0, 1, 0}, T, t));
  // With the stated event order the DP offloads one task from (0,0,2) and two
  // from (0,0,3); confirmed by an independent event-tree evaluation.
  CHECK(optimal_decision({0, 0, 2}, T, t).total == 1);
  CHECK(optimal_decision({0, 0, 3}, T, t).total == 2);
  CHECK(smallest_nonoffloading({0, 0, 3}, T, t) == 2);

  // n_3 = 1 slice: (0,0,1) is the only non-offloading state
  for (int a = 0; a <= 5; ++a)
    for (int b = 0; b <= 5; ++b) {
      const TaskQueueState s{a, b, 1};
      CHECK(is_offloading_state(s, T, t) == !(a == 0 && b == 0));
    }
}

TEST_CASE("decision equals distance to nearest non-offloading state") {
  ValueTable t(table1());
  for (const auto& s : oracle::states_in_box(3, 3))
    for (int T : {3, 6, 50}) {
      CAPTURE(s.to_string());
      CAPTURE(T);
      CHECK(optimal_decision(s, T, t).total == smallest_nonoffloading(s, T, t));
    }
}

TEST_CASE("chain inference") {
  CHECK(infer_adjacent_chain(2, 1, 0) == std::vector<int>{1, 2});
  CHECK(infer_adjacent_chain(2, 5, 0).front() == 0);
  CHECK(infer_adjacent_chain(1, 0, 3).back() == 4);
  CHECK(infer_adjacent_chain(3, 2, 2) == std::vector<int>{1, 2, 3, 4, 5});
  CHECK_THROWS_AS((void)infer_adjacent_chain(0, 0, 1), ContractError);
  CHECK(infer_adjacent_chain(0, 2, 0) == std::vector<int>{0, 0, 0});
}

TEST_CASE("adjacency") {
  CHECK(adjacency({0, 0, 1, 4, 4}, {0, 1, 1, 4, 4}));
  CHECK(adjacency({0, 1, 1, 3, 3}, {0, 2, 1, 3, 3}));
  CHECK(adjacency({0, 0, 1}, {0, 0, 2}));
  CHECK_FALSE(adjacency({0, 1, 0}, {0, 1, 1}));
  CHECK(adjacency({0, 0, 0}, {0, 0, 1}));
  CHECK_FALSE(adjacency({0, 0, 0}, {0, 1, 1}));
  CHECK(adjacency_parent({0, 2, 1, 3, 3}) == TaskQueueState{0, 1, 1, 3, 3});
  for (const auto& s : oracle::states_in_box(3, 2))
    for (const auto& sa : oracle::adjacent_states(s)) CHECK(adjacency(s, sa));
}

TEST_CASE("policy cache") {
  ValueTable t(table1());
  const auto cache = build_policy_cache(t, 1000);
  CHECK(cache.entries(1000).size() == 5);
  CHECK(cache.max_horizon() == 1000);
  CHECK(cache.contains({0, 1, 1}, 17));
  for (const auto& s : oracle::states_in_box(3, 3))
    for (int T : {1, 4, 1000}) CHECK(cache.lookup(s, T).total == optimal_decision(s, T, t).total);
}
