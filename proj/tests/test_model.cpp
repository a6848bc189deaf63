#include "doctest.h"
#include "offload/model.hpp"

using namespace offload;

TEST_CASE("successor follows offload, shift, arrival, processing") {
  // (0,1,2,0,1), offload 2, deadline-3 arrival, processor free
  CHECK(successor({0, 1, 2, 0, 1}, 2, 3, true) == TaskQueueState{0, 0, 1, 1, 0});
  CHECK(successor({0, 1, 2, 0, 1}, 2, 3, false) == TaskQueueState{0, 1, 1, 1, 0});
  CHECK(successor({0, 0}, 0, 0, true) == TaskQueueState{0, 0});
  // deadline-1 tasks leave the system at the shift
  CHECK(successor({2, 1}, 0, 0, false) == TaskQueueState{1, 0});
  CHECK(successor({2, 1}, 0, 0, true) == TaskQueueState{0, 0});
}

TEST_CASE("offload helpers") {
  const TaskQueueState s{1, 2, 0, 3};
  CHECK(offload_vector(s, 2) == TaskQueueState{1, 1, 0, 0});
  CHECK(offload_most_imminent(s, 4) == TaskQueueState{0, 0, 0, 2});
  CHECK(offload_most_imminent(s, 6) == TaskQueueState{0, 0, 0, 0});
  CHECK_THROWS_AS((void)offload_most_imminent(s, 7), ContractError);
  CHECK(deadline_shift(s) == TaskQueueState{2, 0, 3, 0});
  CHECK(arrival_vector(0, 3) == TaskQueueState{0, 0, 0});
  CHECK(arrival_vector(2, 3) == TaskQueueState{0, 1, 0});
  CHECK(local_processing_vector({0, 0, 2}) == TaskQueueState{0, 0, 1});
  CHECK(local_processing_vector({0, 0, 0}) == TaskQueueState{0, 0, 0});
  CHECK(truncate_beyond(s, 2) == TaskQueueState{1, 2, 0, 0});

  CHECK(offload_domain_min(s, 1) == 1);
  CHECK(offload_domain_min(s, 2) == 0);
  CHECK(offload_from_deadline(s, 2, 3) == TaskQueueState{1, 0, 0, 2});
}

TEST_CASE("instantaneous cost") {
  auto p = ModelParams::with_uniform_arrivals(2, 0.5, 0.5, 1.0, 3.0, 0.5);
  const TaskQueueState s{2, 1};
  CHECK(instantaneous_cost(s, 1, p, CostBranch::ama) == doctest::Approx(1.0 + 3.0));
  CHECK(instantaneous_cost(s, 3, p, CostBranch::ama) == doctest::Approx(3.0));
  CHECK(instantaneous_cost(s, 0, p, CostBranch::no_ama) == doctest::Approx(6.0));
}

TEST_CASE("state basics") {
  const TaskQueueState s{0, 3, 4, 0, 5};
  CHECK(s.total() == 12);
  CHECK(s.at_deadline(3) == 4);
  CHECK(s.most_imminent_deadline() == 2);
  CHECK(s.to_string() == "(0,3,4,0,5)");
  CHECK_FALSE(s.is_zero());
  CHECK(TaskQueueState(3).is_zero());
  CHECK(std::ranges::distance(valid_decisions(s)) == 13);
}

TEST_CASE("parameter validation names the field") {
  auto p = ModelParams::with_uniform_arrivals(3, 0.7, 0.7, 1.0, 3.0, 0.5);
  CHECK_NOTHROW(p.validate());
  CHECK(p.arrival[1] == doctest::Approx(1.0 / 6));

  auto bad = p;
  bad.C_p = 1.0;
  CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("C_p"), ContractError);
  bad = p;
  bad.p_u = 1.5;
  CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("p_u"), ContractError);
  bad = p;
  bad.arrival[0] = 0.6;
  CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("arrival"), ContractError);
}
