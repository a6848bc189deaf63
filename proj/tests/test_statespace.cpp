#include "doctest.h"
#include "offload/oracle.hpp"
#include "offload/statespace.hpp"

using namespace offload;

TEST_CASE("excessive count and reduction") {
  CHECK(excessive_count({0, 3, 4, 0, 5}, 5) == 8);
  CHECK(excessive_count({0, 3, 4, 0, 5}, 40) == 8);
  CHECK(excessive_count({2, 0, 1, 0}, 4) == 2);
  CHECK(excessive_count({0, 1, 0}, 3) == 0);

  auto r = reduce({0, 3, 4, 0, 5}, 5);
  CHECK(r.reduced == TaskQueueState{0, 0, 0, 0, 4});
  CHECK(r.excessive_count == 8);
  r = reduce({2, 0, 1, 0}, 4);
  CHECK(r.reduced == TaskQueueState{0, 0, 1, 0});
  CHECK(r.excessive_count == 2);
  CHECK(reduce({0, 1, 0}, 3).reduced == TaskQueueState{0, 1, 0});
}

TEST_CASE("closed-form excess agrees with the minimal-L search") {
  for (int N = 1; N <= 4; ++N)
    for (const auto& s : oracle::states_in_box(N, 3))
      for (int T = 1; T <= 6; ++T) {
        CAPTURE(s.to_string());
        CAPTURE(T);
        CHECK(excessive_count(s, T) == oracle::brute_force_min_excess(s, T));
      }
}

TEST_CASE("lean states") {
  CHECK(lean({0, 3, 4, 0, 5}, 5).lean == TaskQueueState{0, 1, 1, 0, 4});
  CHECK(lean({1, 0}, 2).lean == TaskQueueState{0, 0});
  // already reduced and no room for gammas: lean is the state itself
  CHECK(lean({0, 0, 2}, 3).lean == TaskQueueState{0, 0, 2});
  for (const auto& s : oracle::states_in_box(3, 4)) {
    const auto l = lean(s, 3).lean;
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(l[i] <= s[i]);
  }
}

TEST_CASE("reduced-state enumeration") {
  const auto three = enumerate_reduced(3);
  CHECK(three == std::vector<TaskQueueState>{{0, 0, 0}, {0, 0, 1}, {0, 0, 2}, {0, 1, 0}, {0, 1, 1}});
  CHECK(enumerate_reduced(1) == std::vector<TaskQueueState>{{0}});
  const long long expected[] = {1, 2, 5, 14, 42, 132, 429, 1430};
  for (int N = 1; N <= 8; ++N) {
    CHECK(static_cast<long long>(enumerate_reduced(N).size()) == expected[N - 1]);
    CHECK(catalan(N) == expected[N - 1]);
  }
  for (const auto& s : enumerate_reduced(5)) CHECK(is_reduced(s));
  CHECK_THROWS_AS((void)enumerate_reduced(0), ContractError);
}

TEST_CASE("first AMA distribution") {
  auto p = ModelParams::with_uniform_arrivals(2, 0.5, 0.5, 1, 3, 0.5);
  auto d = first_ama_distribution(p);
  CHECK(d.per_slot == std::vector<double>{0.5, 0.25});
  CHECK(d.tail == doctest::Approx(0.25));

  p = ModelParams::with_uniform_arrivals(3, 1.0, 0.5, 1, 3, 0.5);
  d = first_ama_distribution(p);
  CHECK(d.per_slot == std::vector<double>{1, 0, 0});
  CHECK(d.tail == 0.0);

  p = ModelParams::with_uniform_arrivals(2, 0.0, 0.5, 1, 3, 0.5);
  d = first_ama_distribution(p);
  CHECK(d.per_slot == std::vector<double>{0, 0});
  CHECK(d.tail == 1.0);
}

TEST_CASE("excess cost") {
  const ModelParams p{2, 0.5, 0.5, 1.0, 3.0, {0.5, 0.25, 0.25}};
  const TaskQueueState s{1, 0};
  CHECK(g2m_cost(s, lean(s, 2), p) == doctest::Approx(2.0).epsilon(1e-12));
  const TaskQueueState r{0, 1};
  CHECK(g2m_cost(r, lean(r, 2), p) == 0.0);
  CHECK_THROWS_AS((void)g2m_cost(TaskQueueState{0, 0}, LeanForm{{0, 1}, {0, 0}}, p), ContractError);
}
