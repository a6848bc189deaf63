#include "doctest.h"
#include "offload/dp.hpp"
#include "offload/oracle.hpp"
#include "offload/statespace.hpp"

using namespace offload;

namespace {

ModelParams small() { return {2, 0.5, 0.5, 1.0, 3.0, {0.5, 0.25, 0.25}}; }

ModelParams table1() { return ModelParams::with_uniform_arrivals(3, 0.7, 0.7, 1, 3, 0.5); }

}  // namespace

TEST_CASE("hand-expanded values") {
  ValueTable t(small());
  CHECK(value({0, 1}, 2, t) == doctest::Approx(1.375).epsilon(1e-12));
  CHECK(value({0, 0}, 2, t) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(value({1, 0}, 1, t) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(value({3, 2}, 0, t) == 0.0);

  CHECK(value_with_ama({0, 1}, 2, t) == doctest::Approx(1.25));
  CHECK(t.forced({0, 1}, 2).argmin() == 1);
  CHECK(value_without_ama({0, 1}, 2, t) == doctest::Approx(1.5));
  CHECK(value_without_ama({3, 0}, 1, t) == doctest::Approx(9.0));
  CHECK(value_without_ama({0, 0}, 1, t) == 0.0);
  CHECK(value_with_ama({1, 0}, 1, t) == doctest::Approx(1.0));
  CHECK(t.forced({1, 0}, 1).argmin() == 1);

  CHECK(value_forced({0, 1}, 1, 2, t) == doctest::Approx(1.25));
  CHECK(value_forced({0, 1}, 0, 2, t) == doctest::Approx(1.5));
  CHECK(value_forced({1, 0}, 0, 1, t) == doctest::Approx(3.0));
  CHECK_THROWS_AS((void)value_forced({1, 0}, 2, 1, t), ContractError);

  CHECK(f_bar(1, {1, 0}, 1, 1, t) == doctest::Approx(1.0));
  CHECK_THROWS_AS((void)f_bar(1, {1, 0}, 1, 0, t), ContractError);
}

TEST_CASE("zero state has only L = 0") {
  ValueTable t(table1());
  for (int T : {1, 5, 40})
    CHECK(value_with_ama({0, 0, 0}, T, t) == doctest::Approx(value({0, 0, 0}, T, t)));
}

TEST_CASE("table agrees with the exhaustive evaluator on small instances") {
  for (const auto& base : {small(), table1()}) {
    ValueTable t(base);
    oracle::ExhaustiveEvaluator ev(base);
    for (const auto& s : oracle::states_in_box(base.N, 3))
      for (int T = 1; T <= 7; ++T) {
        CAPTURE(s.to_string());
        CAPTURE(T);
        CHECK(value(s, T, t) == doctest::Approx(ev.value(s, T)).epsilon(1e-10));
        CHECK(t.forced(s, T).argmin() == ev.optimal_decision(s, T));
      }
  }
}

TEST_CASE("bridge identity on the DP") {
  const auto p = ModelParams::with_uniform_arrivals(4, 0.5, 0.5, 1, 3, 0.5);
  ValueTable t(p);
  for (const auto& s : oracle::states_in_box(4, 3))
    for (int T = 4; T <= 9; T += 5) {
      const auto lf = lean(s, T);
      CHECK(value(s, T, t) == doctest::Approx(value(lf.lean, T, t) + g2m_cost(s, lf, p)).epsilon(1e-10));
    }
}

TEST_CASE("build_table fills a closure and reports sizes") {
  const auto p = table1();
  const ValueTable t = build_table(p, 3, {{0, 0, 0}});
  CHECK(t.find({0, 1, 0}, 3).has_value());
  CHECK(t.size() > 0);
  CHECK(t.naive_entries() >= t.size());

  const ValueTable empty = build_table(p, 3, {});
  CHECK(empty.size() == 0);

  // sizes grow apart as the horizon passes N
  const ValueTable big = build_table(ModelParams::with_uniform_arrivals(5, 0.5, 0.5, 1, 3, 0.5), 20,
                                     {TaskQueueState(5)});
  CHECK(big.size() < big.naive_entries());
}

TEST_CASE("long horizons stay finite and grow linearly") {
  ValueTable t(table1());
  const double a = value({0, 0, 0}, 500, t);
  const double b = value({0, 0, 0}, 1000, t);
  CHECK(b > a);
  CHECK(b / 1000 == doctest::Approx(a / 500).epsilon(1e-3));
}
