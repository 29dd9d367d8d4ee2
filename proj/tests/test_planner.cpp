#include <doctest.h>

#include "recourse/dsl.hpp"
#include "recourse/ingest.hpp"
#include "recourse/oracle.hpp"
#include "recourse/planner.hpp"
#include "support.hpp"

using namespace recourse;

TEST_CASE("trace utilities") {
  const auto car = ingest::builtin_scenario("car").problem;
  const State s1 = car.initial();
  const State s2 = testing::with_label(car, s1, "persons", "4");
  const ActionId a{3};
  const Trace trace{{s1, {a}}, {s2, {}}};

  CHECK_FALSE(not_member(a, std::span<const TraceEntry>(trace)));
  CHECK(not_member(ActionId{4}, std::span<const TraceEntry>(trace)));
  CHECK_FALSE(not_member(s2, std::span<const TraceEntry>(trace)));
  CHECK(not_member(testing::with_label(car, s1, "persons", "more"), std::span<const TraceEntry>(trace)));
  const std::vector<ActionId> ids{ActionId{1}, ActionId{2}};
  CHECK(not_member<ActionId>(ActionId{5}, ids));
  CHECK_FALSE(not_member<ActionId>(ActionId{2}, ids));

  Trace copy = trace;
  CHECK(get_last(copy).state == s2);
  CHECK(copy == trace);
  const TraceEntry last = pop(copy);
  CHECK(copy.size() == 1);
  copy.push_back(last);
  CHECK(copy == trace);

  Trace empty;
  CHECK_THROWS_AS(get_last(empty), EmptySequence);
  CHECK_THROWS_AS(pop(empty), EmptySequence);
}

TEST_CASE("update records the action and starts a fresh entry") {
  const auto car = ingest::builtin_scenario("car").problem;
  const ActionSpace space(car);
  const Action& to_four = space.direct()[1];
  const Action& to_more = space.direct()[2];

  Trace trace;
  TraceEntry current = update({car.initial(), {}}, trace, to_four, car.domains());
  REQUIRE(trace.size() == 1);
  CHECK(trace[0].state == car.initial());
  CHECK(trace[0].actions_taken == std::vector<ActionId>{to_four.id});
  CHECK(current.state == testing::with_label(car, car.initial(), "persons", "4"));
  CHECK(current.actions_taken.empty());

  // A second attempt from the same (popped) state extends its record.
  TraceEntry again = pop(trace);
  const Trace before = trace;
  current = update(std::move(again), trace, to_more, car.domains());
  CHECK(trace.back().actions_taken == std::vector<ActionId>{to_four.id, to_more.id});
  CHECK(std::equal(before.begin(), before.end(), trace.begin()));
}

TEST_CASE("make_consistent") {
  const auto toy = parse_problem(testing::kHusbandToy);
  const ActionSpace space(toy);

  SUBCASE("consistent input is left alone") {
    SearchContext ctx(toy, space, 100);
    TraceEntry current{toy.initial(), {}};
    Trace trace;
    CHECK(make_consistent(ctx, current, trace) == StepOutcome::ok);
    CHECK(current.state == toy.initial());
    CHECK(trace.empty());
    CHECK(ctx.expansions() == 0);
  }

  SUBCASE("husband repair uses the causal action") {
    SearchContext ctx(toy, space, 100);
    TraceEntry current{testing::state_of(toy, {"male", "married", "unmarried"}), {}};
    Trace trace;
    CHECK(make_consistent(ctx, current, trace) == StepOutcome::ok);
    CHECK(current.state == testing::state_of(toy, {"male", "married", "husband"}));
    REQUIRE(trace.size() == 1);
    CHECK(space[trace[0].actions_taken.back()].kind == ActionKind::causal);
  }

  SUBCASE("no consistent completion") {
    const auto stuck = parse_problem(R"(
      feature a: categorical {x, y}.
      feature b: categorical {p, q}.
      feature c: categorical {u, v}.
      feature d: categorical {r, s}.
      constraint immutable a.
      constraint immutable b.
      constraint immutable c.
      causal one: c = u :- a = y.
      causal two: c = v :- a = y, b = p.
      initial {a = x, b = p, c = u, d = r}.
    )");
    const ActionSpace stuck_space(stuck);
    SearchContext ctx(stuck, stuck_space, 100);
    TraceEntry current{testing::state_of(stuck, {"y", "p", "u", "r"}), {}};
    Trace trace;
    CHECK(make_consistent(ctx, current, trace) == StepOutcome::failure);
    CHECK(ctx.expansions() == 1);
  }
}

TEST_CASE("get_path on the builtin scenarios") {
  const auto adult = ingest::builtin_scenario("adult").problem;
  const PathTrace trace = get_path(adult);
  REQUIRE(trace.status == PlanStatus::success);
  const auto path = extract_candidate_path(trace, adult.causal_rules()).states;
  REQUIRE(path.size() == 2);
  CHECK(path[1] == testing::with_label(adult, adult.initial(), "capital_gain", "(6849, 99999]"));

  const auto german = ingest::builtin_scenario("german").problem;
  const PathTrace g = get_path(german);
  REQUIRE(g.status == PlanStatus::success);
  const auto gpath = extract_candidate_path(g, german.causal_rules()).states;
  REQUIRE(gpath.size() == 3);
  CHECK(g.entries.size() == 3);
  State expected = testing::with_label(german, german.initial(), "duration_months", "(7, 72]");
  CHECK(gpath[1] == expected);
  expected = testing::with_label(german, expected, "checking_status", ">=200");
  CHECK(gpath[2] == expected);
  CHECK(is_counterfactual(expected, german.causal_rules(), german.decision_rules()));
}

TEST_CASE("initial state already a goal") {
  const auto p = parse_problem(R"(
    feature x: categorical {a, b}.
    decision d :- x = b.
    initial {x = a}.
  )");
  const PathTrace trace = get_path(p);
  CHECK(trace.status == PlanStatus::success);
  CHECK(trace.entries.size() == 1);
  CHECK(extract_candidate_path(trace, p.causal_rules()).states == std::vector<State>{p.initial()});
}

TEST_CASE("failure and budget exhaustion keep the partial trace") {
  const auto blocked = parse_problem(R"(
    feature x: categorical {a, b, c}.
    decision d :- x != c.
    decision e :- x = c.
    initial {x = a}.
  )");
  const PathTrace failed = get_path(blocked);
  CHECK(failed.status == PlanStatus::failure);
  CHECK_FALSE(failed.entries.empty());
  CHECK_THROWS_AS(extract_candidate_path(failed, blocked.causal_rules()), NotASolution);

  const auto german = ingest::builtin_scenario("german").problem;
  const PathTrace cut = get_path(german, std::size_t{1});
  CHECK(cut.status == PlanStatus::budget_exhausted);
  CHECK(cut.expansions == 1);
  CHECK(cut.entries.size() == 2);

  const auto immovable = parse_problem(R"(
    feature x: categorical {a, b}.
    constraint immutable x.
    decision d :- x = a.
    initial {x = a}.
  )");
  const PathTrace none = get_path(immovable);
  CHECK(none.status == PlanStatus::failure);
  CHECK(none.expansions == 0);
}

TEST_CASE("inconsistent intermediates are dropped from the candidate path") {
  const auto toy = parse_problem(testing::kRepairToy);
  const ActionSpace space(toy);
  const PathTrace trace = get_path(toy, space);
  REQUIRE(trace.status == PlanStatus::success);
  REQUIRE(trace.entries.size() == 3);
  CHECK_FALSE(is_causally_consistent(trace.entries[1].state, toy.causal_rules()));
  CHECK(space[trace.entries[1].actions_taken.back()].kind == ActionKind::causal);
  const auto path = extract_candidate_path(trace, toy.causal_rules()).states;
  REQUIRE(path.size() == 2);
  CHECK(path[1] == testing::state_of(toy, {"y", "q"}));
}

TEST_CASE("budget sources") {
  const auto german = ingest::builtin_scenario("german").problem;
  const ActionSpace space(german);
  CHECK(default_budget(german, space) == 10 * space.size() * german.feature_count());
  const auto declared = parse_problem(std::string(ingest::builtin_scenario_source("german")) + "budget 1.\n");
  CHECK(get_path(declared).status == PlanStatus::budget_exhausted);
  CHECK(get_path(declared, std::size_t{50}).status == PlanStatus::success);
}

TEST_CASE("planner is deterministic and traces never repeat a live state") {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const auto p = ingest::random_problem(seed);
    const PathTrace a = get_path(p);
    const PathTrace b = get_path(p);
    CHECK(a.status == b.status);
    CHECK(a.entries == b.entries);
    CHECK(a.expansions == b.expansions);
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
      for (std::size_t j = i + 1; j < a.entries.size(); ++j) {
        CHECK_FALSE(a.entries[i].state == a.entries[j].state);
      }
    }
    if (a.status == PlanStatus::success) {
      CHECK(is_counterfactual(a.entries.back().state, p.causal_rules(), p.decision_rules()));
    }
  }
}
