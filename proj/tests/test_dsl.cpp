#include <doctest.h>

#include "recourse/dsl.hpp"
#include "recourse/errors.hpp"
#include "recourse/ingest.hpp"
#include "support.hpp"

using namespace recourse;

TEST_CASE("car text parses to four features") {
  const auto p = parse_problem(ingest::builtin_scenario_source("car"));
  REQUIRE(p.feature_count() == 4);
  CHECK(p.domain(0).name() == "persons");
  CHECK(p.domain(0).labels() == std::vector<std::string>{"2", "4", "more"});
  CHECK(p.decision_rules().size() == 3);
  CHECK(p.causal_rules().empty());
}

TEST_CASE("numeric ranges are split at every literal threshold") {
  const auto p = parse_problem(R"(
    feature n: numeric [0, 100].
    decision low :- n =< 10.
    decision mid :- n > 10, n < 50.
    decision exact :- n = 75.
    initial {n = 3}.
  )");
  const auto& cells = p.domain(0).intervals();
  REQUIRE(cells.size() == 5);
  CHECK(cells[0].label() == "[0, 10]");
  CHECK(cells[1].label() == "(10, 50)");
  CHECK(cells[2].label() == "[50, 75)");
  CHECK(cells[3].label() == "[75]");
  CHECK(cells[4].label() == "(75, 100]");
  CHECK(p.initial()[0].point == 3);
}

TEST_CASE("syntax errors carry a position") {
  try {
    parse_problem("feature x: categorical {a, b}.\ninitial {x = a}\n");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 3);
    CHECK(e.expected().find("'.'") != std::string::npos);
  }
  try {
    parse_problem("feature x: boolean.");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 12);
  }
  CHECK_THROWS_AS(parse_problem("feature x: categorical {a, b}. initial {x = \"a}."), SyntaxError);
  CHECK_THROWS_AS(parse_problem("decision d :- x = 1e5."), SyntaxError);
}

TEST_CASE("comments, quoting and escapes") {
  const auto p = parse_problem(R"(% a comment line
    feature status: categorical {"no checking account", ">=200", "say \"hi\""}. % trailing
    decision d :- status = "no checking account".
    initial {status = "say \"hi\""}.
  )");
  CHECK(p.domain(0).labels()[2] == "say \"hi\"");
  CHECK(p.initial()[0].index == 2);
}

TEST_CASE("budget statement") {
  const auto p = parse_problem("feature x: categorical {a}. initial {x = a}. budget 25.");
  CHECK(p.action_budget() == 25u);
  CHECK_THROWS_AS(parse_problem("feature x: categorical {a}. initial {x = a}. budget 2.5."),
                  SyntaxError);
}

TEST_CASE("printed problems parse back to equal problems") {
  std::vector<std::string> sources;
  for (const auto& name : ingest::builtin_scenario_names()) {
    sources.emplace_back(ingest::builtin_scenario_source(name));
  }
  sources.emplace_back(testing::kHusbandToy);
  sources.emplace_back(testing::kRepairToy);
  sources.emplace_back(R"(
    feature n: numeric [-2.5, 7.25].
    feature odd_name: categorical {"x y", 3, z}.
    constraint nonincreasing n.
    decision d :- n >= 0.5, odd_name != "x y".
    causal c: n < 1 :- odd_name = 3.
    initial {n = -1, odd_name = z}.
    budget 9.
  )");
  for (const auto& text : sources) {
    const auto p = parse_problem(text);
    const std::string printed = print_problem(p);
    const auto q = parse_problem(printed);
    CHECK(p == q);
    CHECK(print_problem(q) == printed);
  }
}

TEST_CASE("missing problem file") {
  CHECK_THROWS_AS(load_problem_file("/nonexistent/problem.cfg"), IoError);
}
