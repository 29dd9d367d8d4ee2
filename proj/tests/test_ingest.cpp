#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "recourse/errors.hpp"
#include "recourse/ingest.hpp"
#include "recourse/oracle.hpp"

using namespace recourse;
using namespace recourse::ingest;

namespace {

DatasetSchema people() {
  DatasetSchema schema;
  schema.columns = {{"name", FeatureKind::categorical},
                    {"age", FeatureKind::numeric},
                    {"income", FeatureKind::categorical}};
  schema.label_column = "income";
  schema.positive_label = ">50K";
  return schema;
}

}  // namespace

TEST_CASE("well-formed file") {
  const auto result = parse_csv("name,age,income\nann,31,>50K\nbob,45.5,<=50K\ncy,19,<=50K\n", people());
  REQUIRE(result.records.size() == 3);
  CHECK(result.skipped.empty());
  CHECK(std::get<double>(result.records[1].at("age")) == 45.5);
  CHECK(std::get<std::string>(result.records[0].at("income")) == ">50K");
}

TEST_CASE("columns may appear in any order, CRLF is accepted") {
  const auto result = parse_csv("age,income,name\r\n31,>50K,ann\r\n", people());
  REQUIRE(result.records.size() == 1);
  CHECK(std::get<std::string>(result.records[0].at("name")) == "ann");
}

TEST_CASE("malformed rows") {
  const std::string text = "name,age,income\nann,31,>50K\nbob,old,<=50K\ncy,19\ndee,20,<=50K\n";
  try {
    parse_csv(text, people(), RowPolicy::abort);
    FAIL("expected CsvParseError");
  } catch (const CsvParseError& e) {
    CHECK(e.line() == 3);
  }
  const auto skipped = parse_csv(text, people(), RowPolicy::skip);
  CHECK(skipped.records.size() == 2);
  REQUIRE(skipped.skipped.size() == 2);
  CHECK(skipped.skipped[0].line == 3);
  CHECK(skipped.skipped[1].line == 4);
  CHECK_THROWS_AS(parse_csv("name,\"open\n", people()), CsvParseError);
}

TEST_CASE("header problems") {
  CHECK_THROWS_AS(parse_csv("name,age\nann,3\n", people()), SchemaMismatch);
  CHECK_THROWS_AS(parse_csv("name,age,income,extra\n", people()), SchemaMismatch);
  CHECK_THROWS_AS(parse_csv("name,age,age\n", people()), SchemaMismatch);
  CHECK_THROWS_AS(parse_csv("", people()), SchemaMismatch);
  DatasetSchema bad = people();
  bad.label_column = "missing";
  CHECK_THROWS_AS(bad.validate(), SchemaMismatch);
  bad = people();
  bad.columns.push_back({"age", FeatureKind::numeric});
  CHECK_THROWS_AS(bad.validate(), SchemaMismatch);
}

TEST_CASE("write then reload gives the same records") {
  std::vector<Record> records = {
      {{"name", std::string("ann, the \"first\"")}, {"age", 31.0}, {"income", std::string(">50K")}},
      {{"name", std::string("two\nlines")}, {"age", 0.125}, {"income", std::string("<=50K")}},
      {{"name", std::string("")}, {"age", -4.0}, {"income", std::string("<=50K")}},
  };
  std::ostringstream out;
  write_csv(out, people(), records);
  const auto back = parse_csv(out.str(), people());
  CHECK(back.records == records);
}

TEST_CASE("load_csv reads files") {
  CHECK_THROWS_AS(load_csv("/nonexistent/file.csv", people()), IoError);
  const std::string path = "ingest_test_people.csv";
  {
    std::ofstream f(path);
    f << "name,age,income\nann,31,>50K\n";
  }
  CHECK(load_csv(path, people()).records.size() == 1);
  std::remove(path.c_str());
}

TEST_CASE("records become states") {
  const auto adult = builtin_scenario("adult").problem;
  Record r = {{"marital_status", std::string("never_married")},
              {"capital_gain", 1000.0},
              {"education_num", 11.0},
              {"relationship", std::string("unmarried")},
              {"sex", std::string("male")},
              {"age", 28.0}};
  const State s = record_to_state(r, adult);
  CHECK(s == adult.initial());
  const std::size_t gain = *adult.feature_index("capital_gain");
  CHECK(adult.domain(gain).value_label(s[gain].index) == "[0, 6849]");
  CHECK(s[gain].point == 1000);

  Record numeric_text = r;
  numeric_text["age"] = std::string("28");
  CHECK(record_to_state(numeric_text, adult) == adult.initial());

  Record husband = r;
  husband["marital_status"] = std::string("married");
  try {
    record_to_state(husband, adult);
    FAIL("expected CausallyInconsistentRecord");
  } catch (const CausallyInconsistentRecord& e) {
    CHECK(std::string(e.what()).find("husband") != std::string::npos);
  }

  Record outside = r;
  outside["age"] = 130.0;
  CHECK_THROWS_AS(record_to_state(outside, adult), OutOfDomain);
  outside = r;
  outside["sex"] = std::string("other");
  CHECK_THROWS_AS(record_to_state(outside, adult), OutOfDomain);

  Record missing = r;
  missing.erase("age");
  CHECK_THROWS_AS(record_to_state(missing, adult), SchemaMismatch);
}

TEST_CASE("schema for a problem") {
  const auto adult = builtin_scenario("adult").problem;
  const auto schema = DatasetSchema::for_problem(adult, "income", ">50K");
  CHECK(schema.columns.size() == adult.feature_count() + 1);
  CHECK(schema.find("capital_gain")->kind == FeatureKind::numeric);
  const auto loaded = parse_csv(
      "marital_status,capital_gain,education_num,relationship,sex,age,income\n"
      "married,0,13,husband,male,40,>50K\n",
      schema);
  const State s = record_to_state(loaded.records.at(0), adult);
  CHECK(is_causally_consistent(s, adult.causal_rules()));
}

TEST_CASE("builtin scenarios") {
  CHECK(builtin_scenario_names() ==
        std::vector<std::string>{"adult", "car", "german", "german-motivating"});
  for (const auto& name : builtin_scenario_names()) {
    const auto scenario = builtin_scenario(name);
    const ProblemSpec& p = scenario.problem;
    CHECK(is_causally_consistent(p.initial(), p.causal_rules()));
    CHECK(satisfies_decision(p.initial(), p.decision_rules()));
    CHECK_FALSE(scenario.golden_path.empty());
    for (const auto& step : scenario.golden_path) {
      for (const auto& [feature, label] : step) {
        const auto f = p.feature_index(feature);
        REQUIRE(f);
        bool found = false;
        for (std::size_t i = 0; i < p.domain(*f).size(); ++i) {
          found = found || p.domain(*f).value_label(i) == label;
        }
        CHECK(found);
      }
    }
  }
  CHECK_THROWS_AS(builtin_scenario("iris"), UnknownScenario);
  CHECK_THROWS_AS(builtin_scenario_source("iris"), UnknownScenario);
}

TEST_CASE("random problems stay within bounds") {
  const RandomInstanceOptions options;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto p = random_problem(seed, options);
    CHECK(p == random_problem(seed, options));
    CHECK(p.feature_count() >= 1);
    CHECK(p.feature_count() <= options.max_features);
    for (const FeatureDomain& d : p.domains()) CHECK(d.size() <= options.max_values);
    CHECK(p.causal_rules().size() <= options.max_causal_rules);
    CHECK(p.decision_rules().size() >= 1);
    CHECK(p.decision_rules().size() <= options.max_decision_rules);
    CHECK(is_causally_consistent(p.initial(), p.causal_rules()));
  }
  CHECK_FALSE(random_problem(1) == random_problem(2));
}
