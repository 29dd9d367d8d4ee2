#include <array>

#include "recourse/dsl.hpp"
#include "recourse/errors.hpp"
#include "recourse/ingest.hpp"

namespace recourse::ingest {

namespace {

// Rule sets are reconstructed: only the thresholds and values that appear in
// the published example paths are used. See docs/scenarios.md.

constexpr std::string_view kAdult = R"(% adult income: the decision rules describe "=<50K".
feature marital_status: categorical {never_married, married, divorced, separated, widowed}.
feature capital_gain: numeric [0, 99999].
feature education_num: numeric [1, 16].
feature relationship: categorical {husband, wife, unmarried, not_in_family, own_child}.
feature sex: categorical {male, female}.
feature age: numeric [17, 90].

constraint immutable marital_status.
constraint immutable sex.
constraint nondecreasing education_num.
constraint nondecreasing age.

causal husband: relationship = husband :- marital_status = married, sex = male.
causal wife: relationship = wife :- marital_status = married, sex = female.

decision low_gain_single :- marital_status = never_married, capital_gain =< 6849.
decision low_gain_low_edu :- education_num =< 12, capital_gain =< 6849.
decision young_low_edu :- age =< 25, education_num =< 9.

initial {marital_status = never_married, capital_gain = 1000, education_num = 11,
         relationship = unmarried, sex = male, age = 28}.
)";

constexpr std::string_view kCar = R"(% car evaluation: the decision rules describe "unacceptable".
feature persons: categorical {2, 4, more}.
feature maint: categorical {low, medium, high, vhigh}.
feature buying: categorical {low, medium, high, vhigh}.
feature safety: categorical {low, medium, high}.

decision two_seats :- persons = 2.
decision unsafe :- safety = low.
decision too_expensive :- buying = vhigh, maint = vhigh.

initial {persons = 2, maint = medium, buying = medium, safety = medium}.
)";

constexpr std::string_view kGerman = R"(% german credit: the decision rules describe a good rating.
feature duration_months: numeric [4, 72].
feature checking_status: categorical {">=200", "0..200", "<0", "no checking account"}.
feature credit_history: categorical {"all dues at bank cleared", "existing paid", "delayed", "critical"}.
feature property: categorical {"real estate", "savings or insurance", "car or other", "no property"}.
feature credit_amount: numeric [250, 18424].
feature job: categorical {"official/skilled employee", "management/self-employed", "unskilled resident", "unemployed or unskilled"}.
feature present_employment_since: categorical {unemployed, "<1", ">=1 and <4", ">=4 and <7", ">=7"}.

constraint nondecreasing duration_months.
constraint immutable credit_history.

causal jobless: present_employment_since = unemployed :- job = "unemployed or unskilled".

decision no_account :- checking_status = "no checking account".
decision short_small :- duration_months =< 7, credit_amount =< 1000.

initial {duration_months = 7, checking_status = "no checking account",
         credit_history = "all dues at bank cleared", property = "car or other",
         credit_amount = 300, job = "official/skilled employee",
         present_employment_since = ">=1 and <4"}.
)";

constexpr std::string_view kGermanMotivating = R"(% loan approval example: the decision rules describe a rejection.
feature duration_months: numeric [4, 72].
feature checking_status: categorical {">1000", "0..1000", "<0", "no checking account"}.
feature credit_history: categorical {"all dues at bank cleared", "existing paid", "delayed", "critical"}.
feature property: categorical {"real estate", "savings or insurance", "car or other", "no property"}.
feature credit_amount: numeric [250, 18424].

constraint nondecreasing duration_months.
constraint immutable credit_history.

decision no_account :- checking_status = "no checking account".
decision short_small :- duration_months =< 7, credit_amount =< 1000.

initial {duration_months = 7, checking_status = "no checking account",
         credit_history = "all dues at bank cleared", property = "no property",
         credit_amount = 300}.
)";

struct Builtin {
  std::string_view name;
  std::string_view source;
  std::vector<std::vector<GoldenChange>> golden;
};

const std::array<Builtin, 4>& builtins() {
  static const std::array<Builtin, 4> table = {
      Builtin{"adult", kAdult, {{{"capital_gain", "(6849, 99999]"}}}},
      Builtin{"car", kCar, {{{"persons", "4"}}}},
      Builtin{"german",
              kGerman,
              {{{"duration_months", "(7, 72]"}}, {{"checking_status", ">=200"}}}},
      Builtin{"german-motivating",
              kGermanMotivating,
              {{{"duration_months", "(7, 72]"}}, {{"checking_status", ">1000"}}}},
  };
  return table;
}

const Builtin& find_builtin(std::string_view name) {
  for (const Builtin& b : builtins()) {
    if (b.name == name) return b;
  }
  throw UnknownScenario(std::string(name));
}

}  // namespace

std::vector<std::string> builtin_scenario_names() {
  std::vector<std::string> out;
  for (const Builtin& b : builtins()) out.emplace_back(b.name);
  return out;
}

std::string_view builtin_scenario_source(std::string_view name) {
  return find_builtin(name).source;
}

Scenario builtin_scenario(std::string_view name) {
  const Builtin& b = find_builtin(name);
  return Scenario{std::string(b.name), parse_problem(b.source), b.golden};
}

}  // namespace recourse::ingest
