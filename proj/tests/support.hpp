#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "recourse/dsl.hpp"
#include "recourse/rule_model.hpp"

namespace testing {

// sex x marital_status x relationship: 2 x 2 x 3 = 12 states, two of which
// violate the rule.
inline constexpr std::string_view kHusbandToy = R"(
feature sex: categorical {male, female}.
feature marital_status: categorical {married, never_married}.
feature relationship: categorical {husband, unmarried, not_in_family}.
causal husband: relationship = husband :- marital_status = married, sex = male.
decision unmarried :- relationship = unmarried.
initial {sex = male, marital_status = never_married, relationship = unmarried}.
)";

// Changing `a` breaks the causal rule; the causal repair then reaches a goal.
inline constexpr std::string_view kRepairToy = R"(
feature a: categorical {x, y}.
feature b: categorical {p, q}.
causal link: b = q :- a = y.
decision stuck :- b = p.
initial {a = x, b = p}.
)";

inline recourse::State state_of(const recourse::ProblemSpec& p,
                                const std::vector<std::string>& labels) {
  std::vector<recourse::FeatureValue> values;
  for (std::size_t f = 0; f < labels.size(); ++f) {
    const auto& d = p.domain(f);
    values.push_back(recourse::canonical_value(d, *d.label_index(labels[f])));
  }
  return recourse::State(std::move(values));
}

inline recourse::State with_label(const recourse::ProblemSpec& p, const recourse::State& s,
                                  std::string_view feature, std::string_view label) {
  const std::size_t f = *p.feature_index(feature);
  const auto& d = p.domain(f);
  if (d.is_numeric()) {
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (d.value_label(i) == label) return s.with(f, recourse::canonical_value(d, i));
    }
  }
  return s.with(f, recourse::canonical_value(d, *d.label_index(label)));
}

}  // namespace testing
