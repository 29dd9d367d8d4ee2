#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "recourse/action_space.hpp"
#include "recourse/oracle.hpp"
#include "recourse/planner.hpp"
#include "recourse/rule_model.hpp"

namespace recourse::report {

using Json = nlohmann::ordered_json;

/// Categorical values as their label; numeric values as
/// {"interval", "index", "value"}.
Json encode_state(const ProblemSpec& problem, const State& s);

/// Inverse of encode_state. Throws SchemaMismatch or OutOfDomain.
State decode_state(const ProblemSpec& problem, const nlohmann::json& record);

/// Path table: one row per feature, one column per consistent trace state,
/// with an Action column (Direct, Causal or N/A) before every state after
/// the first.
std::string render_table(const ProblemSpec& problem, const ActionSpace& actions,
                         const PathTrace& trace);

Json plan_record(std::string_view scenario, const ProblemSpec& problem,
                 const ActionSpace& actions, const PathTrace& trace);

/// Reads "candidate_path" back from a plan record.
std::vector<State> path_from_record(const nlohmann::json& record, const ProblemSpec& problem);

std::string render_validation(const oracle::ValidationReport& report);
Json validation_record(const oracle::ValidationReport& report);

std::string render_state_sets(const oracle::StateSetReport& report);
Json state_sets_record(const oracle::StateSetReport& report);

}  // namespace recourse::report
