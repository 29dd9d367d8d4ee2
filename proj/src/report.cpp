#include "recourse/report.hpp"

#include <algorithm>
#include <sstream>

#include "recourse/errors.hpp"

namespace recourse::report {

Json encode_state(const ProblemSpec& problem, const State& s) {
  Json out = Json::object();
  for (std::size_t f = 0; f < problem.feature_count(); ++f) {
    const FeatureDomain& d = problem.domain(f);
    if (d.is_numeric()) {
      out[d.name()] = Json{{"interval", d.value_label(s[f].index)},
                           {"index", s[f].index},
                           {"value", s[f].point}};
    } else {
      out[d.name()] = d.labels()[s[f].index];
    }
  }
  return out;
}

State decode_state(const ProblemSpec& problem, const nlohmann::json& record) {
  if (!record.is_object()) throw SchemaMismatch("state must be an object");
  std::vector<FeatureValue> values;
  for (const FeatureDomain& d : problem.domains()) {
    auto it = record.find(d.name());
    if (it == record.end()) throw SchemaMismatch("state has no value for " + d.name());
    if (d.is_numeric()) {
      if (!it->is_object() || !it->contains("index") || !it->contains("value")) {
        throw SchemaMismatch("numeric value of " + d.name() + " needs index and value");
      }
      const auto index = it->at("index").get<std::size_t>();
      const auto point = it->at("value").get<double>();
      if (index >= d.size() || !d.intervals()[index].contains(point)) {
        throw OutOfDomain(d.name(), format_number(point));
      }
      values.push_back(FeatureValue{static_cast<std::uint32_t>(index), point});
    } else {
      if (!it->is_string()) throw SchemaMismatch("value of " + d.name() + " must be a string");
      const auto label = it->get<std::string>();
      auto index = d.label_index(label);
      if (!index) throw OutOfDomain(d.name(), label);
      values.push_back(FeatureValue{static_cast<std::uint32_t>(*index), 0.0});
    }
  }
  return State(std::move(values));
}

namespace {

struct Column {
  std::string header;
  std::vector<std::string> cells;
};

std::string layout(const std::vector<Column>& columns, std::size_t rows) {
  std::vector<std::size_t> width;
  for (const Column& c : columns) {
    std::size_t w = c.header.size();
    for (const std::string& cell : c.cells) w = std::max(w, cell.size());
    width.push_back(w);
  }
  std::ostringstream out;
  auto line = [&](auto cell_of) {
    for (std::size_t k = 0; k < columns.size(); ++k) {
      const std::string text = cell_of(columns[k]);
      out << text;
      if (k + 1 < columns.size()) out << std::string(width[k] - text.size() + 2, ' ');
    }
    out << "\n";
  };
  auto rule = [&] {
    std::size_t total = 0;
    for (std::size_t w : width) total += w + 2;
    out << std::string(total - 2, '-') << "\n";
  };
  line([](const Column& c) { return c.header; });
  rule();
  for (std::size_t r = 0; r < rows; ++r) line([&](const Column& c) { return c.cells[r]; });
  return out.str();
}

}  // namespace

std::string render_table(const ProblemSpec& problem, const ActionSpace& actions,
                         const PathTrace& trace) {
  std::vector<std::size_t> path;  // positions of consistent entries
  for (std::size_t i = 0; i < trace.entries.size(); ++i) {
    if (is_causally_consistent(trace.entries[i].state, problem.causal_rules())) path.push_back(i);
  }
  const std::size_t n = problem.feature_count();
  std::vector<Column> columns;
  Column names{"Features", {}};
  for (const FeatureDomain& d : problem.domains()) names.cells.push_back(d.name());
  columns.push_back(std::move(names));

  for (std::size_t k = 0; k < path.size(); ++k) {
    if (k > 0) {
      Column kinds{"Action", std::vector<std::string>(n, "N/A")};
      for (std::size_t e = path[k - 1]; e < path[k]; ++e) {
        const auto& taken = trace.entries[e].actions_taken;
        if (taken.empty()) continue;
        const Action& a = actions[taken.back()];
        kinds.cells[a.target] = to_string(a.kind);
      }
      columns.push_back(std::move(kinds));
    }
    std::string header = "Intermediate_State";
    if (k == 0) header = "Initial_State";
    else if (k + 1 == path.size() && trace.status == PlanStatus::success) header = "Goal_State";
    Column state{header, {}};
    const State& s = trace.entries[path[k]].state;
    for (std::size_t f = 0; f < n; ++f) state.cells.push_back(display_value(problem.domain(f), s[f]));
    columns.push_back(std::move(state));
  }

  std::ostringstream out;
  out << "status: " << to_string(trace.status) << "\n";
  out << "expansions: " << trace.expansions << "\n\n";
  out << layout(columns, n);
  return out.str();
}

Json plan_record(std::string_view scenario, const ProblemSpec& problem,
                 const ActionSpace& actions, const PathTrace& trace) {
  Json out;
  out["scenario"] = scenario;
  out["status"] = to_string(trace.status);
  out["expansions"] = trace.expansions;
  Json features = Json::array();
  for (const FeatureDomain& d : problem.domains()) features.push_back(d.name());
  out["features"] = std::move(features);

  Json entries = Json::array();
  for (const TraceEntry& e : trace.entries) {
    Json taken = Json::array();
    for (ActionId id : e.actions_taken) taken.push_back(actions[id].name);
    entries.push_back(Json{{"state", encode_state(problem, e.state)},
                           {"consistent", is_causally_consistent(e.state, problem.causal_rules())},
                           {"actions_taken", std::move(taken)}});
  }
  out["trace"] = std::move(entries);

  Json path = Json::array();
  std::size_t steps = 0;
  if (trace.status == PlanStatus::success) {
    const auto candidate = extract_candidate_path(trace, problem.causal_rules());
    for (const State& s : candidate.states) path.push_back(encode_state(problem, s));
    steps = candidate.states.size() - 1;
  }
  out["candidate_path"] = std::move(path);
  out["steps"] = steps;
  return out;
}

std::vector<State> path_from_record(const nlohmann::json& record, const ProblemSpec& problem) {
  if (!record.is_object() || !record.contains("candidate_path") ||
      !record.at("candidate_path").is_array()) {
    throw SchemaMismatch("record has no candidate_path array");
  }
  std::vector<State> out;
  for (const auto& s : record.at("candidate_path")) out.push_back(decode_state(problem, s));
  return out;
}

std::string render_validation(const oracle::ValidationReport& report) {
  std::ostringstream out;
  for (std::size_t i = 0; i < report.clauses.size(); ++i) {
    out << (report.clauses[i] ? "  PASS  " : "  FAIL  ")
        << oracle::ValidationReport::kClauseNames[i] << "\n";
  }
  out << "valid: " << (report.overall ? "yes" : "no") << "\n";
  out << "steps matching the causal-first policy: " << report.policy_steps << "/" << report.steps
      << "\n";
  return out.str();
}

Json validation_record(const oracle::ValidationReport& report) {
  Json clauses = Json::array();
  for (std::size_t i = 0; i < report.clauses.size(); ++i) {
    clauses.push_back(
        Json{{"name", oracle::ValidationReport::kClauseNames[i]}, {"pass", report.clauses[i]}});
  }
  return Json{{"clauses", std::move(clauses)},
              {"overall", report.overall},
              {"steps", report.steps},
              {"policy_steps", report.policy_steps}};
}

std::string render_state_sets(const oracle::StateSetReport& report) {
  std::ostringstream out;
  out << "states:               " << report.total << "\n"
      << "causally consistent:  " << report.causally_consistent << "\n"
      << "decision fires:       " << report.decision_consistent << "\n"
      << "counterfactuals:      " << report.goal << "\n";
  return out.str();
}

Json state_sets_record(const oracle::StateSetReport& report) {
  return Json{{"states", report.total},
              {"causally_consistent", report.causally_consistent},
              {"decision_fires", report.decision_consistent},
              {"counterfactuals", report.goal}};
}

}  // namespace recourse::report
