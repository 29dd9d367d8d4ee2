#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "recourse/dsl.hpp"
#include "recourse/errors.hpp"
#include "recourse/ingest.hpp"
#include "recourse/oracle.hpp"
#include "recourse/planner.hpp"
#include "recourse/report.hpp"

namespace {

using namespace recourse;

enum Exit : int {
  kOk = 0,
  kUsage = 1,
  kNoPath = 2,
  kBudget = 3,
  kCap = 4,
};

struct Input {
  std::string scenario;
  std::string file;
  std::uint64_t seed = 0;
  std::string csv;
  std::size_t row = 1;
};

struct Options {
  Input input;
  std::optional<std::size_t> budget;
  std::string format = "table";
  bool validate = false;
  std::optional<std::size_t> max_states;
  std::string path;
};

void add_input(CLI::App* cmd, Options& o) {
  auto* scenario = cmd->add_option("--scenario", o.input.scenario,
                                   "Builtin scenario (adult, car, german, german-motivating) "
                                   "or 'random'");
  auto* file = cmd->add_option("--file", o.input.file, "Problem file in the rule language");
  scenario->excludes(file);
  file->excludes(scenario);
  cmd->add_option("--seed", o.input.seed, "Seed for --scenario random");
  cmd->add_option("--csv", o.input.csv, "CSV file whose row replaces the initial state");
  cmd->add_option("--row", o.input.row, "1-based data row of --csv")->check(CLI::PositiveNumber);
  cmd->add_option("--max-states", o.max_states, "Enumeration cap for oracle work")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"table", "structured"}));
}

std::string input_name(const Input& in) {
  if (!in.file.empty()) return in.file;
  if (in.scenario == "random") return "random:" + std::to_string(in.seed);
  return in.scenario;
}

ProblemSpec load(const Input& in) {
  ProblemSpec problem = [&] {
    if (!in.file.empty()) return load_problem_file(in.file);
    if (in.scenario.empty()) throw Error("one of --scenario or --file is required");
    if (in.scenario == "random") return ingest::random_problem(in.seed);
    return ingest::builtin_scenario(in.scenario).problem;
  }();
  if (!in.csv.empty()) {
    const auto schema = ingest::DatasetSchema::for_problem(problem);
    const auto loaded = ingest::load_csv(in.csv, schema);
    if (in.row > loaded.records.size()) {
      throw Error("--row " + std::to_string(in.row) + " but the file has " +
                  std::to_string(loaded.records.size()) + " rows");
    }
    problem = problem.with_initial(ingest::record_to_state(loaded.records[in.row - 1], problem));
  }
  return problem;
}

std::size_t cap(const Options& o) { return o.max_states.value_or(oracle::state_cap_from_env()); }

int run_plan(const Options& o) {
  const ProblemSpec problem = load(o.input);
  const ActionSpace actions(problem);
  const PathTrace trace = get_path(problem, actions, o.budget);

  std::optional<oracle::ValidationReport> validation;
  if (o.validate && trace.status == PlanStatus::success) {
    const auto path = extract_candidate_path(trace, problem.causal_rules());
    validation = oracle::Oracle(problem, actions, cap(o)).validate(path.states);
  }

  if (o.format == "structured") {
    auto record = report::plan_record(input_name(o.input), problem, actions, trace);
    if (validation) record["validation"] = report::validation_record(*validation);
    std::cout << record.dump(2) << "\n";
  } else {
    std::cout << report::render_table(problem, actions, trace);
    if (validation) std::cout << "\n" << report::render_validation(*validation);
  }

  if (trace.status == PlanStatus::budget_exhausted) return kBudget;
  if (trace.status == PlanStatus::failure) return kNoPath;
  if (validation && !validation->overall) return kNoPath;
  return kOk;
}

int run_validate(const Options& o) {
  const ProblemSpec problem = load(o.input);
  const ActionSpace actions(problem);
  std::vector<State> path;
  if (o.path.empty()) {
    const PathTrace trace = get_path(problem, actions, o.budget);
    if (trace.status != PlanStatus::success) {
      std::cerr << "recourse: planner returned " << to_string(trace.status)
                << "; nothing to validate\n";
      return trace.status == PlanStatus::budget_exhausted ? kBudget : kNoPath;
    }
    path = extract_candidate_path(trace, problem.causal_rules()).states;
  } else {
    std::ifstream in(o.path);
    if (!in) throw IoError("cannot open " + o.path);
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw SchemaMismatch(std::string("malformed plan record: ") + e.what());
    }
    path = report::path_from_record(record, problem);
  }
  const oracle::Oracle oracle(problem, actions, cap(o));
  const auto validation = oracle.validate(path);
  const auto shortest = oracle.shortest_path();

  if (o.format == "structured") {
    auto record = report::validation_record(validation);
    if (shortest) record["shortest_steps"] = shortest->size() - 1;
    else record["shortest_steps"] = nullptr;
    record["state_sets"] = report::state_sets_record(oracle.report());
    std::cout << record.dump(2) << "\n";
  } else {
    std::cout << report::render_validation(validation);
    if (shortest) std::cout << "shortest path length: " << shortest->size() - 1 << "\n";
    else std::cout << "shortest path length: none\n";
    std::cout << "\n" << report::render_state_sets(oracle.report());
  }
  return validation.overall ? kOk : kNoPath;
}

int run_enumerate(const Options& o) {
  const ProblemSpec problem = load(o.input);
  const oracle::StateIndexer indexer(problem.domains(), cap(o));
  const auto counts = oracle::count_state_sets(problem, indexer);
  if (o.format == "structured") {
    std::cout << report::state_sets_record(counts).dump(2) << "\n";
  } else {
    std::cout << report::render_state_sets(counts);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Counterfactual path planning over rule-based decision models"};
  app.require_subcommand(1);
  Options o;

  auto* plan = app.add_subcommand("plan", "Search for a counterfactual path");
  add_input(plan, o);
  plan->add_option("--budget", o.budget, "Maximum number of action applications")
      ->check(CLI::PositiveNumber);
  plan->add_flag("--validate", o.validate, "Check the path against the enumeration oracle");

  auto* validate = app.add_subcommand("validate", "Check a candidate path against the oracle");
  add_input(validate, o);
  validate->add_option("--path", o.path, "Structured plan output to check (default: plan now)");
  validate->add_option("--budget", o.budget, "Budget when planning")->check(CLI::PositiveNumber);

  auto* enumerate = app.add_subcommand("enumerate", "Count the state sets of a problem");
  add_input(enumerate, o);

  auto* scenarios = app.add_subcommand("scenarios", "List builtin scenarios");
  std::string show;
  scenarios->add_option("--show", show, "Print the rule text of one scenario");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*plan) return run_plan(o);
    if (*validate) return run_validate(o);
    if (*enumerate) return run_enumerate(o);
    if (show.empty()) {
      for (const auto& name : ingest::builtin_scenario_names()) std::cout << name << "\n";
    } else {
      std::cout << ingest::builtin_scenario_source(show);
    }
    return kOk;
  } catch (const CapExceeded& e) {
    std::cerr << "recourse: " << e.what() << "\n";
    return kCap;
  } catch (const std::exception& e) {
    std::cerr << "recourse: " << e.what() << "\n";
    return kUsage;
  }
}
