#include "recourse/planner.hpp"

namespace recourse {

const char* to_string(PlanStatus status) {
  switch (status) {
    case PlanStatus::success: return "success";
    case PlanStatus::failure: return "failure";
    case PlanStatus::budget_exhausted: return "budget-exhausted";
  }
  return "?";
}

bool is_counterfactual(const State& s, std::span<const Rule> causal,
                       std::span<const Rule> decision) {
  return is_causally_consistent(s, causal) && !satisfies_decision(s, decision);
}

std::size_t default_budget(const ProblemSpec& problem, const ActionSpace& actions) {
  return std::max<std::size_t>(1, 10 * actions.size() * problem.feature_count());
}

bool SearchContext::attempted(const State& s, ActionId a) const {
  auto it = attempts_.find(s);
  if (it == attempts_.end()) return false;
  return std::find(it->second.begin(), it->second.end(), a) != it->second.end();
}

void SearchContext::record(const State& s, ActionId a) {
  attempts_[s].push_back(a);
  ++expansions_;
}

TraceEntry update(TraceEntry current, Trace& trace, const Action& a,
                  std::span<const FeatureDomain> domains) {
  current.actions_taken.push_back(a.id);
  State next = apply_action(a, current.state, domains);
  trace.push_back(std::move(current));
  return TraceEntry{std::move(next), {}};
}

std::optional<ActionId> select_action(const SearchContext& ctx, const TraceEntry& current,
                                      const Trace& trace, std::span<const Action> candidates) {
  const ActionSpace& space = ctx.actions();
  for (const Action& a : candidates) {
    if (!space.permitted(a, current.state)) continue;
    if (!not_member<ActionId>(a.id, current.actions_taken)) continue;
    if (ctx.attempted(current.state, a.id)) continue;
    if (!not_member(space.apply(a, current.state), trace)) continue;
    return a.id;
  }
  return std::nullopt;
}

namespace {

StepOutcome apply_selected(SearchContext& ctx, TraceEntry& current, Trace& trace, ActionId id) {
  if (!ctx.budget_left()) return StepOutcome::budget_exhausted;
  const Action& a = ctx.actions()[id];
  ctx.record(current.state, id);
  current = update(std::move(current), trace, a, ctx.problem().domains());
  return StepOutcome::ok;
}

}  // namespace

StepOutcome make_consistent(SearchContext& ctx, TraceEntry& current, Trace& trace) {
  const auto& causal = ctx.problem().causal_rules();
  while (!is_causally_consistent(current.state, causal)) {
    auto chosen = select_action(ctx, current, trace, ctx.actions().causal());
    if (!chosen) chosen = select_action(ctx, current, trace, ctx.actions().direct());
    if (chosen) {
      if (auto outcome = apply_selected(ctx, current, trace, *chosen); outcome != StepOutcome::ok) {
        return outcome;
      }
      continue;
    }
    if (trace.empty()) return StepOutcome::failure;
    current = pop(trace);
  }
  return StepOutcome::ok;
}

StepOutcome intervene(SearchContext& ctx, Trace& trace) {
  TraceEntry current = pop(trace);
  if (auto chosen = select_action(ctx, current, trace, ctx.actions().actions())) {
    if (auto outcome = apply_selected(ctx, current, trace, *chosen); outcome != StepOutcome::ok) {
      trace.push_back(std::move(current));
      return outcome;
    }
  } else {
    if (trace.empty()) {
      trace.push_back(std::move(current));
      return StepOutcome::failure;
    }
    current = pop(trace);
  }
  const StepOutcome outcome = make_consistent(ctx, current, trace);
  trace.push_back(std::move(current));
  return outcome;
}

PathTrace get_path(const ProblemSpec& problem, const ActionSpace& actions,
                   std::optional<std::size_t> budget) {
  SearchContext ctx(problem, actions, budget.value_or(problem.action_budget().value_or(
                                          default_budget(problem, actions))));
  PathTrace result;
  result.entries.push_back(TraceEntry{problem.initial(), {}});
  result.status = PlanStatus::success;
  while (!is_counterfactual(get_last(result.entries).state, problem.causal_rules(),
                            problem.decision_rules())) {
    const StepOutcome outcome = intervene(ctx, result.entries);
    if (outcome == StepOutcome::failure) {
      result.status = PlanStatus::failure;
      break;
    }
    if (outcome == StepOutcome::budget_exhausted) {
      result.status = PlanStatus::budget_exhausted;
      break;
    }
  }
  result.expansions = ctx.expansions();
  return result;
}

PathTrace get_path(const ProblemSpec& problem, std::optional<std::size_t> budget) {
  const ActionSpace actions(problem);
  return get_path(problem, actions, budget);
}

CandidatePath extract_candidate_path(const PathTrace& trace, std::span<const Rule> causal) {
  if (trace.status != PlanStatus::success) throw NotASolution();
  CandidatePath path;
  for (const TraceEntry& e : trace.entries) {
    if (is_causally_consistent(e.state, causal)) path.states.push_back(e.state);
  }
  return path;
}

}  // namespace recourse
