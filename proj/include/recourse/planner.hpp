#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "recourse/action_space.hpp"
#include "recourse/errors.hpp"
#include "recourse/rule_model.hpp"

namespace recourse {

/// A visited state and the actions attempted from it during this visit.
struct TraceEntry {
  State state;
  std::vector<ActionId> actions_taken;

  bool operator==(const TraceEntry&) const = default;
};

using Trace = std::vector<TraceEntry>;

enum class PlanStatus { success, failure, budget_exhausted };

const char* to_string(PlanStatus status);

struct PathTrace {
  Trace entries;
  PlanStatus status = PlanStatus::failure;
  /// Number of action applications (calls to update) the search made.
  std::size_t expansions = 0;
};

/// The causally consistent states of a successful trace, in order.
struct CandidatePath {
  std::vector<State> states;
};

// ---------------------------------------------------------------------------
// List helpers used by the search.

/// True when `x` is neither an element of `seq` nor inside any element.
inline bool not_member(const State& x, std::span<const TraceEntry> seq) {
  return std::none_of(seq.begin(), seq.end(),
                      [&](const TraceEntry& e) { return e.state == x; });
}

inline bool not_member(ActionId x, std::span<const TraceEntry> seq) {
  return std::none_of(seq.begin(), seq.end(), [&](const TraceEntry& e) {
    return std::find(e.actions_taken.begin(), e.actions_taken.end(), x) !=
           e.actions_taken.end();
  });
}

template <typename T>
bool not_member(const T& x, std::span<const T> seq) {
  return std::find(seq.begin(), seq.end(), x) == seq.end();
}

template <typename T>
const T& get_last(const std::vector<T>& seq) {
  if (seq.empty()) throw EmptySequence();
  return seq.back();
}

template <typename T>
T pop(std::vector<T>& seq) {
  if (seq.empty()) throw EmptySequence();
  T last = std::move(seq.back());
  seq.pop_back();
  return last;
}

// ---------------------------------------------------------------------------

/// All causal rules hold and no decision rule fires.
bool is_counterfactual(const State& s, std::span<const Rule> causal,
                       std::span<const Rule> decision);

/// Default expansion budget: 10 * |A| * number of features.
std::size_t default_budget(const ProblemSpec& problem, const ActionSpace& actions);

/// Mutable bookkeeping shared by intervene, make_consistent and update
/// during one planning run.
class SearchContext {
 public:
  SearchContext(const ProblemSpec& problem, const ActionSpace& actions, std::size_t budget)
      : problem_(problem), actions_(actions), budget_(budget) {}

  const ProblemSpec& problem() const { return problem_; }
  const ActionSpace& actions() const { return actions_; }
  std::size_t expansions() const { return expansions_; }
  bool budget_left() const { return expansions_ < budget_; }

  /// Whether `a` was ever applied to `s` in this run. Attempts survive
  /// backtracking and re-entry, so each (state, action) pair is expanded at
  /// most once.
  bool attempted(const State& s, ActionId a) const;
  void record(const State& s, ActionId a);

 private:
  const ProblemSpec& problem_;
  const ActionSpace& actions_;
  std::size_t budget_;
  std::size_t expansions_ = 0;
  std::unordered_map<State, std::vector<ActionId>, StateHash> attempts_;
};

enum class StepOutcome { ok, failure, budget_exhausted };

/// Records `a` as attempted from `current`, appends `current` to the trace
/// and returns the successor with an empty attempt list.
TraceEntry update(TraceEntry current, Trace& trace, const Action& a,
                  std::span<const FeatureDomain> domains);

/// First action of `candidates` that is permitted in `current`, not yet
/// attempted from it, and does not lead back into the trace.
std::optional<ActionId> select_action(const SearchContext& ctx, const TraceEntry& current,
                                      const Trace& trace, std::span<const Action> candidates);

/// Drives `current` to a causally consistent state: causal repairs first,
/// then direct changes, backtracking through the trace when stuck.
StepOutcome make_consistent(SearchContext& ctx, TraceEntry& current, Trace& trace);

/// One transition from the last (consistent) trace state to a new
/// consistent state, backtracking when no action is left.
StepOutcome intervene(SearchContext& ctx, Trace& trace);

/// Backtracking search from the problem's initial state to a goal state.
PathTrace get_path(const ProblemSpec& problem, const ActionSpace& actions,
                   std::optional<std::size_t> budget = std::nullopt);

/// Convenience overload building the action space internally.
PathTrace get_path(const ProblemSpec& problem, std::optional<std::size_t> budget = std::nullopt);

/// Drops every causally inconsistent entry. Throws NotASolution unless the
/// trace succeeded.
CandidatePath extract_candidate_path(const PathTrace& trace, std::span<const Rule> causal);

}  // namespace recourse
