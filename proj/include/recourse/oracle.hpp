#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "recourse/action_space.hpp"
#include "recourse/rule_model.hpp"

// Brute-force ground truth over the full (finite) state space. Nothing in
// here calls into the planner.
namespace recourse::oracle {

inline constexpr std::size_t kDefaultStateCap = 10'000'000;

/// Cap taken from RECOURSE_MAX_STATES when set and valid, else the default.
std::size_t state_cap_from_env();

/// Mixed-radix numbering of the Cartesian product of the domains; the first
/// feature is the most significant digit.
class StateIndexer {
 public:
  /// Throws CapExceeded when the product of domain sizes exceeds `cap`.
  explicit StateIndexer(std::span<const FeatureDomain> domains,
                        std::size_t cap = kDefaultStateCap);

  std::size_t size() const { return size_; }
  State decode(std::size_t index) const;
  std::size_t encode(const State& s) const;

 private:
  std::span<const FeatureDomain> domains_;
  std::vector<std::size_t> stride_;
  std::size_t size_ = 1;
};

/// Every state exactly once, in index order.
template <typename Visit>
void for_each_state(const StateIndexer& indexer, Visit&& visit) {
  for (std::size_t i = 0; i < indexer.size(); ++i) visit(indexer.decode(i));
}

std::vector<State> enumerate_states(std::span<const FeatureDomain> domains,
                                    std::size_t cap = kDefaultStateCap);

struct StateSetReport {
  std::size_t total = 0;                 // |S|
  std::size_t causally_consistent = 0;   // |S_C|
  std::size_t decision_consistent = 0;   // |S_Q|, a subset of S_C
  std::size_t goal = 0;                  // |G|

  bool operator==(const StateSetReport&) const = default;
};

enum StateFlag : std::uint8_t {
  kCausallyConsistent = 1,
  kDecisionFires = 2,
};

/// Per-index flags, computed in parallel.
std::vector<std::uint8_t> classify_states(const ProblemSpec& problem, const StateIndexer& indexer);
/// Counts computed with a parallel reduction.
StateSetReport count_state_sets(const ProblemSpec& problem, const StateIndexer& indexer);

// Single-threaded references for the kernels above.
namespace serial {
std::vector<std::uint8_t> classify_states(const ProblemSpec& problem, const StateIndexer& indexer);
StateSetReport count_state_sets(const ProblemSpec& problem, const StateIndexer& indexer);
}  // namespace serial

std::vector<State> enumerate_causally_consistent(const ProblemSpec& problem,
                                                 std::size_t cap = kDefaultStateCap);
std::vector<State> compute_goal_set(const ProblemSpec& problem,
                                    std::size_t cap = kDefaultStateCap);

struct ValidationReport {
  static constexpr std::array<const char*, 5> kClauseNames = {
      "starts at the initial state",
      "ends in the goal set",
      "every state causally consistent",
      "no earlier state in the goal set",
      "every step is a transition",
  };

  std::array<bool, 5> clauses{};
  bool overall = false;
  /// Steps that also match the deterministic causal-first repair policy.
  std::size_t policy_steps = 0;
  std::size_t steps = 0;
};

/// Enumerated view of one problem: membership tests, the transition
/// relation, path validation and breadth-first reference paths.
class Oracle {
 public:
  Oracle(const ProblemSpec& problem, const ActionSpace& actions,
         std::size_t cap = kDefaultStateCap);

  const StateIndexer& indexer() const { return indexer_; }
  const StateSetReport& report() const { return report_; }

  bool in_causal(const State& s) const;
  bool in_decision(const State& s) const;  // in S_Q
  bool in_goal(const State& s) const;

  std::vector<State> causally_consistent() const;
  std::vector<State> goal_set() const;

  /// Consistent states reachable from `s` by one permitted action followed
  /// by any chain of permitted actions through inconsistent states. Empty
  /// when `s` is inconsistent. Never contains `s`.
  std::vector<State> delta(const State& s) const;

  /// The subset of delta(s) reached when every repair follows the fixed
  /// causal-first order without backtracking.
  std::vector<State> delta_policy(const State& s) const;

  ValidationReport validate(std::span<const State> path) const;

  /// Minimum-length solution path, or nullopt when no goal is reachable.
  std::optional<std::vector<State>> shortest_path() const;

 private:
  const ProblemSpec& problem_;
  const ActionSpace& actions_;
  StateIndexer indexer_;
  std::vector<std::uint8_t> flags_;
  StateSetReport report_;
};

std::vector<State> delta_oracle(const State& s, const ProblemSpec& problem,
                                std::size_t cap = kDefaultStateCap);

ValidationReport validate_solution_path(std::span<const State> path, const ProblemSpec& problem,
                                        std::size_t cap = kDefaultStateCap);

std::optional<std::vector<State>> bfs_shortest_path(const ProblemSpec& problem,
                                                    std::size_t cap = kDefaultStateCap);

}  // namespace recourse::oracle
