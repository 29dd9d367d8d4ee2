#include "recourse/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <limits>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "recourse/errors.hpp"

namespace recourse::oracle {

std::size_t state_cap_from_env() {
  if (const char* raw = std::getenv("RECOURSE_MAX_STATES")) {
    try {
      std::size_t used = 0;
      const unsigned long long value = std::stoull(raw, &used);
      if (used == std::string(raw).size() && value > 0) return value;
    } catch (const std::exception&) {
    }
  }
  return kDefaultStateCap;
}

// ---------------------------------------------------------------------------
// StateIndexer

StateIndexer::StateIndexer(std::span<const FeatureDomain> domains, std::size_t cap)
    : domains_(domains), stride_(domains.size(), 1) {
  std::size_t total = 1;
  for (std::size_t k = domains.size(); k-- > 0;) {
    stride_[k] = total;
    const std::size_t n = domains[k].size();
    if (total > std::numeric_limits<std::size_t>::max() / n) {
      throw CapExceeded(std::numeric_limits<std::size_t>::max(), cap);
    }
    total *= n;
  }
  if (total > cap) throw CapExceeded(total, cap);
  size_ = total;
}

State StateIndexer::decode(std::size_t index) const {
  std::vector<FeatureValue> values(domains_.size());
  for (std::size_t k = 0; k < domains_.size(); ++k) {
    values[k] = canonical_value(domains_[k], (index / stride_[k]) % domains_[k].size());
  }
  return State(std::move(values));
}

std::size_t StateIndexer::encode(const State& s) const {
  std::size_t index = 0;
  for (std::size_t k = 0; k < domains_.size(); ++k) index += s[k].index * stride_[k];
  return index;
}

std::vector<State> enumerate_states(std::span<const FeatureDomain> domains, std::size_t cap) {
  const StateIndexer indexer(domains, cap);
  std::vector<State> out;
  out.reserve(indexer.size());
  for_each_state(indexer, [&](State s) { out.push_back(std::move(s)); });
  return out;
}

// ---------------------------------------------------------------------------
// Classification kernels

namespace {

std::uint8_t classify(const ProblemSpec& problem, const State& s) {
  std::uint8_t flags = 0;
  if (is_causally_consistent(s, problem.causal_rules())) flags |= kCausallyConsistent;
  if (satisfies_decision(s, problem.decision_rules())) flags |= kDecisionFires;
  return flags;
}

void tally(StateSetReport& r, std::uint8_t flags) {
  ++r.total;
  if (flags & kCausallyConsistent) {
    ++r.causally_consistent;
    if (flags & kDecisionFires) {
      ++r.decision_consistent;
    } else {
      ++r.goal;
    }
  }
}

}  // namespace

std::vector<std::uint8_t> classify_states(const ProblemSpec& problem, const StateIndexer& indexer) {
  const auto n = static_cast<std::int64_t>(indexer.size());
  std::vector<std::uint8_t> flags(indexer.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    flags[i] = classify(problem, indexer.decode(static_cast<std::size_t>(i)));
  }
  return flags;
}

StateSetReport count_state_sets(const ProblemSpec& problem, const StateIndexer& indexer) {
  const auto n = static_cast<std::int64_t>(indexer.size());
  std::size_t consistent = 0;
  std::size_t fires = 0;
#pragma omp parallel for schedule(static) reduction(+ : consistent, fires)
  for (std::int64_t i = 0; i < n; ++i) {
    const std::uint8_t f = classify(problem, indexer.decode(static_cast<std::size_t>(i)));
    if (f & kCausallyConsistent) {
      ++consistent;
      if (f & kDecisionFires) ++fires;
    }
  }
  return StateSetReport{indexer.size(), consistent, fires, consistent - fires};
}

namespace serial {

std::vector<std::uint8_t> classify_states(const ProblemSpec& problem, const StateIndexer& indexer) {
  std::vector<std::uint8_t> flags;
  flags.reserve(indexer.size());
  for_each_state(indexer, [&](const State& s) { flags.push_back(classify(problem, s)); });
  return flags;
}

StateSetReport count_state_sets(const ProblemSpec& problem, const StateIndexer& indexer) {
  StateSetReport r;
  for_each_state(indexer, [&](const State& s) { tally(r, classify(problem, s)); });
  return r;
}

}  // namespace serial

std::vector<State> enumerate_causally_consistent(const ProblemSpec& problem, std::size_t cap) {
  const StateIndexer indexer(problem.domains(), cap);
  const auto flags = classify_states(problem, indexer);
  std::vector<State> out;
  for (std::size_t i = 0; i < flags.size(); ++i) {
    if (flags[i] & kCausallyConsistent) out.push_back(indexer.decode(i));
  }
  return out;
}

std::vector<State> compute_goal_set(const ProblemSpec& problem, std::size_t cap) {
  const StateIndexer indexer(problem.domains(), cap);
  const auto flags = classify_states(problem, indexer);
  std::vector<State> out;
  for (std::size_t i = 0; i < flags.size(); ++i) {
    if (flags[i] == kCausallyConsistent) out.push_back(indexer.decode(i));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Oracle

Oracle::Oracle(const ProblemSpec& problem, const ActionSpace& actions, std::size_t cap)
    : problem_(problem), actions_(actions), indexer_(problem.domains(), cap) {
  flags_ = classify_states(problem_, indexer_);
  for (std::uint8_t f : flags_) tally(report_, f);
}

bool Oracle::in_causal(const State& s) const {
  return flags_[indexer_.encode(s)] & kCausallyConsistent;
}

bool Oracle::in_decision(const State& s) const {
  return flags_[indexer_.encode(s)] == (kCausallyConsistent | kDecisionFires);
}

bool Oracle::in_goal(const State& s) const {
  return flags_[indexer_.encode(s)] == kCausallyConsistent;
}

std::vector<State> Oracle::causally_consistent() const {
  std::vector<State> out;
  for (std::size_t i = 0; i < flags_.size(); ++i) {
    if (flags_[i] & kCausallyConsistent) out.push_back(indexer_.decode(i));
  }
  return out;
}

std::vector<State> Oracle::goal_set() const {
  std::vector<State> out;
  for (std::size_t i = 0; i < flags_.size(); ++i) {
    if (flags_[i] == kCausallyConsistent) out.push_back(indexer_.decode(i));
  }
  return out;
}

std::vector<State> Oracle::delta(const State& s) const {
  if (!in_causal(s)) return {};
  const std::size_t origin = indexer_.encode(s);
  std::unordered_set<std::size_t> seen{origin};
  std::deque<State> frontier;
  std::vector<std::size_t> found;
  auto reach = [&](State next) {
    const std::size_t index = indexer_.encode(next);
    if (!seen.insert(index).second) return;
    if (flags_[index] & kCausallyConsistent) {
      found.push_back(index);
    } else {
      frontier.push_back(std::move(next));
    }
  };
  for (const Action& a : actions_.actions()) {
    if (actions_.permitted(a, s)) reach(actions_.apply(a, s));
  }
  while (!frontier.empty()) {
    const State x = std::move(frontier.front());
    frontier.pop_front();
    for (const Action& a : actions_.actions()) {
      if (actions_.permitted(a, x)) reach(actions_.apply(a, x));
    }
  }
  std::sort(found.begin(), found.end());
  std::vector<State> out;
  out.reserve(found.size());
  for (std::size_t index : found) out.push_back(indexer_.decode(index));
  return out;
}

std::vector<State> Oracle::delta_policy(const State& s) const {
  if (!in_causal(s)) return {};
  std::vector<std::size_t> found;
  for (const Action& first : actions_.actions()) {
    if (!actions_.permitted(first, s)) continue;
    std::unordered_set<std::size_t> chain{indexer_.encode(s)};
    State x = actions_.apply(first, s);
    chain.insert(indexer_.encode(x));
    bool stuck = false;
    while (!in_causal(x)) {
      auto pick = [&](std::span<const Action> pool) -> std::optional<State> {
        for (const Action& a : pool) {
          if (!actions_.permitted(a, x)) continue;
          State next = actions_.apply(a, x);
          if (!chain.contains(indexer_.encode(next))) return next;
        }
        return std::nullopt;
      };
      auto next = pick(actions_.causal());
      if (!next) next = pick(actions_.direct());
      if (!next) {
        stuck = true;
        break;
      }
      x = std::move(*next);
      chain.insert(indexer_.encode(x));
    }
    if (!stuck) found.push_back(indexer_.encode(x));
  }
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  std::vector<State> out;
  for (std::size_t index : found) out.push_back(indexer_.decode(index));
  return out;
}

ValidationReport Oracle::validate(std::span<const State> path) const {
  ValidationReport r;
  if (path.empty()) return r;
  const std::size_t m = path.size() - 1;
  r.clauses[0] = path.front() == problem_.initial();
  r.clauses[1] = in_goal(path.back());
  r.clauses[2] = std::all_of(path.begin(), path.end(), [&](const State& s) { return in_causal(s); });
  r.clauses[3] = std::none_of(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(m),
                              [&](const State& s) { return in_goal(s); });
  r.clauses[4] = true;
  r.steps = m;
  for (std::size_t i = 0; i < m; ++i) {
    auto contains = [&](const std::vector<State>& set) {
      return std::find(set.begin(), set.end(), path[i + 1]) != set.end();
    };
    if (!contains(delta(path[i]))) r.clauses[4] = false;
    if (contains(delta_policy(path[i]))) ++r.policy_steps;
  }
  r.overall = std::all_of(r.clauses.begin(), r.clauses.end(), [](bool c) { return c; });
  return r;
}

std::optional<std::vector<State>> Oracle::shortest_path() const {
  const State& start = problem_.initial();
  if (in_goal(start)) return std::vector<State>{start};
  const std::size_t origin = indexer_.encode(start);
  std::unordered_map<std::size_t, std::size_t> parent{{origin, origin}};
  std::deque<State> queue{start};
  while (!queue.empty()) {
    const State s = std::move(queue.front());
    queue.pop_front();
    const std::size_t from = indexer_.encode(s);
    for (State& next : delta(s)) {
      const std::size_t index = indexer_.encode(next);
      if (!parent.emplace(index, from).second) continue;
      if (in_goal(next)) {
        std::vector<State> path;
        for (std::size_t at = index; at != origin; at = parent.at(at)) {
          path.push_back(indexer_.decode(at));
        }
        path.push_back(start);
        std::reverse(path.begin(), path.end());
        return path;
      }
      queue.push_back(std::move(next));
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

std::vector<State> delta_oracle(const State& s, const ProblemSpec& problem, std::size_t cap) {
  const ActionSpace actions(problem);
  return Oracle(problem, actions, cap).delta(s);
}

ValidationReport validate_solution_path(std::span<const State> path, const ProblemSpec& problem,
                                        std::size_t cap) {
  const ActionSpace actions(problem);
  return Oracle(problem, actions, cap).validate(path);
}

std::optional<std::vector<State>> bfs_shortest_path(const ProblemSpec& problem, std::size_t cap) {
  const ActionSpace actions(problem);
  return Oracle(problem, actions, cap).shortest_path();
}

}  // namespace recourse::oracle
