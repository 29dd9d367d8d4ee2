#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "recourse/rule_model.hpp"

namespace recourse {

enum class ActionKind { direct, causal };

const char* to_string(ActionKind kind);

/// Position of an action in its ActionSpace.
enum class ActionId : std::uint32_t {};

inline std::size_t index_of(ActionId id) { return static_cast<std::size_t>(id); }

/// Sets one feature to one value. Causal actions are licensed by a causal
/// rule: they fire only where the rule body (`guard`) holds and where every
/// causal rule that does not touch the target already holds (`frame`), so
/// the result is always causally consistent.
struct Action {
  ActionId id{};
  std::string name;
  ActionKind kind = ActionKind::direct;
  std::size_t target = 0;
  FeatureValue value;
  std::vector<Literal> guard;
  std::vector<Rule> frame;
  std::string rule_id;
};

/// One action per (mutable feature, domain value), in declaration order.
std::vector<Action> build_direct_actions(std::span<const FeatureDomain> domains);

/// Verified repairs for each causal rule. A candidate that could leave some
/// rule violated is dropped.
std::vector<Action> build_causal_actions(std::span<const Rule> causal,
                                         std::span<const FeatureDomain> domains);

/// Guard and frame hold, the value changes, and the feature's constraints
/// allow the move.
bool is_permitted(const Action& a, const State& s, std::span<const FeatureDomain> domains);

/// Throws NotApplicable when `a` is not permitted in `s`.
State apply_action(const Action& a, const State& s, std::span<const FeatureDomain> domains);

/// The finite action set A of a problem: causal actions first, then direct
/// ones. This is also the planner's selection order.
class ActionSpace {
 public:
  explicit ActionSpace(const ProblemSpec& problem);

  std::span<const Action> actions() const { return actions_; }
  std::span<const Action> causal() const { return std::span(actions_).first(causal_count_); }
  std::span<const Action> direct() const { return std::span(actions_).subspan(causal_count_); }
  const Action& operator[](ActionId id) const { return actions_[index_of(id)]; }
  std::size_t size() const { return actions_.size(); }

  bool permitted(const Action& a, const State& s) const;
  State apply(const Action& a, const State& s) const { return apply_action(a, s, domains_); }

 private:
  std::span<const FeatureDomain> domains_;
  std::vector<Action> actions_;
  std::size_t causal_count_ = 0;
};

}  // namespace recourse
