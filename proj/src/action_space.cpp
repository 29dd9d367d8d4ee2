#include "recourse/action_space.hpp"

#include <algorithm>

#include "recourse/errors.hpp"

namespace recourse {

const char* to_string(ActionKind kind) {
  return kind == ActionKind::direct ? "Direct" : "Causal";
}

std::vector<Action> build_direct_actions(std::span<const FeatureDomain> domains) {
  std::vector<Action> out;
  for (std::size_t f = 0; f < domains.size(); ++f) {
    const FeatureDomain& d = domains[f];
    if (!d.is_mutable()) continue;
    for (std::size_t v = 0; v < d.size(); ++v) {
      Action a;
      a.kind = ActionKind::direct;
      a.target = f;
      a.value = canonical_value(d, v);
      a.name = "direct:" + d.name() + "=" + d.value_label(v);
      out.push_back(std::move(a));
    }
  }
  return out;
}

namespace {

// Largest projected space the causal-action verifier enumerates exactly.
constexpr std::size_t kExactVerificationLimit = 1'000'000;

// Calls `visit` for every assignment of `features` (other positions of the
// scratch state keep their value). Stops early when visit returns false.
template <typename Visit>
bool for_each_assignment(std::span<const FeatureDomain> domains,
                         const std::vector<std::size_t>& features, State scratch,
                         Visit&& visit) {
  std::vector<std::uint32_t> digits(features.size(), 0);
  for (std::size_t f : features) scratch = scratch.with(f, canonical_value(domains[f], 0));
  for (;;) {
    if (!visit(scratch)) return false;
    std::size_t k = 0;
    for (; k < features.size(); ++k) {
      const std::size_t f = features[k];
      if (++digits[k] < domains[f].size()) {
        scratch = scratch.with(f, canonical_value(domains[f], digits[k]));
        break;
      }
      digits[k] = 0;
      scratch = scratch.with(f, canonical_value(domains[f], 0));
    }
    if (k == features.size()) return true;
  }
}

bool frame_holds(const Action& a, const State& s) {
  return std::all_of(a.frame.begin(), a.frame.end(),
                     [&](const Rule& r) { return eval_rule(r, s); });
}

bool guard_holds(const Action& a, const State& s) {
  return std::all_of(a.guard.begin(), a.guard.end(),
                     [&](const Literal& l) { return l.holds(s); });
}

// For every state where guard and frame hold, setting the target leaves
// every rule that touches the target satisfied.
bool verify_repair(const Action& candidate, std::span<const Rule> causal,
                   std::span<const FeatureDomain> domains) {
  std::vector<const Rule*> touching;
  std::vector<std::size_t> support;
  for (const Rule& r : causal) {
    if (r.mentions(candidate.target)) touching.push_back(&r);
  }
  auto add_support = [&](std::vector<std::size_t>& into, const Rule& r) {
    for (std::size_t f : r.features()) {
      if (f != candidate.target) into.push_back(f);
    }
  };
  for (const Literal& l : candidate.guard) {
    if (l.feature() != candidate.target) support.push_back(l.feature());
  }
  for (const Rule* r : touching) add_support(support, *r);

  // Widen to the frame's features when that stays enumerable; the frame
  // only removes states, so skipping it is conservative.
  std::vector<std::size_t> widened = support;
  for (const Rule& r : candidate.frame) add_support(widened, r);
  auto normalize = [](std::vector<std::size_t>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  normalize(support);
  normalize(widened);
  auto space = [&](const std::vector<std::size_t>& fs) {
    std::size_t n = 1;
    for (std::size_t f : fs) {
      n *= domains[f].size();
      if (n > kExactVerificationLimit) return n;
    }
    return n;
  };
  const bool use_frame = space(widened) <= kExactVerificationLimit;
  const std::vector<std::size_t>& features = use_frame ? widened : support;
  if (!use_frame && space(support) > kExactVerificationLimit) return false;

  std::vector<FeatureValue> base;
  for (const FeatureDomain& d : domains) base.push_back(canonical_value(d, 0));
  return for_each_assignment(domains, features, State(base), [&](const State& s) {
    if (!guard_holds(candidate, s)) return true;
    if (use_frame && !frame_holds(candidate, s)) return true;
    const State after = s.with(candidate.target, candidate.value);
    return std::all_of(touching.begin(), touching.end(),
                       [&](const Rule* r) { return eval_rule(*r, after); });
  });
}

}  // namespace

std::vector<Action> build_causal_actions(std::span<const Rule> causal,
                                         std::span<const FeatureDomain> domains) {
  std::vector<Action> out;
  for (const Rule& rule : causal) {
    if (!rule.head) continue;
    const std::size_t target = rule.head->feature();
    const FeatureDomain& d = domains[target];
    if (!d.is_mutable()) continue;
    for (std::size_t v = 0; v < d.size(); ++v) {
      if (!rule.head->holds(v)) continue;
      Action a;
      a.kind = ActionKind::causal;
      a.target = target;
      a.value = canonical_value(d, v);
      a.guard = rule.body;
      a.rule_id = rule.id;
      for (const Rule& other : causal) {
        if (!other.mentions(target)) a.frame.push_back(other);
      }
      a.name = "causal:" + rule.id + ":" + d.name() + "=" + d.value_label(v);
      if (verify_repair(a, causal, domains)) out.push_back(std::move(a));
    }
  }
  return out;
}

bool is_permitted(const Action& a, const State& s, std::span<const FeatureDomain> domains) {
  const FeatureDomain& d = domains[a.target];
  if (!d.is_mutable()) return false;
  const std::uint32_t current = s[a.target].index;
  const std::uint32_t next = a.value.index;
  if (current == next) return false;
  if (d.monotonicity() == Monotonicity::nondecreasing && next < current) return false;
  if (d.monotonicity() == Monotonicity::nonincreasing && next > current) return false;
  return guard_holds(a, s) && frame_holds(a, s);
}

State apply_action(const Action& a, const State& s, std::span<const FeatureDomain> domains) {
  if (!is_permitted(a, s, domains)) {
    throw NotApplicable("action " + a.name + " is not permitted in this state");
  }
  return s.with(a.target, a.value);
}

ActionSpace::ActionSpace(const ProblemSpec& problem) : domains_(problem.domains()) {
  actions_ = build_causal_actions(problem.causal_rules(), domains_);
  causal_count_ = actions_.size();
  auto direct = build_direct_actions(domains_);
  actions_.insert(actions_.end(), std::make_move_iterator(direct.begin()),
                  std::make_move_iterator(direct.end()));
  for (std::size_t i = 0; i < actions_.size(); ++i) {
    actions_[i].id = static_cast<ActionId>(i);
  }
}

bool ActionSpace::permitted(const Action& a, const State& s) const {
  return is_permitted(a, s, domains_);
}

}  // namespace recourse
