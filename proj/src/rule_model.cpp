#include "recourse/rule_model.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "recourse/errors.hpp"

namespace recourse {

const char* to_string(SemanticErrorKind kind) {
  switch (kind) {
    case SemanticErrorKind::undeclared_feature: return "undeclared-feature";
    case SemanticErrorKind::type_mismatch: return "type-mismatch";
    case SemanticErrorKind::causally_inconsistent_initial: return "causally-inconsistent-initial";
    case SemanticErrorKind::head_in_body: return "head-in-body";
    case SemanticErrorKind::duplicate_declaration: return "duplicate-declaration";
    case SemanticErrorKind::unknown_value: return "unknown-value";
    case SemanticErrorKind::incomplete_initial: return "incomplete-initial";
    case SemanticErrorKind::threshold_not_induced: return "threshold-not-induced";
    case SemanticErrorKind::invalid_budget: return "invalid-budget";
  }
  return "semantic-error";
}

const char* to_string(Comparator op) {
  switch (op) {
    case Comparator::eq: return "=";
    case Comparator::ne: return "!=";
    case Comparator::le: return "=<";
    case Comparator::lt: return "<";
    case Comparator::ge: return ">=";
    case Comparator::gt: return ">";
  }
  return "?";
}

const char* to_string(ConstraintKind kind) {
  switch (kind) {
    case ConstraintKind::immutable: return "immutable";
    case ConstraintKind::nondecreasing: return "nondecreasing";
    case ConstraintKind::nonincreasing: return "nonincreasing";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// FeatureDomain

FeatureDomain FeatureDomain::categorical(std::string name,
                                         std::vector<std::string> labels) {
  if (labels.empty()) {
    throw SemanticError(SemanticErrorKind::unknown_value,
                        "categorical feature " + name + " has no values");
  }
  std::set<std::string> seen;
  for (const auto& label : labels) {
    if (!seen.insert(label).second) {
      throw SemanticError(SemanticErrorKind::duplicate_declaration,
                          "value '" + label + "' repeated in feature " + name);
    }
  }
  FeatureDomain d;
  d.name_ = std::move(name);
  d.kind_ = FeatureKind::categorical;
  d.labels_ = std::move(labels);
  return d;
}

FeatureDomain FeatureDomain::numeric(std::string name, double lo, double hi,
                                     std::vector<Interval> intervals) {
  if (!(lo <= hi)) throw EmptyRange("numeric feature " + name + " has an empty range");
  if (intervals.empty()) {
    throw SemanticError(SemanticErrorKind::unknown_value,
                        "numeric feature " + name + " has no intervals");
  }
  // Cells must tile [lo, hi] exactly, in order, without overlap.
  bool tiles = intervals.front().lo == lo && !intervals.front().lo_open &&
               intervals.back().hi == hi && !intervals.back().hi_open;
  for (std::size_t i = 0; tiles && i + 1 < intervals.size(); ++i) {
    const Interval& a = intervals[i];
    const Interval& b = intervals[i + 1];
    tiles = a.hi == b.lo && a.hi_open != b.lo_open;
  }
  for (const Interval& cell : intervals) {
    tiles = tiles && cell.lo <= cell.hi && cell.contains(cell.representative);
  }
  if (!tiles) {
    throw SemanticError(SemanticErrorKind::unknown_value,
                        "intervals of " + name + " do not partition its range");
  }
  FeatureDomain d;
  d.name_ = std::move(name);
  d.kind_ = FeatureKind::numeric;
  d.intervals_ = std::move(intervals);
  d.lo_ = lo;
  d.hi_ = hi;
  return d;
}

std::size_t FeatureDomain::size() const {
  return is_numeric() ? intervals_.size() : labels_.size();
}

std::optional<std::size_t> FeatureDomain::label_index(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> FeatureDomain::interval_index(double x) const {
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    if (intervals_[i].contains(x)) return i;
  }
  return std::nullopt;
}

std::string FeatureDomain::value_label(std::size_t index) const {
  return is_numeric() ? intervals_[index].label() : labels_[index];
}

FeatureValue canonical_value(const FeatureDomain& domain, std::size_t index) {
  FeatureValue v;
  v.index = static_cast<std::uint32_t>(index);
  if (domain.is_numeric()) v.point = domain.intervals()[index].representative;
  return v;
}

std::string display_value(const FeatureDomain& domain, const FeatureValue& value) {
  if (!domain.is_numeric()) return domain.labels()[value.index];
  const Interval& cell = domain.intervals()[value.index];
  if (cell.is_point() || value.point != cell.representative) {
    return format_number(value.point);
  }
  return cell.describe();
}

// ---------------------------------------------------------------------------
// State

State State::with(std::size_t feature, FeatureValue value) const {
  State copy = *this;
  copy.values_[feature] = value;
  return copy;
}

std::size_t State::hash() const {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (const FeatureValue& v : values_) {
    h ^= v.index + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

// ---------------------------------------------------------------------------
// Literal

Literal::Literal(std::size_t feature, Comparator op, std::string constant)
    : feature_(feature), op_(op), constant_(std::move(constant)) {
  if (auto value = parse_number(constant_)) threshold_ = *value;
}

namespace {

bool compare(double x, Comparator op, double t) {
  switch (op) {
    case Comparator::eq: return x == t;
    case Comparator::ne: return x != t;
    case Comparator::le: return x <= t;
    case Comparator::lt: return x < t;
    case Comparator::ge: return x >= t;
    case Comparator::gt: return x > t;
  }
  return false;
}

// A literal is constant on a cell unless its threshold splits the cell.
bool constant_on(const Interval& cell, Comparator op, double t) {
  if (!cell.contains(t)) return true;
  switch (op) {
    case Comparator::le:
    case Comparator::gt: return t == cell.hi;
    case Comparator::lt:
    case Comparator::ge: return t == cell.lo;
    case Comparator::eq:
    case Comparator::ne: return cell.is_point();
  }
  return false;
}

}  // namespace

void Literal::bind(const FeatureDomain& domain) {
  truth_.assign(domain.size(), 0);
  if (domain.is_numeric()) {
    if (!parse_number(constant_)) {
      throw SemanticError(SemanticErrorKind::type_mismatch,
                          "numeric feature " + domain.name() +
                              " compared with non-numeric '" + constant_ + "'");
    }
    for (std::size_t i = 0; i < domain.size(); ++i) {
      const Interval& cell = domain.intervals()[i];
      if (!constant_on(cell, op_, threshold_)) {
        throw SemanticError(SemanticErrorKind::threshold_not_induced,
                            "threshold " + constant_ + " splits interval " +
                                cell.label() + " of " + domain.name());
      }
      truth_[i] = compare(cell.representative, op_, threshold_) ? 1 : 0;
    }
    return;
  }
  if (op_ != Comparator::eq && op_ != Comparator::ne) {
    throw SemanticError(SemanticErrorKind::type_mismatch,
                        std::string("order comparator ") + to_string(op_) +
                            " on categorical feature " + domain.name());
  }
  auto index = domain.label_index(constant_);
  if (!index) {
    throw SemanticError(SemanticErrorKind::unknown_value,
                        "'" + constant_ + "' is not a value of " + domain.name());
  }
  for (std::size_t i = 0; i < domain.size(); ++i) {
    const bool equal = i == *index;
    truth_[i] = (op_ == Comparator::eq) == equal ? 1 : 0;
  }
}

std::vector<Cut> Literal::cuts() const {
  switch (op_) {
    case Comparator::le:
    case Comparator::gt: return {Cut{threshold_, CutSide::after}};
    case Comparator::lt:
    case Comparator::ge: return {Cut{threshold_, CutSide::before}};
    case Comparator::eq:
    case Comparator::ne:
      return {Cut{threshold_, CutSide::before}, Cut{threshold_, CutSide::after}};
  }
  return {};
}

// ---------------------------------------------------------------------------
// Rules

bool Rule::body_holds(const State& s) const {
  return std::all_of(body.begin(), body.end(),
                     [&](const Literal& l) { return l.holds(s); });
}

std::vector<std::size_t> Rule::features() const {
  std::vector<std::size_t> out;
  for (const Literal& l : body) out.push_back(l.feature());
  if (head) out.push_back(head->feature());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool Rule::mentions(std::size_t feature) const {
  if (head && head->feature() == feature) return true;
  return std::any_of(body.begin(), body.end(),
                     [&](const Literal& l) { return l.feature() == feature; });
}

bool eval_rule(const Rule& rule, const State& s) {
  if (rule.role == RuleRole::decision || !rule.head) return rule.body_holds(s);
  return !rule.body_holds(s) || rule.head->holds(s);
}

bool is_causally_consistent(const State& s, std::span<const Rule> causal) {
  return first_violated(s, causal) == nullptr;
}

bool satisfies_decision(const State& s, std::span<const Rule> decision) {
  return std::any_of(decision.begin(), decision.end(),
                     [&](const Rule& q) { return q.body_holds(s); });
}

const Rule* first_violated(const State& s, std::span<const Rule> causal) {
  for (const Rule& c : causal) {
    if (!eval_rule(c, s)) return &c;
  }
  return nullptr;
}

// ---------------------------------------------------------------------------
// ProblemSpec

namespace {

void bind_literal(Literal& literal, const std::vector<FeatureDomain>& domains,
                  const std::string& rule_id) {
  if (literal.feature() >= domains.size()) {
    throw SemanticError(SemanticErrorKind::undeclared_feature,
                        "rule " + rule_id + " refers to an undeclared feature");
  }
  literal.bind(domains[literal.feature()]);
}

void check_rules(std::vector<Rule>& rules, RuleRole role,
                 const std::vector<FeatureDomain>& domains,
                 std::unordered_set<std::string>& ids) {
  for (Rule& rule : rules) {
    if (!ids.insert(rule.id).second) {
      throw SemanticError(SemanticErrorKind::duplicate_declaration,
                          "rule id " + rule.id + " declared twice");
    }
    if (rule.role != role) {
      throw SemanticError(SemanticErrorKind::type_mismatch,
                          "rule " + rule.id + " listed under the wrong role");
    }
    if (role == RuleRole::decision && rule.head) {
      throw SemanticError(SemanticErrorKind::type_mismatch,
                          "decision rule " + rule.id + " has a head");
    }
    if (role == RuleRole::causal && !rule.head) {
      throw SemanticError(SemanticErrorKind::type_mismatch,
                          "causal rule " + rule.id + " has no head");
    }
    for (Literal& l : rule.body) bind_literal(l, domains, rule.id);
    if (rule.head) {
      bind_literal(*rule.head, domains, rule.id);
      for (const Literal& l : rule.body) {
        if (l.feature() == rule.head->feature()) {
          throw SemanticError(SemanticErrorKind::head_in_body,
                              "causal rule " + rule.id + " mentions its head feature " +
                                  domains[l.feature()].name() + " in its body");
        }
      }
    }
  }
}

}  // namespace

ProblemSpec::ProblemSpec(std::vector<FeatureDomain> domains, std::vector<Rule> causal,
                         std::vector<Rule> decision,
                         std::vector<PlausibilityConstraint> constraints, State initial,
                         std::optional<std::size_t> action_budget)
    : domains_(std::move(domains)),
      causal_(std::move(causal)),
      decision_(std::move(decision)),
      constraints_(std::move(constraints)),
      initial_(std::move(initial)),
      budget_(action_budget) {
  std::unordered_set<std::string> names;
  for (const FeatureDomain& d : domains_) {
    if (!names.insert(d.name()).second) {
      throw SemanticError(SemanticErrorKind::duplicate_declaration,
                          "feature " + d.name() + " declared twice");
    }
  }
  std::unordered_set<std::string> ids;
  check_rules(causal_, RuleRole::causal, domains_, ids);
  check_rules(decision_, RuleRole::decision, domains_, ids);

  std::vector<bool> constrained(domains_.size(), false);
  for (const PlausibilityConstraint& c : constraints_) {
    if (c.feature >= domains_.size()) {
      throw SemanticError(SemanticErrorKind::undeclared_feature,
                          "constraint on an undeclared feature");
    }
    if (constrained[c.feature]) {
      throw SemanticError(SemanticErrorKind::duplicate_declaration,
                          "second constraint on " + domains_[c.feature].name());
    }
    constrained[c.feature] = true;
    FeatureDomain& d = domains_[c.feature];
    switch (c.kind) {
      case ConstraintKind::immutable: d.set_mutable(false); break;
      case ConstraintKind::nondecreasing: d.set_monotonicity(Monotonicity::nondecreasing); break;
      case ConstraintKind::nonincreasing: d.set_monotonicity(Monotonicity::nonincreasing); break;
    }
  }

  if (budget_ && *budget_ == 0) {
    throw SemanticError(SemanticErrorKind::invalid_budget, "budget must be positive");
  }

  if (initial_.size() != domains_.size()) {
    throw SemanticError(SemanticErrorKind::incomplete_initial,
                        "initial state must give one value per feature");
  }
  for (std::size_t f = 0; f < domains_.size(); ++f) {
    const FeatureDomain& d = domains_[f];
    const FeatureValue& v = initial_[f];
    if (v.index >= d.size() ||
        (d.is_numeric() && !d.intervals()[v.index].contains(v.point))) {
      throw SemanticError(SemanticErrorKind::unknown_value,
                          "initial value of " + d.name() + " is outside its domain");
    }
  }
  if (const Rule* violated = first_violated(initial_, causal_)) {
    throw SemanticError(SemanticErrorKind::causally_inconsistent_initial,
                        "initial state violates causal rule " + violated->id);
  }
}

std::optional<std::size_t> ProblemSpec::feature_index(std::string_view name) const {
  for (std::size_t i = 0; i < domains_.size(); ++i) {
    if (domains_[i].name() == name) return i;
  }
  return std::nullopt;
}

ProblemSpec ProblemSpec::with_initial(State initial) const {
  // Domains already carry the mirrored constraints; the constructor
  // re-applies them idempotently.
  return ProblemSpec(domains_, causal_, decision_, constraints_, std::move(initial), budget_);
}

}  // namespace recourse
