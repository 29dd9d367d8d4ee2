#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "recourse/intervals.hpp"

namespace recourse {

enum class FeatureKind { categorical, numeric };
enum class Monotonicity { none, nondecreasing, nonincreasing };

/// A feature's finite value set: category labels, or the interval cells of
/// a numeric range. Values are addressed by their position in that order.
class FeatureDomain {
 public:
  static FeatureDomain categorical(std::string name,
                                   std::vector<std::string> labels);
  static FeatureDomain numeric(std::string name, double lo, double hi,
                               std::vector<Interval> intervals);

  const std::string& name() const { return name_; }
  FeatureKind kind() const { return kind_; }
  bool is_numeric() const { return kind_ == FeatureKind::numeric; }
  std::size_t size() const;

  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<Interval>& intervals() const { return intervals_; }
  double range_lo() const { return lo_; }
  double range_hi() const { return hi_; }

  std::optional<std::size_t> label_index(std::string_view label) const;
  std::optional<std::size_t> interval_index(double x) const;

  /// Category label, or the interval's mathematical label.
  std::string value_label(std::size_t index) const;

  bool is_mutable() const { return mutable_; }
  Monotonicity monotonicity() const { return monotonicity_; }
  void set_mutable(bool value) { mutable_ = value; }
  void set_monotonicity(Monotonicity value) { monotonicity_ = value; }

  bool operator==(const FeatureDomain&) const = default;

 private:
  std::string name_;
  FeatureKind kind_ = FeatureKind::categorical;
  std::vector<std::string> labels_;
  std::vector<Interval> intervals_;
  double lo_ = 0.0;
  double hi_ = 0.0;
  bool mutable_ = true;
  Monotonicity monotonicity_ = Monotonicity::none;
};

/// A feature's value inside a state. `index` addresses the domain; for
/// numeric features `point` is a concrete number inside that interval.
/// Equality looks at the index only.
struct FeatureValue {
  std::uint32_t index = 0;
  double point = 0.0;

  friend bool operator==(const FeatureValue& a, const FeatureValue& b) {
    return a.index == b.index;
  }
};

/// Domain value `index` of `domain` with its canonical representative.
FeatureValue canonical_value(const FeatureDomain& domain, std::size_t index);

class State {
 public:
  State() = default;
  explicit State(std::vector<FeatureValue> values) : values_(std::move(values)) {}

  std::size_t size() const { return values_.size(); }
  const FeatureValue& operator[](std::size_t feature) const { return values_[feature]; }
  std::span<const FeatureValue> values() const { return values_; }

  State with(std::size_t feature, FeatureValue value) const;

  std::size_t hash() const;

  friend bool operator==(const State& a, const State& b) { return a.values_ == b.values_; }

 private:
  std::vector<FeatureValue> values_;
};

struct StateHash {
  std::size_t operator()(const State& s) const { return s.hash(); }
};

enum class Comparator { eq, ne, le, lt, ge, gt };

const char* to_string(Comparator op);

/// `<feature> <op> <constant>`. After binding to its domain the literal
/// carries a truth table over the feature's values, so evaluation is a
/// lookup.
class Literal {
 public:
  Literal() = default;
  Literal(std::size_t feature, Comparator op, std::string constant);

  std::size_t feature() const { return feature_; }
  Comparator op() const { return op_; }
  /// The constant exactly as written (category label or decimal text).
  const std::string& constant() const { return constant_; }
  /// Numeric value of the constant; meaningful for numeric features only.
  double threshold() const { return threshold_; }

  /// Fill the truth table. Throws SemanticError on kind mismatches, unknown
  /// labels, or thresholds that are not boundaries of the partition.
  void bind(const FeatureDomain& domain);
  bool is_bound() const { return !truth_.empty(); }

  bool holds(std::size_t value_index) const { return truth_[value_index] != 0; }
  bool holds(const State& s) const { return holds(s[feature_].index); }

  /// The cut this literal induces on a numeric range (two for = and !=).
  std::vector<Cut> cuts() const;

  bool operator==(const Literal& other) const {
    return feature_ == other.feature_ && op_ == other.op_ &&
           constant_ == other.constant_;
  }

 private:
  std::size_t feature_ = 0;
  Comparator op_ = Comparator::eq;
  std::string constant_;
  double threshold_ = 0.0;
  std::vector<char> truth_;
};

enum class RuleRole { decision, causal };

struct Rule {
  std::string id;
  RuleRole role = RuleRole::decision;
  std::vector<Literal> body;
  std::optional<Literal> head;

  bool body_holds(const State& s) const;
  /// Features read or written by the rule.
  std::vector<std::size_t> features() const;
  bool mentions(std::size_t feature) const;

  bool operator==(const Rule&) const = default;
};

/// Decision rule: the body holds. Causal rule: body false or head true.
bool eval_rule(const Rule& rule, const State& s);

bool is_causally_consistent(const State& s, std::span<const Rule> causal);

bool satisfies_decision(const State& s, std::span<const Rule> decision);

/// First causal rule violated by `s`, if any.
const Rule* first_violated(const State& s, std::span<const Rule> causal);

enum class ConstraintKind { immutable, nondecreasing, nonincreasing };

const char* to_string(ConstraintKind kind);

struct PlausibilityConstraint {
  std::size_t feature = 0;
  ConstraintKind kind = ConstraintKind::immutable;

  bool operator==(const PlausibilityConstraint&) const = default;
};

/// A validated planning problem. The constructor binds every literal,
/// mirrors constraints into the domains and rejects initial states that
/// violate a causal rule.
class ProblemSpec {
 public:
  ProblemSpec(std::vector<FeatureDomain> domains, std::vector<Rule> causal,
              std::vector<Rule> decision,
              std::vector<PlausibilityConstraint> constraints, State initial,
              std::optional<std::size_t> action_budget = std::nullopt);

  const std::vector<FeatureDomain>& domains() const { return domains_; }
  const FeatureDomain& domain(std::size_t feature) const { return domains_[feature]; }
  std::size_t feature_count() const { return domains_.size(); }
  const std::vector<Rule>& causal_rules() const { return causal_; }
  const std::vector<Rule>& decision_rules() const { return decision_; }
  const std::vector<PlausibilityConstraint>& constraints() const { return constraints_; }
  const State& initial() const { return initial_; }
  /// Budget declared in the problem text, if any.
  std::optional<std::size_t> action_budget() const { return budget_; }

  std::optional<std::size_t> feature_index(std::string_view name) const;

  /// Same rules and domains, different starting individual.
  ProblemSpec with_initial(State initial) const;

  bool operator==(const ProblemSpec&) const = default;

 private:
  std::vector<FeatureDomain> domains_;
  std::vector<Rule> causal_;
  std::vector<Rule> decision_;
  std::vector<PlausibilityConstraint> constraints_;
  State initial_;
  std::optional<std::size_t> budget_;
};

/// Human-readable rendering of one feature value of a state.
std::string display_value(const FeatureDomain& domain, const FeatureValue& value);

}  // namespace recourse
