#include <algorithm>
#include <array>
#include <random>

#include "recourse/ingest.hpp"
#include "recourse/intervals.hpp"
#include "recourse/oracle.hpp"

namespace recourse::ingest {

namespace {

constexpr std::array<double, 3> kThresholds = {2.0, 5.0, 8.0};

class Generator {
 public:
  Generator(std::uint64_t seed, const RandomInstanceOptions& options)
      : rng_(seed), options_(options) {}

  std::size_t pick(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }

  std::vector<FeatureDomain> domains() {
    std::vector<FeatureDomain> out;
    const std::size_t n = pick(1, std::max<std::size_t>(1, options_.max_features));
    for (std::size_t f = 0; f < n; ++f) {
      const std::string name = "f" + std::to_string(f);
      if (options_.max_values >= 4 && chance(0.25)) {
        out.push_back(FeatureDomain::numeric(
            name, 0, 10, induce_intervals(name, std::span<const double>(kThresholds), 0, 10)));
      } else {
        const std::size_t k = pick(2, std::max<std::size_t>(2, options_.max_values));
        std::vector<std::string> labels;
        for (std::size_t v = 0; v < k; ++v) labels.push_back("v" + std::to_string(v));
        out.push_back(FeatureDomain::categorical(name, std::move(labels)));
      }
    }
    return out;
  }

  Literal literal(const std::vector<FeatureDomain>& domains, std::size_t f) {
    const FeatureDomain& d = domains[f];
    if (d.is_numeric()) {
      const double t = kThresholds[pick(0, kThresholds.size() - 1)];
      return Literal(f, chance(0.5) ? Comparator::le : Comparator::gt, format_number(t));
    }
    const std::string& label = d.labels()[pick(0, d.size() - 1)];
    return Literal(f, chance(0.8) ? Comparator::eq : Comparator::ne, label);
  }

  // Body over distinct features, none equal to `excluded`.
  std::vector<Literal> body(const std::vector<FeatureDomain>& domains,
                            std::optional<std::size_t> excluded) {
    std::vector<std::size_t> pool;
    for (std::size_t f = 0; f < domains.size(); ++f) {
      if (f != excluded) pool.push_back(f);
    }
    std::shuffle(pool.begin(), pool.end(), rng_);
    const std::size_t len = std::min<std::size_t>(pool.size(), pick(1, 2));
    std::vector<Literal> out;
    for (std::size_t i = 0; i < len; ++i) out.push_back(literal(domains, pool[i]));
    std::sort(out.begin(), out.end(),
              [](const Literal& a, const Literal& b) { return a.feature() < b.feature(); });
    return out;
  }

  std::vector<Rule> causal(const std::vector<FeatureDomain>& domains) {
    std::vector<Rule> out;
    if (domains.size() < 2) return out;
    const std::size_t n = pick(0, options_.max_causal_rules);
    for (std::size_t i = 0; i < n; ++i) {
      Rule r;
      r.id = "c" + std::to_string(i + 1);
      r.role = RuleRole::causal;
      const std::size_t head = pick(0, domains.size() - 1);
      r.head = literal(domains, head);
      r.body = body(domains, head);
      out.push_back(std::move(r));
    }
    return out;
  }

  std::vector<Rule> decision(const std::vector<FeatureDomain>& domains) {
    std::vector<Rule> out;
    const std::size_t n = pick(1, std::max<std::size_t>(1, options_.max_decision_rules));
    for (std::size_t i = 0; i < n; ++i) {
      Rule r;
      r.id = "d" + std::to_string(i + 1);
      r.role = RuleRole::decision;
      r.body = body(domains, std::nullopt);
      out.push_back(std::move(r));
    }
    return out;
  }

  std::vector<PlausibilityConstraint> constraints(std::size_t features) {
    std::vector<PlausibilityConstraint> out;
    for (std::size_t f = 0; f < features; ++f) {
      const double roll = std::uniform_real_distribution<double>(0, 1)(rng_);
      if (roll < 0.15) out.push_back({f, ConstraintKind::immutable});
      else if (roll < 0.25) out.push_back({f, ConstraintKind::nondecreasing});
      else if (roll < 0.35) out.push_back({f, ConstraintKind::nonincreasing});
    }
    return out;
  }

  template <typename T>
  const T& choose(const std::vector<T>& items) {
    return items[pick(0, items.size() - 1)];
  }

 private:
  std::mt19937_64 rng_;
  RandomInstanceOptions options_;
};

std::vector<Rule> bound(std::vector<Rule> rules, const std::vector<FeatureDomain>& domains) {
  for (Rule& r : rules) {
    for (Literal& l : r.body) l.bind(domains[l.feature()]);
    if (r.head) r.head->bind(domains[r.head->feature()]);
  }
  return rules;
}

}  // namespace

ProblemSpec random_problem(std::uint64_t seed, const RandomInstanceOptions& options) {
  Generator gen(seed, options);
  for (;;) {
    auto domains = gen.domains();
    auto causal = gen.causal(domains);
    auto decision = gen.decision(domains);
    auto constraints = gen.constraints(domains.size());

    const auto causal_bound = bound(causal, domains);
    const auto decision_bound = bound(decision, domains);
    std::vector<State> consistent;
    std::vector<State> rejected;
    oracle::for_each_state(oracle::StateIndexer(domains), [&](State s) {
      if (!is_causally_consistent(s, causal_bound)) return;
      if (satisfies_decision(s, decision_bound)) rejected.push_back(s);
      consistent.push_back(std::move(s));
    });
    if (consistent.empty()) continue;
    State initial = gen.choose(rejected.empty() ? consistent : rejected);
    return ProblemSpec(std::move(domains), std::move(causal), std::move(decision),
                       std::move(constraints), std::move(initial));
  }
}

}  // namespace recourse::ingest
