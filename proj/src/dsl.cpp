#include "recourse/dsl.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "recourse/errors.hpp"

namespace recourse {

namespace {

enum class TokenKind { identifier, number, string, symbol, end };

struct Token {
  TokenKind kind = TokenKind::end;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_blank();
      Token t;
      t.line = line_;
      t.column = column_;
      if (pos_ >= text_.size()) {
        out.push_back(t);
        return out;
      }
      const char c = text_[pos_];
      if (is_ident_start(c)) {
        t.kind = TokenKind::identifier;
        while (pos_ < text_.size() && is_ident_char(text_[pos_])) t.text += advance();
      } else if (is_digit(c) || ((c == '-' || c == '+') && is_digit(peek(1)))) {
        t.kind = TokenKind::number;
        t.text += advance();
        while (pos_ < text_.size() && is_digit(text_[pos_])) t.text += advance();
        if (peek(0) == '.' && is_digit(peek(1))) {
          t.text += advance();
          while (pos_ < text_.size() && is_digit(text_[pos_])) t.text += advance();
        }
      } else if (c == '"') {
        t.kind = TokenKind::string;
        advance();
        for (;;) {
          if (pos_ >= text_.size() || text_[pos_] == '\n') {
            throw SyntaxError(line_, column_, "closing '\"'");
          }
          char d = advance();
          if (d == '"') break;
          if (d == '\\') {
            if (pos_ >= text_.size()) throw SyntaxError(line_, column_, "escaped character");
            d = advance();
          }
          t.text += d;
        }
      } else {
        t.kind = TokenKind::symbol;
        static constexpr std::string_view two[] = {":-", "!=", "=<", "<=", ">="};
        bool matched = false;
        for (std::string_view s : two) {
          if (text_.substr(pos_, 2) == s) {
            t.text = std::string(s);
            advance();
            advance();
            matched = true;
            break;
          }
        }
        if (!matched) {
          if (std::string_view(":.,{}[]=<>").find(c) == std::string_view::npos) {
            throw SyntaxError(line_, column_, "a token");
          }
          t.text = std::string(1, advance());
        }
      }
      out.push_back(std::move(t));
    }
  }

 private:
  char peek(std::size_t ahead) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  char advance() {
    const char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  void skip_blank() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

// Unresolved statements; feature names are bound after every declaration
// has been seen so statements may appear in any order.
struct RawLiteral {
  std::string feature;
  Comparator op = Comparator::eq;
  std::string constant;
  bool numeric_constant = false;
};

struct RawRule {
  std::string id;
  RuleRole role = RuleRole::decision;
  std::vector<RawLiteral> body;
  std::optional<RawLiteral> head;
};

struct RawFeature {
  std::string name;
  FeatureKind kind = FeatureKind::categorical;
  std::vector<std::string> labels;
  double lo = 0.0;
  double hi = 0.0;
};

struct RawAssignment {
  std::string feature;
  std::string value;
  bool numeric = false;
};

struct RawProgram {
  std::vector<RawFeature> features;
  std::vector<RawRule> rules;
  std::vector<std::pair<std::string, ConstraintKind>> constraints;
  std::optional<std::vector<RawAssignment>> initial;
  std::optional<std::size_t> budget;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  RawProgram run() {
    RawProgram program;
    while (peek().kind != TokenKind::end) statement(program);
    return program;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }

  [[noreturn]] void fail(const std::string& expected) const {
    throw SyntaxError(peek().line, peek().column, expected);
  }

  Token take() { return tokens_[pos_++]; }

  bool at_symbol(std::string_view s) const {
    return peek().kind == TokenKind::symbol && peek().text == s;
  }

  void expect_symbol(std::string_view s) {
    if (!at_symbol(s)) fail("'" + std::string(s) + "'");
    take();
  }

  std::string expect_identifier(const std::string& what) {
    if (peek().kind != TokenKind::identifier) fail(what);
    return take().text;
  }

  void expect_keyword(std::string_view keyword) {
    if (peek().kind != TokenKind::identifier || peek().text != keyword) {
      fail("'" + std::string(keyword) + "'");
    }
    take();
  }

  double expect_number() {
    if (peek().kind != TokenKind::number) fail("a number");
    auto value = parse_number(peek().text);
    if (!value) fail("a number");
    take();
    return *value;
  }

  // identifier | number | string; returns (text, is_number)
  std::pair<std::string, bool> value() {
    switch (peek().kind) {
      case TokenKind::identifier:
      case TokenKind::string: return {take().text, false};
      case TokenKind::number: return {take().text, true};
      default: fail("a value");
    }
  }

  Comparator comparator() {
    if (peek().kind == TokenKind::symbol) {
      const std::string& s = peek().text;
      std::optional<Comparator> op;
      if (s == "=") op = Comparator::eq;
      else if (s == "!=") op = Comparator::ne;
      else if (s == "=<" || s == "<=") op = Comparator::le;
      else if (s == "<") op = Comparator::lt;
      else if (s == ">=") op = Comparator::ge;
      else if (s == ">") op = Comparator::gt;
      if (op) {
        take();
        return *op;
      }
    }
    fail("a comparator (=, !=, =<, <, >=, >)");
  }

  RawLiteral literal() {
    RawLiteral lit;
    lit.feature = expect_identifier("a feature name");
    lit.op = comparator();
    auto [text, numeric] = value();
    lit.constant = std::move(text);
    lit.numeric_constant = numeric;
    return lit;
  }

  std::vector<RawLiteral> body() {
    std::vector<RawLiteral> out{literal()};
    while (at_symbol(",")) {
      take();
      out.push_back(literal());
    }
    return out;
  }

  void statement(RawProgram& program) {
    const std::string keyword = expect_identifier(
        "a statement (feature, decision, causal, constraint, initial, budget)");
    if (keyword == "feature") {
      RawFeature f;
      f.name = expect_identifier("a feature name");
      expect_symbol(":");
      const std::string kind = expect_identifier("'categorical' or 'numeric'");
      if (kind == "categorical") {
        expect_symbol("{");
        f.labels.push_back(value().first);
        while (at_symbol(",")) {
          take();
          f.labels.push_back(value().first);
        }
        expect_symbol("}");
      } else if (kind == "numeric") {
        f.kind = FeatureKind::numeric;
        expect_symbol("[");
        f.lo = expect_number();
        expect_symbol(",");
        f.hi = expect_number();
        expect_symbol("]");
      } else {
        --pos_;
        fail("'categorical' or 'numeric'");
      }
      program.features.push_back(std::move(f));
    } else if (keyword == "decision") {
      RawRule r;
      r.id = expect_identifier("a rule id");
      r.role = RuleRole::decision;
      expect_symbol(":-");
      r.body = body();
      program.rules.push_back(std::move(r));
    } else if (keyword == "causal") {
      RawRule r;
      r.id = expect_identifier("a rule id");
      r.role = RuleRole::causal;
      expect_symbol(":");
      r.head = literal();
      expect_symbol(":-");
      r.body = body();
      program.rules.push_back(std::move(r));
    } else if (keyword == "constraint") {
      const std::string kind =
          expect_identifier("'immutable', 'nondecreasing' or 'nonincreasing'");
      ConstraintKind k;
      if (kind == "immutable") k = ConstraintKind::immutable;
      else if (kind == "nondecreasing") k = ConstraintKind::nondecreasing;
      else if (kind == "nonincreasing") k = ConstraintKind::nonincreasing;
      else {
        --pos_;
        fail("'immutable', 'nondecreasing' or 'nonincreasing'");
      }
      program.constraints.emplace_back(expect_identifier("a feature name"), k);
    } else if (keyword == "initial") {
      if (program.initial) {
        throw SemanticError(SemanticErrorKind::duplicate_declaration,
                            "second initial block");
      }
      std::vector<RawAssignment> assignments;
      expect_symbol("{");
      for (;;) {
        RawAssignment a;
        a.feature = expect_identifier("a feature name");
        expect_symbol("=");
        auto [text, numeric] = value();
        a.value = std::move(text);
        a.numeric = numeric;
        assignments.push_back(std::move(a));
        if (!at_symbol(",")) break;
        take();
      }
      expect_symbol("}");
      program.initial = std::move(assignments);
    } else if (keyword == "budget") {
      if (peek().kind != TokenKind::number || peek().text.find_first_of(".-") != std::string::npos) {
        fail("a positive integer");
      }
      program.budget = std::stoull(take().text);
    } else {
      --pos_;
      fail("a statement (feature, decision, causal, constraint, initial, budget)");
    }
    expect_symbol(".");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

ProblemSpec resolve(const RawProgram& program) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < program.features.size(); ++i) {
    if (!index.emplace(program.features[i].name, i).second) {
      throw SemanticError(SemanticErrorKind::duplicate_declaration,
                          "feature " + program.features[i].name + " declared twice");
    }
  }
  auto lookup = [&](const std::string& name) {
    auto it = index.find(name);
    if (it == index.end()) {
      throw SemanticError(SemanticErrorKind::undeclared_feature, "feature " + name);
    }
    return it->second;
  };

  // Thresholds per numeric feature, gathered from every literal.
  std::vector<std::vector<Cut>> cuts(program.features.size());
  std::vector<std::vector<double>> numbers(program.features.size());
  auto collect = [&](const RawLiteral& lit) {
    const std::size_t f = lookup(lit.feature);
    if (program.features[f].kind != FeatureKind::numeric) return;
    if (!lit.numeric_constant) {
      throw SemanticError(SemanticErrorKind::type_mismatch,
                          "numeric feature " + lit.feature + " compared with '" +
                              lit.constant + "'");
    }
    Literal probe(f, lit.op, lit.constant);
    for (const Cut& c : probe.cuts()) cuts[f].push_back(c);
    numbers[f].push_back(probe.threshold());
  };
  for (const RawRule& r : program.rules) {
    for (const RawLiteral& l : r.body) collect(l);
    if (r.head) collect(*r.head);
  }

  std::vector<FeatureDomain> domains;
  for (std::size_t i = 0; i < program.features.size(); ++i) {
    const RawFeature& f = program.features[i];
    if (f.kind == FeatureKind::categorical) {
      domains.push_back(FeatureDomain::categorical(f.name, f.labels));
    } else {
      numbers[i].push_back(f.lo);
      numbers[i].push_back(f.hi);
      auto cells = induce_intervals(f.name, cuts[i], f.lo, f.hi, decimal_step(numbers[i]));
      domains.push_back(FeatureDomain::numeric(f.name, f.lo, f.hi, std::move(cells)));
    }
  }

  std::vector<Rule> causal;
  std::vector<Rule> decision;
  for (const RawRule& r : program.rules) {
    Rule rule;
    rule.id = r.id;
    rule.role = r.role;
    for (const RawLiteral& l : r.body) rule.body.emplace_back(lookup(l.feature), l.op, l.constant);
    if (r.head) rule.head = Literal(lookup(r.head->feature), r.head->op, r.head->constant);
    (r.role == RuleRole::causal ? causal : decision).push_back(std::move(rule));
  }

  std::vector<PlausibilityConstraint> constraints;
  for (const auto& [name, kind] : program.constraints) {
    constraints.push_back(PlausibilityConstraint{lookup(name), kind});
  }

  if (!program.initial) {
    throw SemanticError(SemanticErrorKind::incomplete_initial, "no initial block");
  }
  std::vector<std::optional<FeatureValue>> values(domains.size());
  for (const RawAssignment& a : *program.initial) {
    const std::size_t f = lookup(a.feature);
    if (values[f]) {
      throw SemanticError(SemanticErrorKind::duplicate_declaration,
                          "feature " + a.feature + " assigned twice in initial block");
    }
    const FeatureDomain& d = domains[f];
    FeatureValue v;
    if (d.is_numeric()) {
      auto x = a.numeric ? parse_number(a.value) : std::nullopt;
      if (!x) {
        throw SemanticError(SemanticErrorKind::type_mismatch,
                            "numeric feature " + a.feature + " given '" + a.value + "'");
      }
      auto cell = d.interval_index(*x);
      if (!cell) {
        throw SemanticError(SemanticErrorKind::unknown_value,
                            a.value + " is outside the range of " + a.feature);
      }
      v.index = static_cast<std::uint32_t>(*cell);
      v.point = *x;
    } else {
      auto label = d.label_index(a.value);
      if (!label) {
        throw SemanticError(SemanticErrorKind::unknown_value,
                            "'" + a.value + "' is not a value of " + a.feature);
      }
      v.index = static_cast<std::uint32_t>(*label);
    }
    values[f] = v;
  }
  std::vector<FeatureValue> initial;
  for (std::size_t f = 0; f < domains.size(); ++f) {
    if (!values[f]) {
      throw SemanticError(SemanticErrorKind::incomplete_initial,
                          "initial block misses feature " + domains[f].name());
    }
    initial.push_back(*values[f]);
  }

  return ProblemSpec(std::move(domains), std::move(causal), std::move(decision),
                     std::move(constraints), State(std::move(initial)), program.budget);
}

bool is_bare_identifier(const std::string& s) {
  if (s.empty() || !is_ident_start(s.front())) return false;
  for (char c : s) {
    if (!is_ident_char(c)) return false;
  }
  return true;
}

bool is_bare_number(const std::string& s) {
  try {
    auto tokens = Lexer(s).run();
    return tokens.size() == 2 && tokens[0].kind == TokenKind::number && tokens[0].text == s;
  } catch (const SyntaxError&) {
    return false;
  }
}

std::string quote_label(const std::string& s) {
  if (is_bare_identifier(s) || is_bare_number(s)) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string print_literal(const ProblemSpec& p, const Literal& l) {
  const FeatureDomain& d = p.domain(l.feature());
  std::string constant = d.is_numeric() ? l.constant() : quote_label(l.constant());
  return d.name() + " " + to_string(l.op()) + " " + constant;
}

std::string print_body(const ProblemSpec& p, const Rule& r) {
  std::string out;
  for (std::size_t i = 0; i < r.body.size(); ++i) {
    if (i) out += ", ";
    out += print_literal(p, r.body[i]);
  }
  return out;
}

}  // namespace

ProblemSpec parse_problem(std::string_view text) {
  Parser parser(Lexer(text).run());
  return resolve(parser.run());
}

std::string print_problem(const ProblemSpec& p) {
  std::ostringstream out;
  for (const FeatureDomain& d : p.domains()) {
    out << "feature " << d.name() << ": ";
    if (d.is_numeric()) {
      out << "numeric [" << format_number(d.range_lo()) << ", "
          << format_number(d.range_hi()) << "].\n";
    } else {
      out << "categorical {";
      for (std::size_t i = 0; i < d.labels().size(); ++i) {
        out << (i ? ", " : "") << quote_label(d.labels()[i]);
      }
      out << "}.\n";
    }
  }
  for (const PlausibilityConstraint& c : p.constraints()) {
    out << "constraint " << to_string(c.kind) << " " << p.domain(c.feature).name() << ".\n";
  }
  for (const Rule& r : p.causal_rules()) {
    out << "causal " << r.id << ": " << print_literal(p, *r.head) << " :- "
        << print_body(p, r) << ".\n";
  }
  for (const Rule& r : p.decision_rules()) {
    out << "decision " << r.id << " :- " << print_body(p, r) << ".\n";
  }
  out << "initial {";
  for (std::size_t f = 0; f < p.feature_count(); ++f) {
    const FeatureDomain& d = p.domain(f);
    out << (f ? ", " : " ") << d.name() << " = ";
    if (d.is_numeric()) {
      out << format_number(p.initial()[f].point);
    } else {
      out << quote_label(d.labels()[p.initial()[f].index]);
    }
  }
  out << " }.\n";
  if (p.action_budget()) out << "budget " << *p.action_budget() << ".\n";
  return out.str();
}

ProblemSpec load_problem_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open problem file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_problem(buffer.str());
}

}  // namespace recourse
