#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace recourse {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::size_t column, std::string expected)
      : Error("syntax error at " + std::to_string(line) + ":" +
              std::to_string(column) + ": expected " + expected),
        line_(line),
        column_(column),
        expected_(std::move(expected)) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string expected_;
};

enum class SemanticErrorKind {
  undeclared_feature,
  type_mismatch,
  causally_inconsistent_initial,
  head_in_body,
  duplicate_declaration,
  unknown_value,
  incomplete_initial,
  threshold_not_induced,
  invalid_budget,
};

const char* to_string(SemanticErrorKind kind);

class SemanticError : public Error {
 public:
  SemanticError(SemanticErrorKind kind, const std::string& detail)
      : Error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

  SemanticErrorKind kind() const { return kind_; }

 private:
  SemanticErrorKind kind_;
};

// Raised by apply_action when the action is not permitted in the state.
class NotApplicable : public Error {
 public:
  using Error::Error;
};

class EmptySequence : public Error {
 public:
  EmptySequence() : Error("operation requires a nonempty sequence") {}
};

class CapExceeded : public Error {
 public:
  CapExceeded(std::size_t required, std::size_t cap)
      : Error("state space of " + std::to_string(required) +
              " states exceeds the enumeration cap of " + std::to_string(cap)),
        required_(required),
        cap_(cap) {}

  std::size_t required() const { return required_; }
  std::size_t cap() const { return cap_; }

 private:
  std::size_t required_;
  std::size_t cap_;
};

class NotASolution : public Error {
 public:
  NotASolution() : Error("candidate paths exist only for successful traces") {}
};

class UnknownScenario : public Error {
 public:
  explicit UnknownScenario(const std::string& name)
      : Error("unknown scenario '" + name + "'") {}
};

class EmptyRange : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class SchemaMismatch : public Error {
 public:
  using Error::Error;
};

class CsvParseError : public Error {
 public:
  CsvParseError(std::size_t line, const std::string& detail)
      : Error("line " + std::to_string(line) + ": " + detail), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class OutOfDomain : public Error {
 public:
  OutOfDomain(const std::string& feature, const std::string& value)
      : Error("value '" + value + "' is outside the domain of " + feature),
        feature_(feature) {}

  const std::string& feature() const { return feature_; }

 private:
  std::string feature_;
};

class CausallyInconsistentRecord : public Error {
 public:
  explicit CausallyInconsistentRecord(const std::string& rule)
      : Error("record violates causal rule " + rule) {}
};

}  // namespace recourse
