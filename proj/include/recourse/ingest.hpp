#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "recourse/rule_model.hpp"

namespace recourse::ingest {

struct Column {
  std::string name;
  FeatureKind kind = FeatureKind::categorical;
};

struct DatasetSchema {
  std::vector<Column> columns;
  std::string label_column;
  /// Value of the label column that denotes the desired outcome.
  std::string positive_label;

  /// Throws SchemaMismatch on duplicate names or a label column that is not
  /// among the columns.
  void validate() const;
  const Column* find(std::string_view name) const;

  /// One column per feature of the problem, plus an optional categorical
  /// label column.
  static DatasetSchema for_problem(const ProblemSpec& problem, std::string label_column = {},
                                   std::string positive_label = {});
};

using Cell = std::variant<std::string, double>;
using Record = std::map<std::string, Cell, std::less<>>;

enum class RowPolicy { skip, abort };

struct RowIssue {
  std::size_t line = 0;
  std::string message;
};

struct LoadResult {
  std::vector<Record> records;
  /// Rows dropped under RowPolicy::skip.
  std::vector<RowIssue> skipped;
};

/// RFC-4180 text with a header row. Throws SchemaMismatch when the header
/// does not name exactly the schema's columns, CsvParseError(line) for a
/// malformed row under RowPolicy::abort.
LoadResult parse_csv(std::string_view text, const DatasetSchema& schema,
                     RowPolicy policy = RowPolicy::abort);

/// Throws IoError when the file cannot be read.
LoadResult load_csv(const std::string& path, const DatasetSchema& schema,
                    RowPolicy policy = RowPolicy::abort);

void write_csv(std::ostream& out, const DatasetSchema& schema, const std::vector<Record>& records);

/// Numeric cells land in their interval (the cell value is kept as the
/// point); categorical cells must be labels of the domain. The result must
/// satisfy every causal rule.
State record_to_state(const Record& record, const ProblemSpec& problem);

/// A changed feature and the label of its new value.
using GoldenChange = std::pair<std::string, std::string>;

struct Scenario {
  std::string name;
  ProblemSpec problem;
  /// Expected changes per transition of the candidate path; empty when no
  /// reference path is known.
  std::vector<std::vector<GoldenChange>> golden_path;
};

std::vector<std::string> builtin_scenario_names();

/// Rule text of a builtin scenario. Throws UnknownScenario.
std::string_view builtin_scenario_source(std::string_view name);

/// Throws UnknownScenario.
Scenario builtin_scenario(std::string_view name);

struct RandomInstanceOptions {
  std::size_t max_features = 5;
  std::size_t max_values = 4;
  std::size_t max_causal_rules = 4;
  std::size_t max_decision_rules = 3;
};

/// Seeded random problem within the option bounds. The initial state is
/// drawn from the causally consistent states, preferring ones where a
/// decision rule fires.
ProblemSpec random_problem(std::uint64_t seed, const RandomInstanceOptions& options = {});

}  // namespace recourse::ingest
