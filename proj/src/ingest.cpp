#include "recourse/ingest.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "recourse/errors.hpp"

namespace recourse::ingest {

void DatasetSchema::validate() const {
  std::set<std::string> names;
  for (const Column& c : columns) {
    if (!names.insert(c.name).second) throw SchemaMismatch("duplicate column " + c.name);
  }
  if (!label_column.empty() && !names.contains(label_column)) {
    throw SchemaMismatch("label column " + label_column + " is not a column");
  }
}

const Column* DatasetSchema::find(std::string_view name) const {
  for (const Column& c : columns) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

DatasetSchema DatasetSchema::for_problem(const ProblemSpec& problem, std::string label_column,
                                         std::string positive_label) {
  DatasetSchema schema;
  for (const FeatureDomain& d : problem.domains()) schema.columns.push_back({d.name(), d.kind()});
  if (!label_column.empty()) schema.columns.push_back({label_column, FeatureKind::categorical});
  schema.label_column = std::move(label_column);
  schema.positive_label = std::move(positive_label);
  schema.validate();
  return schema;
}

namespace {

struct CsvRow {
  std::vector<std::string> fields;
  std::size_t line = 0;
};

// Splits RFC-4180 text into rows. Quoted fields may contain commas, quotes
// (doubled) and line breaks.
std::vector<CsvRow> split_rows(std::string_view text) {
  std::vector<CsvRow> rows;
  CsvRow row;
  std::string field;
  std::size_t line = 1;
  row.line = line;
  bool quoted = false;
  bool field_started = false;
  auto end_field = [&] {
    row.fields.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_row = [&] {
    end_field();
    const bool blank = row.fields.size() == 1 && row.fields[0].empty();
    if (!blank) rows.push_back(std::move(row));
    row = CsvRow{};
    row.line = line;
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    if (c == '"' && !field_started) {
      quoted = true;
      field_started = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
      continue;
    } else if (c == '\n') {
      ++line;
      end_row();
    } else {
      field += c;
      field_started = true;
    }
  }
  if (quoted) throw CsvParseError(row.line, "unterminated quoted field");
  if (!field.empty() || !row.fields.empty()) end_row();
  return rows;
}

std::string quote_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

LoadResult parse_csv(std::string_view text, const DatasetSchema& schema, RowPolicy policy) {
  schema.validate();
  auto rows = split_rows(text);
  if (rows.empty()) throw SchemaMismatch("missing header row");
  const CsvRow& header = rows.front();
  std::vector<const Column*> layout;
  std::set<std::string> seen;
  for (const std::string& name : header.fields) {
    const Column* column = schema.find(name);
    if (!column) throw SchemaMismatch("unexpected column " + name);
    if (!seen.insert(name).second) throw SchemaMismatch("column " + name + " repeated");
    layout.push_back(column);
  }
  if (layout.size() != schema.columns.size()) {
    throw SchemaMismatch("header lacks some schema columns");
  }

  LoadResult result;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const CsvRow& row = rows[r];
    try {
      if (row.fields.size() != layout.size()) {
        throw CsvParseError(row.line, "expected " + std::to_string(layout.size()) +
                                          " fields, found " + std::to_string(row.fields.size()));
      }
      Record record;
      for (std::size_t k = 0; k < layout.size(); ++k) {
        const Column& column = *layout[k];
        if (column.kind == FeatureKind::numeric) {
          auto value = parse_number(row.fields[k]);
          if (!value) {
            throw CsvParseError(row.line, "'" + row.fields[k] + "' in numeric column " +
                                              column.name + " is not a number");
          }
          record.emplace(column.name, *value);
        } else {
          record.emplace(column.name, row.fields[k]);
        }
      }
      result.records.push_back(std::move(record));
    } catch (const CsvParseError& e) {
      if (policy == RowPolicy::abort) throw;
      result.skipped.push_back(RowIssue{e.line(), e.what()});
    }
  }
  return result;
}

LoadResult load_csv(const std::string& path, const DatasetSchema& schema, RowPolicy policy) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_csv(buffer.str(), schema, policy);
}

void write_csv(std::ostream& out, const DatasetSchema& schema, const std::vector<Record>& records) {
  for (std::size_t k = 0; k < schema.columns.size(); ++k) {
    out << (k ? "," : "") << quote_field(schema.columns[k].name);
  }
  out << "\n";
  for (const Record& record : records) {
    for (std::size_t k = 0; k < schema.columns.size(); ++k) {
      if (k) out << ",";
      auto it = record.find(schema.columns[k].name);
      if (it == record.end()) continue;
      if (const double* x = std::get_if<double>(&it->second)) {
        out << format_number(*x);
      } else {
        out << quote_field(std::get<std::string>(it->second));
      }
    }
    out << "\n";
  }
}

State record_to_state(const Record& record, const ProblemSpec& problem) {
  std::vector<FeatureValue> values;
  for (const FeatureDomain& d : problem.domains()) {
    auto it = record.find(d.name());
    if (it == record.end()) throw SchemaMismatch("record has no value for " + d.name());
    FeatureValue v;
    if (d.is_numeric()) {
      const double* x = std::get_if<double>(&it->second);
      std::optional<double> parsed;
      if (x) parsed = *x;
      else parsed = parse_number(std::get<std::string>(it->second));
      if (!parsed) throw OutOfDomain(d.name(), std::get<std::string>(it->second));
      auto cell = d.interval_index(*parsed);
      if (!cell) throw OutOfDomain(d.name(), format_number(*parsed));
      v.index = static_cast<std::uint32_t>(*cell);
      v.point = *parsed;
    } else {
      std::string label;
      if (const double* x = std::get_if<double>(&it->second)) label = format_number(*x);
      else label = std::get<std::string>(it->second);
      auto index = d.label_index(label);
      if (!index) throw OutOfDomain(d.name(), label);
      v.index = static_cast<std::uint32_t>(*index);
    }
    values.push_back(v);
  }
  State s(std::move(values));
  if (const Rule* violated = first_violated(s, problem.causal_rules())) {
    throw CausallyInconsistentRecord(violated->id);
  }
  return s;
}

}  // namespace recourse::ingest
