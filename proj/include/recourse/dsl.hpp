#pragma once

#include <string>
#include <string_view>

#include "recourse/rule_model.hpp"

namespace recourse {

// Line-oriented rule language, '%' starts a comment:
//
//   feature <name>: categorical {v1, v2, ...}.
//   feature <name>: numeric [lo, hi].
//   decision <id> :- <lit>, <lit>, ... .
//   causal <id>: <head-lit> :- <lit>, ... .
//   constraint immutable|nondecreasing|nonincreasing <feature>.
//   initial { <feature> = <value>, ... }.
//   budget <n>.
//
// Literals are `<feature> <op> <const>` with op in {=, !=, =<, <, >=, >}.
// Category labels are identifiers, decimal numbers or double-quoted strings.
// Numeric ranges are partitioned at every threshold used by a literal.

/// Throws SyntaxError or SemanticError.
ProblemSpec parse_problem(std::string_view text);

/// Canonical text that parses back to an equal ProblemSpec.
std::string print_problem(const ProblemSpec& problem);

/// Reads a file and parses it. Throws IoError when unreadable.
ProblemSpec load_problem_file(const std::string& path);

}  // namespace recourse
