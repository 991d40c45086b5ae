// Problem files: `Function`, `Variable`, `Problem` and `Rule` lines.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "axolotl/term.hpp"

namespace axolotl {

// One conclusion pattern, zero or more premise patterns. No premises means axiom.
struct Rule {
  std::vector<Term> premises;
  Term conclusion;
  std::optional<std::string> name;

  bool is_axiom() const { return premises.empty(); }

  // Variables that occur in premises but not in the conclusion, first
  // appearance across premises (premise order, depth-first within each).
  std::vector<std::string> free_variables() const;

  friend bool operator==(const Rule&, const Rule&) = default;
};

// Rule name, or `#index` for unnamed rules.
std::string rule_label(const Rule& rule, std::size_t index);

struct ProblemSpec {
  Signature signature;
  std::vector<Term> goals;
  std::vector<Rule> rules;
  std::string source_name;

  friend bool operator==(const ProblemSpec&, const ProblemSpec&) = default;
};

enum class DiagnosticKind {
  UnknownPrefix,
  EmptyLine,
  TrailingLine,
  Tab,
  DeclarationOrder,
  DuplicateSymbol,
  InvalidName,
  InvalidArity,
  InvalidInfix,
  MissingProblem,
  MultipleProblems,
  CountMismatch,
  TermSyntax,
  IllFormedTerm,
  VariableInGoal,
  InvalidRuleName,
  Encoding,
};

const char* to_string(DiagnosticKind kind);

struct ParseDiagnostic {
  std::size_t line = 1;    // 1-based
  std::size_t column = 1;  // 1-based, bytes
  DiagnosticKind kind = DiagnosticKind::UnknownPrefix;
  std::string message;

  friend bool operator==(const ParseDiagnostic&, const ParseDiagnostic&) = default;
};

struct ParseOptions {
  // Tolerate a single trailing LF on the final line (reported as a warning).
  bool lenient = false;
  std::string source_name;
};

struct ParseResult {
  std::optional<ProblemSpec> spec;  // set iff errors is empty
  std::vector<ParseDiagnostic> errors;
  std::vector<ParseDiagnostic> warnings;

  bool ok() const { return spec.has_value(); }
};

ParseResult parse_problem(std::string_view contents, const ParseOptions& options = {});

// Canonical form: Function lines, Variable lines, the Problem line, Rule lines;
// single spaces; no newline after the final line.
std::string serialize_problem(const ProblemSpec& spec);

struct LibraryEntry {
  std::string category;
  ProblemSpec spec;
};

// Bundled problems: Hilbert, sequent, natural deduction, rewriting.
const std::vector<LibraryEntry>& builtin_library();

}  // namespace axolotl
