#include <doctest.h>

#include <algorithm>

#include "axolotl/problem.hpp"
#include "support.hpp"

using namespace axolotl;
using namespace axolotl::test;

namespace {

const char* kHilbert =
    "Function P 0\n"
    "Function impl 2 infix\n"
    "Variable x\n"
    "Variable y\n"
    "Variable z\n"
    "Problem 1 impl(P,P)\n"
    "Rule 2 x impl(x,y) y [MP]\n"
    "Rule 0 impl(x,impl(y,x)) [K]\n"
    "Rule 0 impl(impl(x,impl(y,z)),impl(impl(x,y),impl(x,z))) [S]";

ParseDiagnostic only_error(const std::string& text) {
  auto r = parse_problem(text);
  REQUIRE_FALSE(r.ok());
  REQUIRE(r.errors.size() == 1);
  return r.errors.front();
}

// For inputs whose first fault also makes later lines fail.
ParseDiagnostic first_error(const std::string& text) {
  auto r = parse_problem(text);
  REQUIRE_FALSE(r.errors.empty());
  return r.errors.front();
}

}  // namespace

TEST_CASE("minimal Hilbert file") {
  auto r = parse_problem(kHilbert);
  REQUIRE(r.ok());
  CHECK(r.spec->goals.size() == 1);
  REQUIRE(r.spec->rules.size() == 3);
  CHECK(r.spec->rules[0].name == "MP");
  CHECK(r.spec->rules[0].premises.size() == 2);
  CHECK(r.spec->rules[1].is_axiom());
  CHECK(r.spec->rules[0].free_variables() == std::vector<std::string>{"x"});
  CHECK(r.warnings.empty());
}

TEST_CASE("variable in goal") {
  const auto d = only_error("Function impl 2\nVariable x\nProblem 1 impl(x,x)");
  CHECK(d.line == 3);
  CHECK(d.kind == DiagnosticKind::VariableInGoal);
}

TEST_CASE("duplicate symbol") {
  const auto d = only_error("Function f 2\nFunction f 3\nFunction P 0\nProblem 1 f(P,P)");
  CHECK(d.line == 2);
  CHECK(d.kind == DiagnosticKind::DuplicateSymbol);
  CHECK(only_error("Function f 0\nVariable f\nProblem 1 f").kind == DiagnosticKind::DuplicateSymbol);
}

TEST_CASE("line-level diagnostics") {
  CHECK(only_error("Function P 0\nLemma 1 P\nProblem 1 P").kind == DiagnosticKind::UnknownPrefix);
  CHECK(only_error("Function P 0\n\nProblem 1 P").kind == DiagnosticKind::EmptyLine);
  CHECK(first_error("Function\tP 0\nProblem 1 P").kind == DiagnosticKind::Tab);
  CHECK(only_error("Function P 0\nProblem 1 P\nProblem 1 P").kind == DiagnosticKind::MultipleProblems);
  CHECK(only_error("Function P 0").kind == DiagnosticKind::MissingProblem);
  CHECK(only_error("Function P 0\nProblem 2 P").kind == DiagnosticKind::CountMismatch);
  CHECK(only_error("Function P 0\nProblem 1 P\nRule 1 P").kind == DiagnosticKind::CountMismatch);
  CHECK(first_error("Function P x\nProblem 1 P").kind == DiagnosticKind::InvalidArity);
  CHECK(first_error("Function P 0 infix\nProblem 1 P").kind == DiagnosticKind::InvalidInfix);
  CHECK(first_error("Function p! 0\nProblem 1 P").kind != DiagnosticKind::VariableInGoal);
  CHECK(only_error("Function P 0\nProblem 1 P\nRule 0 P [bad!]").kind == DiagnosticKind::InvalidRuleName);
  CHECK(only_error("Function P 0\nProblem 1 P(").kind == DiagnosticKind::TermSyntax);
  CHECK(only_error("Function P 0\nProblem 1 P\nVariable x").kind == DiagnosticKind::DeclarationOrder);
}

TEST_CASE("multiple diagnostics are reported") {
  auto r = parse_problem("Function P 0\nFunction P 1\nProblem 1 Q\nRule 0 P [a b]");
  CHECK(r.errors.size() >= 3);
  for (const auto& d : r.errors) CHECK(d.line >= 1);
}

TEST_CASE("trailing line and line endings") {
  const auto d = only_error("Function P 0\nProblem 1 P\n");
  CHECK(d.kind == DiagnosticKind::TrailingLine);
  CHECK(d.line == 3);

  ParseOptions lenient;
  lenient.lenient = true;
  auto r = parse_problem("Function P 0\nProblem 1 P\n", lenient);
  CHECK(r.ok());
  CHECK(r.warnings.size() == 1);

  CHECK(first_error("Function P 0\r\nProblem 1 P").kind == DiagnosticKind::Encoding);
  CHECK(parse_problem("Function P 0\r\nProblem 1 P", lenient).ok());
}

TEST_CASE("legal edge cases") {
  // No variables at all (ground rewriting).
  CHECK(parse_problem("Function a 0\nFunction f 1\nProblem 1 f(a)\nRule 1 a f(a)").ok());
  // More than five premises parse; the limit belongs to LaTeX export.
  CHECK(parse_problem("Function a 0\nProblem 1 a\nRule 6 a a a a a a a [six]").ok());
  // Rule names may use arrows, colons, dashes and underscores; names need not be unique.
  auto r = parse_problem("Function a 0\nProblem 1 a\nRule 0 a [→:l]\nRule 0 a [⊃_i-2]\nRule 0 a [→:l]");
  REQUIRE(r.ok());
  CHECK(r.spec->rules[0].name == "→:l");
  // Built-in symbols need no declaration.
  CHECK(parse_problem("Function A 0\nProblem 1 cons(A,eps)|-cons(A,eps)").ok());
  // Several spaces separate tokens.
  CHECK(parse_problem("Function  P   0\nProblem 1  P").ok());
}

TEST_CASE("serialize round trip") {
  auto r = parse_problem(kHilbert);
  REQUIRE(r.ok());
  CHECK(serialize_problem(*r.spec) == kHilbert);
  auto again = parse_problem(serialize_problem(*r.spec));
  REQUIRE(again.ok());
  CHECK(*again.spec == *r.spec);

  auto unnamed = parse_problem("Function P 0\nProblem 2 P P\nRule 0 P");
  REQUIRE(unnamed.ok());
  CHECK(serialize_problem(*unnamed.spec) == "Function P 0\nProblem 2 P P\nRule 0 P");
}

TEST_CASE("builtin library") {
  const auto& lib = builtin_library();
  REQUIRE(lib.size() >= 4);
  std::vector<std::string> categories;
  for (const auto& e : lib) categories.push_back(e.category);
  for (const char* c : {"hilbert", "sequent", "natural-deduction", "rewriting"})
    CHECK(std::find(categories.begin(), categories.end(), c) != categories.end());

  bool has_transitivity = false, ac_has_removal = false;
  for (const auto& e : lib) {
    auto again = parse_problem(serialize_problem(e.spec), {false, e.spec.source_name});
    REQUIRE(again.ok());
    CHECK(*again.spec == e.spec);
    if (e.category == "sequent" && e.spec.source_name == "transitivity") has_transitivity = true;
    if (e.category == "rewriting")
      for (const auto& rule : e.spec.rules) ac_has_removal = ac_has_removal || rule.is_axiom();
  }
  CHECK(has_transitivity);
  CHECK(ac_has_removal);
}

TEST_CASE("invalid fixtures are rejected at the right line; valid twins accepted") {
  struct Case {
    const char* name;
    std::size_t line;
    DiagnosticKind kind;
  };
  const Case cases[] = {
      {"variable-in-goal", 4, DiagnosticKind::VariableInGoal},
      {"function-after-problem", 4, DiagnosticKind::DeclarationOrder},
      {"duplicate-symbol", 3, DiagnosticKind::DuplicateSymbol},
      {"sequent-nested", 5, DiagnosticKind::IllFormedTerm},
      {"list-in-list", 3, DiagnosticKind::IllFormedTerm},
      {"trailing-line", 4, DiagnosticKind::TrailingLine},
  };
  for (const auto& c : cases) {
    CAPTURE(c.name);
    auto bad = parse_problem(read_file(fixtures_dir() / "invalid" / (std::string(c.name) + ".axolotl")));
    REQUIRE(bad.errors.size() == 1);
    CHECK(bad.errors[0].line == c.line);
    CHECK(bad.errors[0].kind == c.kind);
    CHECK(parse_problem(read_file(fixtures_dir() / "valid" / (std::string(c.name) + ".axolotl"))).ok());
  }
}
