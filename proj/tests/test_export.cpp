#include <doctest.h>

#include "axolotl/export.hpp"
#include "support.hpp"

using namespace axolotl;
using namespace axolotl::test;

namespace {

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

ProblemSpec six_premise_spec() {
  return *parse_problem("Function a 0\nProblem 1 a\nRule 6 a a a a a a a [six]\nRule 0 a [ax]").spec;
}

}  // namespace

TEST_CASE("latex of the completed transitivity proof") {
  const ProofSession s = replay_fixture("sequent/transitivity");
  const std::string tex = to_latex(s);
  CHECK(tex.starts_with("\\documentclass{article}\n"));
  CHECK(count(tex, "\\usepackage[a2paper]{geometry}") == 1);
  CHECK(count(tex, "\\usepackage{bussproofs}") == 1);
  CHECK(count(tex, "\\AxiomC{") == 3);
  CHECK(count(tex, "\\BinaryInfC{") == 2);
  CHECK(count(tex, "\\RightLabel{$\\rightarrow$:r}") == 1);
  CHECK(count(tex, "\\RightLabel{$\\rightarrow$:l}") == 2);
  CHECK(count(tex, "?") == 0);
  // Rules are not listed: only applied labels appear, and no rule is printed as a rule.
  CHECK(count(tex, "exchange-r") == 0);
  CHECK(count(tex, "\\begin{prooftree}") == 1);
  CHECK(tex == to_latex(s));  // deterministic
}

TEST_CASE("latex of open branches") {
  ProofSession s(library_spec("sequent/transitivity"));
  s.apply({0, 2, {}});
  const std::string tex = to_latex(s);
  CHECK(count(tex, "\\AxiomC{?}") == 1);
  CHECK(count(tex, "\\UnaryInfC{") == 2);
}

TEST_CASE("latex premise limit") {
  ProofSession s(six_premise_spec());
  CHECK_NOTHROW(to_latex(s));
  s.apply({0, 0, {}});
  try {
    to_latex(s);
    FAIL("expected an export error");
  } catch (const ExportError& e) {
    CHECK(std::string(e.what()).find("six") != std::string::npos);
  }
  CHECK_NOTHROW(to_text(s));
  CHECK_NOTHROW(to_structured(s));
}

TEST_CASE("latex with several roots") {
  auto spec = parse_problem("Function a 0\nFunction b 0\nProblem 2 a b\nRule 0 a [ax_a]").spec;
  ProofSession s(*spec);
  s.apply({0, 0, {}});
  const std::string tex = to_latex(s);
  CHECK(count(tex, "\\begin{prooftree}") == 2);
  CHECK(count(tex, "\\RightLabel") == 0);
  CHECK(count(tex, "\\AxiomC{?}") == 1);
}

TEST_CASE("latex terms") {
  const auto spec = library_spec("sequent/transitivity");
  const Signature& sig = spec.signature;
  CHECK(latex_term(parse_term("cons(A,cons(B,eps))|-cons(C,eps)", sig), sig) == "A, B \\vdash C");
  CHECK(latex_term(parse_term("eps|-eps", sig), sig) == "\\vdash");
  CHECK(latex_term(parse_term("impl(A,B)", sig), sig) == "(A \\mathbin{\\mathit{impl}} B)");
}

TEST_CASE("text export") {
  ProofSession s(library_spec("sequent/transitivity"));
  CHECK(to_text(s) == "? (A impl B), (B impl C) ⊢ (A impl C)\n");

  auto spec = parse_problem("Function a 0\nProblem 1 a\nRule 0 a [ax]").spec;
  ProofSession ax(*spec);
  ax.apply({0, 0, {}});
  CHECK(to_text(ax) == "[ax] a\n");

  const ProofSession done = replay_fixture("sequent/transitivity");
  const std::string text = to_text(done);
  CHECK(text.starts_with("[→:r] (A impl B), (B impl C) ⊢ (A impl C)\n  [exchange-l] "));
  CHECK(count(text, "[ax]") == 3);
  CHECK(count(text, "\n") == 12);
}

TEST_CASE("structured round trip") {
  for (const char* id : {"sequent/transitivity", "hilbert/p-implies-p", "rewriting/ac-permutation",
                         "natural-deduction/contrapositive"}) {
    CAPTURE(id);
    const ProofSession s = replay_fixture(id);
    const std::string doc = to_structured(s);
    const ProofSession back = from_structured(doc);
    CHECK(back == s);
    CHECK(to_structured(back) == doc);
    CHECK(back.history().size() == s.history().size());
  }
  ProofSession fresh(library_spec("hilbert/p-implies-p"));
  CHECK(from_structured(to_structured(fresh)) == fresh);
}

TEST_CASE("structured rejects inconsistent documents") {
  const ProofSession s = replay_fixture("hilbert/p-implies-p");
  std::string doc = to_structured(s);
  CHECK_THROWS_AS(from_structured("{}"), ExportError);
  CHECK_THROWS_AS(from_structured("not json"), ExportError);
  std::string tampered = doc;
  tampered.replace(tampered.find("\"closed\""), 8, "\"open\"");
  CHECK_THROWS_AS(from_structured(tampered), ExportError);
  std::string version = doc;
  version.replace(version.find("\"version\": 1"), 12, "\"version\": 2");
  CHECK_THROWS_AS(from_structured(version), ExportError);
}

TEST_CASE("export is read-only and dispatches by format") {
  const ProofSession s = replay_fixture("sequent/transitivity");
  const ProofSession copy = s;
  CHECK(export_session(s, ExportFormat::Latex) == to_latex(s));
  CHECK(export_session(s, ExportFormat::Text) == to_text(s));
  CHECK(export_session(s, ExportFormat::Structured) == to_structured(s));
  CHECK(s == copy);
  CHECK(parse_export_format("latex") == ExportFormat::Latex);
  CHECK_FALSE(parse_export_format("pdf").has_value());
}
