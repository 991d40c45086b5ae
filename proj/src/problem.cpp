#include "axolotl/problem.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace axolotl {

std::vector<std::string> Rule::free_variables() const {
  const std::vector<std::string> bound = vars_of(conclusion);
  std::vector<std::string> seen;
  for (const auto& p : premises) collect_vars(p, seen);
  std::vector<std::string> out;
  for (auto& v : seen)
    if (std::find(bound.begin(), bound.end(), v) == bound.end()) out.push_back(std::move(v));
  return out;
}

std::string rule_label(const Rule& rule, std::size_t index) {
  return rule.name ? *rule.name : "#" + std::to_string(index);
}

const char* to_string(DiagnosticKind kind) {
  switch (kind) {
    case DiagnosticKind::UnknownPrefix: return "unknown-prefix";
    case DiagnosticKind::EmptyLine: return "empty-line";
    case DiagnosticKind::TrailingLine: return "trailing-line";
    case DiagnosticKind::Tab: return "tab";
    case DiagnosticKind::DeclarationOrder: return "declaration-order";
    case DiagnosticKind::DuplicateSymbol: return "duplicate-symbol";
    case DiagnosticKind::InvalidName: return "invalid-name";
    case DiagnosticKind::InvalidArity: return "invalid-arity";
    case DiagnosticKind::InvalidInfix: return "invalid-infix";
    case DiagnosticKind::MissingProblem: return "missing-problem";
    case DiagnosticKind::MultipleProblems: return "multiple-problems";
    case DiagnosticKind::CountMismatch: return "count-mismatch";
    case DiagnosticKind::TermSyntax: return "term-syntax";
    case DiagnosticKind::IllFormedTerm: return "ill-formed-term";
    case DiagnosticKind::VariableInGoal: return "variable-in-goal";
    case DiagnosticKind::InvalidRuleName: return "invalid-rule-name";
    case DiagnosticKind::Encoding: return "encoding";
  }
  return "unknown";
}

namespace {

struct LineToken {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<LineToken> split_spaces(std::string_view line) {
  std::vector<LineToken> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ') ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

std::optional<std::size_t> parse_count(std::string_view text) {
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; }))
    return std::nullopt;
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

bool valid_rule_name(std::string_view name) {
  static constexpr std::string_view kArrow = "→";  // →
  static constexpr std::string_view kSupset = "⊃"; // ⊃
  if (name.empty()) return false;
  std::size_t i = 0;
  while (i < name.size()) {
    const unsigned char c = static_cast<unsigned char>(name[i]);
    if (std::isalnum(c) || c == ':' || c == '_' || c == '-') {
      ++i;
    } else if (name.substr(i, kArrow.size()) == kArrow) {
      i += kArrow.size();
    } else if (name.substr(i, kSupset.size()) == kSupset) {
      i += kSupset.size();
    } else {
      return false;
    }
  }
  return true;
}

class ProblemParser {
 public:
  explicit ProblemParser(const ParseOptions& options) : options_(options) {}

  ParseResult run(std::string_view contents) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (true) {
      const std::size_t nl = contents.find('\n', start);
      if (nl == std::string_view::npos) {
        lines.push_back(contents.substr(start));
        break;
      }
      lines.push_back(contents.substr(start, nl - start));
      start = nl + 1;
    }

    if (lines.size() > 1 && lines.back().empty()) {
      const std::size_t at = lines.size();
      if (options_.lenient) {
        warn(at, 1, DiagnosticKind::TrailingLine, "trailing line after the final input line");
        lines.pop_back();
      } else {
        error(at, 1, DiagnosticKind::TrailingLine, "trailing line after the final input line");
      }
    }

    const std::size_t checked = result_.errors.empty() ? lines.size() : lines.size() - 1;
    for (std::size_t i = 0; i < checked; ++i) line(i + 1, lines[i]);

    if (!seen_problem_)
      error(std::max<std::size_t>(1, lines.size()), 1, DiagnosticKind::MissingProblem, "no `Problem` line");

    if (result_.errors.empty()) {
      spec_.source_name = options_.source_name;
      result_.spec = std::move(spec_);
    }
    return std::move(result_);
  }

 private:
  void error(std::size_t line, std::size_t column, DiagnosticKind kind, std::string message) {
    result_.errors.push_back({line, column, kind, std::move(message)});
  }
  void warn(std::size_t line, std::size_t column, DiagnosticKind kind, std::string message) {
    result_.warnings.push_back({line, column, kind, std::move(message)});
  }

  void line(std::size_t number, std::string_view text) {
    if (!text.empty() && text.back() == '\r') {
      if (options_.lenient) {
        warn(number, text.size(), DiagnosticKind::Encoding, "carriage return before line feed");
        text.remove_suffix(1);
      } else {
        error(number, text.size(), DiagnosticKind::Encoding, "carriage return before line feed");
        return;
      }
    }
    if (const std::size_t tab = text.find('\t'); tab != std::string_view::npos) {
      error(number, tab + 1, DiagnosticKind::Tab, "tabs are not token separators; use spaces");
      return;
    }
    const auto tokens = split_spaces(text);
    if (tokens.empty()) {
      error(number, 1, DiagnosticKind::EmptyLine, "empty line");
      return;
    }
    const auto& prefix = tokens.front().text;
    const std::span<const LineToken> rest(tokens.data() + 1, tokens.size() - 1);
    if (prefix == "Function" || prefix == "Variable") {
      if (seen_body_)
        error(number, tokens.front().column, DiagnosticKind::DeclarationOrder,
              "`" + std::string(prefix) + "` line after a `Problem` or `Rule` line");
      if (prefix == "Function")
        function_line(number, tokens.front(), rest);
      else
        variable_line(number, tokens.front(), rest);
    } else if (prefix == "Problem") {
      seen_body_ = true;
      problem_line(number, tokens.front(), rest);
    } else if (prefix == "Rule") {
      seen_body_ = true;
      rule_line(number, tokens.front(), rest);
    } else {
      error(number, tokens.front().column, DiagnosticKind::UnknownPrefix,
            "line must start with Function, Variable, Problem or Rule, found `" + std::string(prefix) + "`");
    }
  }

  bool declare_name_ok(std::size_t number, const LineToken& tok) {
    if (!is_alphanumeric_name(tok.text) || spec_.signature.is_builtin(tok.text)) {
      error(number, tok.column, DiagnosticKind::InvalidName,
            spec_.signature.is_builtin(tok.text) ? "`" + std::string(tok.text) + "` is a built-in symbol"
                                                  : "symbol `" + std::string(tok.text) + "` is not alphanumeric");
      return false;
    }
    if (spec_.signature.declares(tok.text)) {
      error(number, tok.column, DiagnosticKind::DuplicateSymbol,
            "symbol `" + std::string(tok.text) + "` is already declared");
      return false;
    }
    return true;
  }

  void function_line(std::size_t number, const LineToken& head, std::span<const LineToken> rest) {
    if (rest.size() < 2 || rest.size() > 3) {
      error(number, head.column, DiagnosticKind::CountMismatch, "expected `Function SYMBOL ARITY [infix]`");
      return;
    }
    const auto arity = parse_count(rest[1].text);
    if (!arity) {
      error(number, rest[1].column, DiagnosticKind::InvalidArity,
            "arity `" + std::string(rest[1].text) + "` is not a non-negative integer");
    }
    bool infix = false;
    if (rest.size() == 3) {
      if (rest[2].text != "infix") {
        error(number, rest[2].column, DiagnosticKind::InvalidInfix,
              "expected `infix`, found `" + std::string(rest[2].text) + "`");
        return;
      }
      infix = true;
      if (arity && *arity != 2) {
        error(number, rest[2].column, DiagnosticKind::InvalidInfix, "only binary symbols may be infix");
        return;
      }
    }
    if (!declare_name_ok(number, rest[0]) || !arity) return;
    spec_.signature.add_function(std::string(rest[0].text), *arity, infix);
  }

  void variable_line(std::size_t number, const LineToken& head, std::span<const LineToken> rest) {
    if (rest.size() != 1) {
      error(number, head.column, DiagnosticKind::CountMismatch, "expected `Variable SYMBOL`");
      return;
    }
    if (!declare_name_ok(number, rest[0])) return;
    spec_.signature.add_variable(std::string(rest[0].text));
  }

  std::optional<Term> term(std::size_t number, const LineToken& tok) {
    try {
      Term t = parse_term(tok.text, spec_.signature);
      if (auto v = check_well_formed(t, spec_.signature)) {
        error(number, tok.column, DiagnosticKind::IllFormedTerm, v->message);
        return std::nullopt;
      }
      return t;
    } catch (const TermParseError& e) {
      error(number, tok.column + e.offset(), DiagnosticKind::TermSyntax, e.what());
      return std::nullopt;
    }
  }

  void problem_line(std::size_t number, const LineToken& head, std::span<const LineToken> rest) {
    if (seen_problem_) {
      error(number, head.column, DiagnosticKind::MultipleProblems, "only one `Problem` line is allowed");
      return;
    }
    seen_problem_ = true;
    if (rest.empty()) {
      error(number, head.column, DiagnosticKind::CountMismatch, "expected `Problem COUNT TERM...`");
      return;
    }
    const auto count = parse_count(rest[0].text);
    if (!count || *count == 0) {
      error(number, rest[0].column, DiagnosticKind::CountMismatch, "goal count must be a positive integer");
      return;
    }
    if (rest.size() - 1 != *count) {
      error(number, rest[0].column, DiagnosticKind::CountMismatch,
            "declared " + std::to_string(*count) + " goal(s), found " + std::to_string(rest.size() - 1));
      return;
    }
    for (const auto& tok : rest.subspan(1)) {
      auto goal = term(number, tok);
      if (!goal) continue;
      if (!is_ground(*goal)) {
        error(number, tok.column, DiagnosticKind::VariableInGoal,
              "variables cannot occur in goals (found `" + vars_of(*goal).front() + "`)");
        continue;
      }
      spec_.goals.push_back(std::move(*goal));
    }
  }

  void rule_line(std::size_t number, const LineToken& head, std::span<const LineToken> rest) {
    if (rest.empty()) {
      error(number, head.column, DiagnosticKind::CountMismatch, "expected `Rule COUNT TERM... TERM [NAME]`");
      return;
    }
    const auto count = parse_count(rest[0].text);
    if (!count) {
      error(number, rest[0].column, DiagnosticKind::CountMismatch, "premise count must be a non-negative integer");
      return;
    }
    auto terms = rest.subspan(1);
    std::optional<std::string> name;
    bool ok = true;
    if (!terms.empty() && terms.back().text.starts_with('[')) {
      const auto& tok = terms.back();
      const std::string_view text = tok.text;
      if (text.size() < 2 || !text.ends_with(']') || !valid_rule_name(text.substr(1, text.size() - 2))) {
        error(number, tok.column, DiagnosticKind::InvalidRuleName, "invalid rule name `" + std::string(text) + "`");
        ok = false;
      } else {
        name = std::string(text.substr(1, text.size() - 2));
      }
      terms = terms.first(terms.size() - 1);
    }
    if (terms.size() != *count + 1) {
      error(number, rest[0].column, DiagnosticKind::CountMismatch,
            "declared " + std::to_string(*count) + " premise(s) plus a conclusion, found " +
                std::to_string(terms.size()) + " term(s)");
      return;
    }
    std::vector<Term> parsed;
    for (const auto& tok : terms) {
      if (auto t = term(number, tok))
        parsed.push_back(std::move(*t));
      else
        ok = false;
    }
    if (!ok) return;
    Term conclusion = std::move(parsed.back());
    parsed.pop_back();
    spec_.rules.push_back(Rule{std::move(parsed), std::move(conclusion), std::move(name)});
  }

  const ParseOptions& options_;
  ParseResult result_;
  ProblemSpec spec_{Signature{}, {}, {}, {}};
  bool seen_body_ = false;
  bool seen_problem_ = false;
};

}  // namespace

ParseResult parse_problem(std::string_view contents, const ParseOptions& options) {
  return ProblemParser(options).run(contents);
}

std::string serialize_problem(const ProblemSpec& spec) {
  std::vector<std::string> lines;
  const Signature& sig = spec.signature;
  for (const auto& f : sig.functions())
    lines.push_back("Function " + f.name + " " + std::to_string(f.arity) + (f.infix ? " infix" : ""));
  for (const auto& v : sig.variables()) lines.push_back("Variable " + v.name);

  std::string problem = "Problem " + std::to_string(spec.goals.size());
  for (const auto& g : spec.goals) problem += " " + print_term(g, sig);
  lines.push_back(std::move(problem));

  for (const auto& r : spec.rules) {
    std::string line = "Rule " + std::to_string(r.premises.size());
    for (const auto& p : r.premises) line += " " + print_term(p, sig);
    line += " " + print_term(r.conclusion, sig);
    if (r.name) line += " [" + *r.name + "]";
    lines.push_back(std::move(line));
  }

  std::string out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i > 0) out += '\n';
    out += lines[i];
  }
  return out;
}

}  // namespace axolotl
