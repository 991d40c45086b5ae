// Terms, signatures, substitutions and one-sided first-order matching.

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace axolotl {

// Built-in symbols. Sequents are `|-(lhs,rhs)` over cons/eps lists.
inline constexpr std::string_view kSequent = "|-";
inline constexpr std::string_view kCons = "cons";
inline constexpr std::string_view kEmpty = "eps";

// UTF-8 aliases accepted on input and used for display.
inline constexpr std::string_view kSequentGlyph = "⊢";  // ⊢
inline constexpr std::string_view kEmptyGlyph = "ε";    // ε
inline constexpr std::string_view kHoleGlyph = "☐";     // ☐
inline constexpr std::string_view kSelectedGlyph = "•"; // •

// A variable, a function symbol applied to arguments, or a hole in a term
// under construction. Holes never occur in goals or rules.
class Term {
 public:
  enum class Kind : std::uint8_t { Variable, Application, Hole };

  static Term variable(std::string name);
  static Term apply(std::string symbol, std::vector<Term> args = {});
  // `label` names the hole ("x" renders as `x?`); an empty label renders as ☐.
  static Term hole(std::string label = {}, bool selected = false);

  Kind kind() const { return kind_; }
  bool is_variable() const { return kind_ == Kind::Variable; }
  bool is_application() const { return kind_ == Kind::Application; }
  bool is_hole() const { return kind_ == Kind::Hole; }

  // Variable name, function symbol, or hole label.
  const std::string& name() const { return name_; }
  std::span<const Term> args() const { return args_; }
  std::size_t arity() const { return args_.size(); }
  bool selected() const { return selected_; }

  // Mutable access for in-place edits (builder); never breaks value semantics.
  std::vector<Term>& mutable_args() { return args_; }
  void set_selected(bool s) { selected_ = s; }

  bool is_symbol(std::string_view s) const { return kind_ == Kind::Application && name_ == s; }

  std::size_t size() const;  // node count

  friend bool operator==(const Term&, const Term&) = default;

 private:
  Term(Kind kind, std::string name, std::vector<Term> args, bool selected)
      : kind_(kind), name_(std::move(name)), args_(std::move(args)), selected_(selected) {}

  Kind kind_;
  std::string name_;
  std::vector<Term> args_;
  bool selected_ = false;
};

// Index path from the root: the i-th entry selects args()[path[i]].
using TermPath = std::vector<std::size_t>;

const Term& subterm_at(const Term& t, const TermPath& path);

struct FunctionDecl {
  std::string name;
  std::size_t arity = 0;
  bool infix = false;
  bool builtin = false;

  friend bool operator==(const FunctionDecl&, const FunctionDecl&) = default;
};

struct VariableDecl {
  std::string name;

  friend bool operator==(const VariableDecl&, const VariableDecl&) = default;
};

bool is_alphanumeric_name(std::string_view name);

class SignatureError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Declared function symbols and variables. Variables and functions share a
// namespace; the built-ins `|-`, `cons` and `eps` are always present.
class Signature {
 public:
  Signature();

  // Throws SignatureError on a bad name, a collision, or infix on a non-binary symbol.
  void add_function(std::string name, std::size_t arity, bool infix = false);
  void add_variable(std::string name);

  bool declares(std::string_view name) const;
  const FunctionDecl* function(std::string_view name) const;
  bool is_variable(std::string_view name) const;
  bool is_builtin(std::string_view name) const;

  // User declarations in declaration order (built-ins excluded).
  std::span<const FunctionDecl> functions() const { return functions_; }
  std::span<const VariableDecl> variables() const { return variables_; }
  std::span<const FunctionDecl> builtins() const { return builtins_; }

  friend bool operator==(const Signature& a, const Signature& b) {
    return a.functions_ == b.functions_ && a.variables_ == b.variables_;
  }

 private:
  std::vector<FunctionDecl> builtins_;
  std::vector<FunctionDecl> functions_;
  std::vector<VariableDecl> variables_;
  std::map<std::string, std::size_t, std::less<>> function_index_;
  std::map<std::string, std::size_t, std::less<>> variable_index_;
};

// Maps the UTF-8 aliases onto the canonical ASCII built-ins; other names unchanged.
std::string_view canonical_symbol(std::string_view name);

// Ordered, each variable bound at most once. Order is discovery order.
class Substitution {
 public:
  using Binding = std::pair<std::string, Term>;

  Substitution() = default;
  Substitution(std::initializer_list<Binding> bindings);

  // Returns false (and changes nothing) if `var` is already bound.
  bool bind(std::string var, Term value);
  const Term* find(std::string_view var) const;
  bool contains(std::string_view var) const { return find(var) != nullptr; }

  std::span<const Binding> bindings() const { return bindings_; }
  std::size_t size() const { return bindings_.size(); }
  bool empty() const { return bindings_.empty(); }

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  std::vector<Binding> bindings_;
};

struct TraceEntry {
  Term pattern;  // always a variable
  Term subterm;

  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

struct MatchReport {
  Substitution substitution;
  std::vector<TraceEntry> trace;  // one entry per binding, discovery order

  friend bool operator==(const MatchReport&, const MatchReport&) = default;
};

struct Violation {
  std::string message;
  TermPath path;  // offending subterm
};

// First violated well-formedness constraint, or nullopt when `t` is well formed.
std::optional<Violation> check_well_formed(const Term& t, const Signature& sig);
inline bool well_formed(const Term& t, const Signature& sig) { return !check_well_formed(t, sig); }

// Distinct variables in depth-first left-to-right first-occurrence order.
std::vector<std::string> vars_of(const Term& t);
void collect_vars(const Term& t, std::vector<std::string>& out);
bool is_ground(const Term& t);
bool contains_hole(const Term& t);

// Simultaneous substitution; unbound variables are left alone.
Term apply_subst(const Substitution& subst, const Term& t);

// Matches `pattern` against the ground `target`. Returns nullopt on mismatch.
// Throws std::invalid_argument when `target` is not ground.
std::optional<MatchReport> match_pattern(const Term& pattern, const Term& target);

enum class PrintMode { File, Display };

std::string print_term(const Term& t, const Signature& sig, PrintMode mode = PrintMode::File);

class TermParseError : public std::runtime_error {
 public:
  enum class Kind {
    UnknownSymbol,
    ArityMismatch,
    UnbalancedParentheses,
    Whitespace,
    UnexpectedCharacter,
    UnexpectedToken,
    UnexpectedEnd,
  };

  TermParseError(Kind kind, std::size_t offset, const std::string& message)
      : std::runtime_error(message), kind_(kind), offset_(offset) {}

  Kind kind() const { return kind_; }
  std::size_t offset() const { return offset_; }  // byte offset into the input

 private:
  Kind kind_;
  std::size_t offset_;
};

const char* to_string(TermParseError::Kind kind);

// Parses file-mode syntax: prefix `f(t1,...,tk)`, plus `a SYM b` for infix
// symbols where each operand is an atom or a parenthesised term.
Term parse_term(std::string_view text, const Signature& sig);

}  // namespace axolotl
