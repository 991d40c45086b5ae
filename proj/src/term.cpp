#include "axolotl/term.hpp"

#include <algorithm>
#include <cctype>

namespace axolotl {

Term Term::variable(std::string name) { return Term(Kind::Variable, std::move(name), {}, false); }

Term Term::apply(std::string symbol, std::vector<Term> args) {
  return Term(Kind::Application, std::move(symbol), std::move(args), false);
}

Term Term::hole(std::string label, bool selected) {
  return Term(Kind::Hole, std::move(label), {}, selected);
}

std::size_t Term::size() const {
  std::size_t n = 1;
  for (const auto& a : args_) n += a.size();
  return n;
}

const Term& subterm_at(const Term& t, const TermPath& path) {
  const Term* cur = &t;
  for (std::size_t i : path) {
    if (i >= cur->arity()) throw std::out_of_range("term path out of range");
    cur = &cur->args()[i];
  }
  return *cur;
}

bool is_alphanumeric_name(std::string_view name) {
  return !name.empty() && std::all_of(name.begin(), name.end(), [](unsigned char c) {
    return std::isalnum(c) != 0;
  });
}

std::string_view canonical_symbol(std::string_view name) {
  if (name == kSequentGlyph) return kSequent;
  if (name == kEmptyGlyph) return kEmpty;
  return name;
}

// ---------------------------------------------------------------------------
// Signature

Signature::Signature() {
  builtins_ = {
      {std::string(kSequent), 2, true, true},
      {std::string(kCons), 2, false, true},
      {std::string(kEmpty), 0, false, true},
  };
}

bool Signature::is_builtin(std::string_view name) const {
  name = canonical_symbol(name);
  return name == kSequent || name == kCons || name == kEmpty;
}

bool Signature::declares(std::string_view name) const {
  return function(name) != nullptr || is_variable(name);
}

const FunctionDecl* Signature::function(std::string_view name) const {
  name = canonical_symbol(name);
  for (const auto& b : builtins_)
    if (b.name == name) return &b;
  auto it = function_index_.find(name);
  return it == function_index_.end() ? nullptr : &functions_[it->second];
}

bool Signature::is_variable(std::string_view name) const {
  return variable_index_.find(name) != variable_index_.end();
}

void Signature::add_function(std::string name, std::size_t arity, bool infix) {
  if (!is_alphanumeric_name(name)) throw SignatureError("function symbol `" + name + "` is not alphanumeric");
  if (is_builtin(name)) throw SignatureError("`" + name + "` is a built-in symbol");
  if (declares(name)) throw SignatureError("symbol `" + name + "` is already declared");
  if (infix && arity != 2) throw SignatureError("infix symbol `" + name + "` must have arity 2");
  function_index_.emplace(name, functions_.size());
  functions_.push_back({std::move(name), arity, infix, false});
}

void Signature::add_variable(std::string name) {
  if (!is_alphanumeric_name(name)) throw SignatureError("variable `" + name + "` is not alphanumeric");
  if (is_builtin(name)) throw SignatureError("`" + name + "` is a built-in symbol");
  if (declares(name)) throw SignatureError("symbol `" + name + "` is already declared");
  variable_index_.emplace(name, variables_.size());
  variables_.push_back({std::move(name)});
}

// ---------------------------------------------------------------------------
// Substitution

Substitution::Substitution(std::initializer_list<Binding> bindings) {
  for (const auto& [var, value] : bindings)
    if (!bind(var, value)) throw std::invalid_argument("variable `" + var + "` bound twice");
}

bool Substitution::bind(std::string var, Term value) {
  if (contains(var)) return false;
  bindings_.emplace_back(std::move(var), std::move(value));
  return true;
}

const Term* Substitution::find(std::string_view var) const {
  for (const auto& [name, value] : bindings_)
    if (name == var) return &value;
  return nullptr;
}

// ---------------------------------------------------------------------------
// Well-formedness

namespace {

bool mentions_list_structure(const Term& t) {
  if (t.is_symbol(kCons) || t.is_symbol(kEmpty) || t.is_symbol(kSequent)) return true;
  return std::any_of(t.args().begin(), t.args().end(), mentions_list_structure);
}

bool is_list_shape(const Term& t) {
  return t.is_variable() || t.is_symbol(kEmpty) || t.is_symbol(kCons);
}

std::optional<Violation> check_node(const Term& t, const Signature& sig, TermPath& path,
                                    const Term* parent) {
  auto fail = [&](std::string message) { return Violation{std::move(message), path}; };

  switch (t.kind()) {
    case Term::Kind::Hole:
      return fail("term contains an unfilled hole");
    case Term::Kind::Variable:
      if (!sig.is_variable(t.name())) return fail("undeclared variable `" + t.name() + "`");
      return std::nullopt;
    case Term::Kind::Application:
      break;
  }

  const FunctionDecl* decl = sig.function(t.name());
  if (decl == nullptr) return fail("undeclared function symbol `" + t.name() + "`");
  if (decl->arity != t.arity())
    return fail("`" + t.name() + "` expects " + std::to_string(decl->arity) + " argument(s), got " +
                std::to_string(t.arity()));

  if (t.is_symbol(kSequent)) {
    if (parent != nullptr) return fail("sequent symbol below `" + parent->name() + "`");
    for (std::size_t i = 0; i < 2; ++i) {
      if (!is_list_shape(t.args()[i])) {
        path.push_back(i);
        auto v = fail(std::string("sequent ") + (i == 0 ? "left" : "right") + " side is not a list");
        path.pop_back();
        return v;
      }
    }
  } else if (t.is_symbol(kCons)) {
    if (mentions_list_structure(t.args()[0])) {
      path.push_back(0);
      auto v = fail("list nested in list element");
      path.pop_back();
      return v;
    }
    if (!is_list_shape(t.args()[1])) {
      path.push_back(1);
      auto v = fail("tail of `cons` is not a list");
      path.pop_back();
      return v;
    }
  }

  for (std::size_t i = 0; i < t.arity(); ++i) {
    path.push_back(i);
    auto v = check_node(t.args()[i], sig, path, &t);
    path.pop_back();
    if (v) return v;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Violation> check_well_formed(const Term& t, const Signature& sig) {
  TermPath path;
  return check_node(t, sig, path, nullptr);
}

// ---------------------------------------------------------------------------
// Variables, substitution, matching

void collect_vars(const Term& t, std::vector<std::string>& out) {
  if (t.is_variable()) {
    if (std::find(out.begin(), out.end(), t.name()) == out.end()) out.push_back(t.name());
    return;
  }
  for (const auto& a : t.args()) collect_vars(a, out);
}

std::vector<std::string> vars_of(const Term& t) {
  std::vector<std::string> out;
  collect_vars(t, out);
  return out;
}

bool is_ground(const Term& t) {
  if (t.is_variable()) return false;
  return std::all_of(t.args().begin(), t.args().end(), is_ground);
}

bool contains_hole(const Term& t) {
  if (t.is_hole()) return true;
  return std::any_of(t.args().begin(), t.args().end(), contains_hole);
}

Term apply_subst(const Substitution& subst, const Term& t) {
  if (subst.empty()) return t;
  if (t.is_variable()) {
    const Term* bound = subst.find(t.name());
    return bound != nullptr ? *bound : t;
  }
  if (t.arity() == 0) return t;
  Term out = t;
  for (auto& a : out.mutable_args()) a = apply_subst(subst, a);
  return out;
}

namespace {

bool match_into(const Term& pattern, const Term& target, MatchReport& report) {
  if (pattern.is_variable()) {
    if (const Term* bound = report.substitution.find(pattern.name())) return *bound == target;
    report.substitution.bind(pattern.name(), target);
    report.trace.push_back({pattern, target});
    return true;
  }
  if (pattern.kind() != target.kind() || pattern.name() != target.name() ||
      pattern.arity() != target.arity())
    return false;
  for (std::size_t i = 0; i < pattern.arity(); ++i)
    if (!match_into(pattern.args()[i], target.args()[i], report)) return false;
  return true;
}

}  // namespace

std::optional<MatchReport> match_pattern(const Term& pattern, const Term& target) {
  if (!is_ground(target)) throw std::invalid_argument("match target must be ground");
  MatchReport report;
  if (!match_into(pattern, target, report)) return std::nullopt;
  return report;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

void print_file(const Term& t, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      out += t.name();
      return;
    case Term::Kind::Hole:
      out += t.name().empty() ? std::string(kHoleGlyph) : t.name() + "?";
      if (t.selected()) out += kSelectedGlyph;
      return;
    case Term::Kind::Application:
      break;
  }
  out += t.name();
  if (t.arity() == 0) return;
  out += '(';
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (i > 0) out += ',';
    print_file(t.args()[i], out);
  }
  out += ')';
}

void print_display(const Term& t, const Signature& sig, std::string& out);

// Elements of a cons-list, with a trailing eps dropped and any other tail kept.
void list_elements(const Term& t, const Signature& sig, std::vector<std::string>& out) {
  const Term* cur = &t;
  while (cur->is_symbol(kCons) && cur->arity() == 2) {
    std::string item;
    print_display(cur->args()[0], sig, item);
    out.push_back(std::move(item));
    cur = &cur->args()[1];
  }
  if (cur->is_symbol(kEmpty)) return;
  std::string tail;
  print_display(*cur, sig, tail);
  out.push_back(std::move(tail));
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += sep;
    out += items[i];
  }
  return out;
}

void print_display(const Term& t, const Signature& sig, std::string& out) {
  if (!t.is_application()) {
    print_file(t, out);
    return;
  }
  if (t.is_symbol(kSequent) && t.arity() == 2) {
    std::vector<std::string> lhs, rhs;
    list_elements(t.args()[0], sig, lhs);
    list_elements(t.args()[1], sig, rhs);
    if (!lhs.empty()) out += join(lhs, ", ") + " ";
    out += kSequentGlyph;
    if (!rhs.empty()) out += " " + join(rhs, ", ");
    return;
  }
  if (t.is_symbol(kEmpty)) {
    out += kEmptyGlyph;
    return;
  }
  if (t.is_symbol(kCons) && t.arity() == 2) {
    std::vector<std::string> items;
    list_elements(t, sig, items);
    out += "[" + join(items, ", ") + "]";
    return;
  }
  const FunctionDecl* decl = sig.function(t.name());
  if (decl != nullptr && decl->infix && t.arity() == 2) {
    out += '(';
    print_display(t.args()[0], sig, out);
    out += ' ' + t.name() + ' ';
    print_display(t.args()[1], sig, out);
    out += ')';
    return;
  }
  out += t.name();
  if (t.arity() == 0) return;
  out += '(';
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (i > 0) out += ", ";
    print_display(t.args()[i], sig, out);
  }
  out += ')';
}

}  // namespace

std::string print_term(const Term& t, const Signature& sig, PrintMode mode) {
  std::string out;
  if (mode == PrintMode::File)
    print_file(t, out);
  else
    print_display(t, sig, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

const char* to_string(TermParseError::Kind kind) {
  using K = TermParseError::Kind;
  switch (kind) {
    case K::UnknownSymbol: return "unknown-symbol";
    case K::ArityMismatch: return "arity-mismatch";
    case K::UnbalancedParentheses: return "unbalanced-parentheses";
    case K::Whitespace: return "whitespace";
    case K::UnexpectedCharacter: return "unexpected-character";
    case K::UnexpectedToken: return "unexpected-token";
    case K::UnexpectedEnd: return "unexpected-end";
  }
  return "unknown";
}

namespace {

struct Token {
  enum class Type { Name, LParen, RParen, Comma, End };
  Type type;
  std::string_view text;
  std::size_t offset;
};

class TermParser {
 public:
  TermParser(std::string_view text, const Signature& sig) : text_(text), sig_(sig) { advance(); }

  Term parse() {
    Term t = expression();
    if (tok_.type == Token::Type::RParen)
      throw TermParseError(TermParseError::Kind::UnbalancedParentheses, tok_.offset, "unmatched `)`");
    if (tok_.type != Token::Type::End) unexpected();
    return t;
  }

 private:
  using K = TermParseError::Kind;

  void advance() {
    while (true) {
      if (pos_ >= text_.size()) {
        tok_ = {Token::Type::End, {}, pos_};
        return;
      }
      const unsigned char c = static_cast<unsigned char>(text_[pos_]);
      if (std::isspace(c)) throw TermParseError(K::Whitespace, pos_, "whitespace inside a term");
      const std::size_t start = pos_;
      switch (c) {
        case '(': ++pos_; tok_ = {Token::Type::LParen, text_.substr(start, 1), start}; return;
        case ')': ++pos_; tok_ = {Token::Type::RParen, text_.substr(start, 1), start}; return;
        case ',': ++pos_; tok_ = {Token::Type::Comma, text_.substr(start, 1), start}; return;
        default: break;
      }
      if (std::isalnum(c)) {
        while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        tok_ = {Token::Type::Name, text_.substr(start, pos_ - start), start};
        return;
      }
      for (std::string_view reserved : {kSequent, kSequentGlyph, kEmptyGlyph}) {
        if (text_.substr(pos_, reserved.size()) == reserved) {
          pos_ += reserved.size();
          tok_ = {Token::Type::Name, text_.substr(start, reserved.size()), start};
          return;
        }
      }
      throw TermParseError(K::UnexpectedCharacter, pos_,
                           "unexpected character `" + std::string(1, text_[pos_]) + "`");
    }
  }

  [[noreturn]] void unexpected() {
    if (tok_.type == Token::Type::End) throw TermParseError(K::UnexpectedEnd, tok_.offset, "unexpected end of term");
    throw TermParseError(K::UnexpectedToken, tok_.offset, "unexpected `" + std::string(tok_.text) + "`");
  }

  void expect(Token::Type type) {
    if (tok_.type == type) {
      advance();
      return;
    }
    if (type == Token::Type::RParen)
      throw TermParseError(K::UnbalancedParentheses, tok_.offset, "expected `)`");
    unexpected();
  }

  const FunctionDecl* infix_operator() const {
    if (tok_.type != Token::Type::Name) return nullptr;
    const FunctionDecl* decl = sig_.function(tok_.text);
    return decl != nullptr && decl->infix ? decl : nullptr;
  }

  // expression := operand [INFIX operand]
  Term expression() {
    Term lhs = operand();
    if (const FunctionDecl* op = infix_operator()) {
      advance();
      Term rhs = operand();
      return Term::apply(op->name, {std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  // operand := '(' expression ')' | atom
  Term operand() {
    if (tok_.type == Token::Type::LParen) {
      advance();
      Term inner = expression();
      expect(Token::Type::RParen);
      return inner;
    }
    return atom();
  }

  // atom := NAME ['(' expression (',' expression)* ')']
  Term atom() {
    if (tok_.type != Token::Type::Name) unexpected();
    const Token name = tok_;
    const std::string_view symbol = canonical_symbol(name.text);
    advance();

    if (sig_.is_variable(symbol)) {
      if (tok_.type == Token::Type::LParen)
        throw TermParseError(K::ArityMismatch, tok_.offset,
                             "variable `" + std::string(symbol) + "` cannot take arguments");
      return Term::variable(std::string(symbol));
    }
    const FunctionDecl* decl = sig_.function(symbol);
    if (decl == nullptr)
      throw TermParseError(K::UnknownSymbol, name.offset, "unknown symbol `" + std::string(name.text) + "`");

    std::vector<Term> args;
    if (tok_.type == Token::Type::LParen) {
      advance();
      args.push_back(expression());
      while (tok_.type == Token::Type::Comma) {
        advance();
        args.push_back(expression());
      }
      expect(Token::Type::RParen);
    }
    if (args.size() != decl->arity)
      throw TermParseError(K::ArityMismatch, name.offset,
                           "`" + decl->name + "` expects " + std::to_string(decl->arity) +
                               " argument(s), got " + std::to_string(args.size()));
    return Term::apply(decl->name, std::move(args));
  }

  std::string_view text_;
  const Signature& sig_;
  std::size_t pos_ = 0;
  Token tok_{Token::Type::End, {}, 0};
};

}  // namespace

Term parse_term(std::string_view text, const Signature& sig) { return TermParser(text, sig).parse(); }

}  // namespace axolotl
