// Hole-directed construction of ground terms for free premise variables.
//
// The partial term always has exactly one selected hole while any hole
// remains. Placing a symbol fills the selected hole with the symbol applied to
// fresh unselected holes, then selects the leftmost remaining hole.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "axolotl/engine.hpp"
#include "axolotl/problem.hpp"
#include "axolotl/term.hpp"

namespace axolotl {

class BuilderError : public std::runtime_error {
 public:
  enum class Kind { UnknownVariable, UnknownSymbol, NotInPalette, NoHoles, HolesRemain };

  BuilderError(Kind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct Placement {
  TermPath hole;  // path of the hole that was filled
  std::string symbol;

  friend bool operator==(const Placement&, const Placement&) = default;
};

// Symbols offered for `var`: every declared function, plus `cons`/`eps` when
// a premise of `rule` puts `var` in a list position, plus `|-` when `var` is a
// whole premise and the problem's goals are sequents.
std::vector<std::string> builder_palette(const ProblemSpec& spec, const Rule& rule, const std::string& var);

class TermBuilder {
 public:
  // Palette is every user-declared function symbol.
  TermBuilder(std::string target_var, const Signature& sig);
  // Throws BuilderError(UnknownSymbol) if a palette name is not declared in `sig`.
  TermBuilder(std::string target_var, const Signature& sig, const std::vector<std::string>& palette);

  const std::string& target_var() const { return target_var_; }
  const Term& partial() const { return partial_; }
  const std::vector<Placement>& placements() const { return placements_; }
  const std::vector<FunctionDecl>& palette() const { return palette_; }

  std::size_t hole_count() const;
  std::optional<TermPath> selected_hole() const;
  bool is_complete() const { return hole_count() == 0; }

  void place(const std::string& symbol);
  bool undo();  // false when nothing has been placed
  Term finish() const;

  friend bool operator==(const TermBuilder& a, const TermBuilder& b) {
    return a.target_var_ == b.target_var_ && a.partial_ == b.partial_ && a.placements_ == b.placements_;
  }

 private:
  std::string target_var_;
  std::vector<FunctionDecl> palette_;
  std::vector<std::string> declared_;  // every symbol of the signature, for error reporting
  Term partial_;
  std::vector<Placement> placements_;
};

TermBuilder start_builder(const std::string& var, const Signature& sig);
TermBuilder start_builder(const std::string& var, const ProblemSpec& spec, const Rule& rule);

// Replaces every hole labelled `var` with `value`.
Term fill_named_hole(const Term& t, const std::string& var, const Term& value);

// The tentative goal list with the builder's target bound to its partial term.
std::vector<Term> preview_problem_state(const TermBuilder& builder, const ProofSession& session,
                                       const StepRequest& prior);

}  // namespace axolotl
