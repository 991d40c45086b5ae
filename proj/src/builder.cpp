#include "axolotl/builder.hpp"

#include <algorithm>

namespace axolotl {

namespace {

void find_holes(const Term& t, TermPath& path, std::vector<TermPath>& out) {
  if (t.is_hole()) {
    out.push_back(path);
    return;
  }
  for (std::size_t i = 0; i < t.arity(); ++i) {
    path.push_back(i);
    find_holes(t.args()[i], path, out);
    path.pop_back();
  }
}

std::vector<TermPath> holes_of(const Term& t) {
  std::vector<TermPath> out;
  TermPath path;
  find_holes(t, path, out);
  return out;
}

Term& node_at(Term& t, const TermPath& path) {
  Term* cur = &t;
  for (std::size_t i : path) cur = &cur->mutable_args()[i];
  return *cur;
}

void clear_selection(Term& t) {
  if (t.is_hole()) t.set_selected(false);
  for (auto& a : t.mutable_args()) clear_selection(a);
}

// Records where `var` occurs in a premise.
void scan_positions(const Term& t, const std::string& var, bool list_slot, bool& in_list) {
  if (t.is_variable()) {
    if (t.name() == var && list_slot) in_list = true;
    return;
  }
  for (std::size_t i = 0; i < t.arity(); ++i) {
    const bool slot = t.is_symbol(kSequent) || (t.is_symbol(kCons) && i == 1);
    scan_positions(t.args()[i], var, slot, in_list);
  }
}

}  // namespace

std::vector<std::string> builder_palette(const ProblemSpec& spec, const Rule& rule, const std::string& var) {
  std::vector<std::string> out;
  for (const auto& f : spec.signature.functions()) out.push_back(f.name);

  bool in_list = false;
  bool whole_premise = false;
  for (const auto& p : rule.premises) {
    scan_positions(p, var, false, in_list);
    if (p.is_variable() && p.name() == var) whole_premise = true;
  }
  const bool sequent_goals = std::any_of(spec.goals.begin(), spec.goals.end(),
                                         [](const Term& g) { return g.is_symbol(kSequent); });
  if (whole_premise && sequent_goals) out.emplace_back(kSequent);
  if (in_list || (whole_premise && sequent_goals)) {
    out.emplace_back(kCons);
    out.emplace_back(kEmpty);
  }
  return out;
}

TermBuilder::TermBuilder(std::string target_var, const Signature& sig)
    : TermBuilder(target_var, sig, [&] {
        std::vector<std::string> names;
        for (const auto& f : sig.functions()) names.push_back(f.name);
        return names;
      }()) {}

TermBuilder::TermBuilder(std::string target_var, const Signature& sig, const std::vector<std::string>& palette)
    : target_var_(std::move(target_var)), partial_(Term::hole({}, true)) {
  for (const auto& f : sig.builtins()) declared_.push_back(f.name);
  for (const auto& f : sig.functions()) declared_.push_back(f.name);
  if (!sig.is_variable(target_var_))
    throw BuilderError(BuilderError::Kind::UnknownVariable, "`" + target_var_ + "` is not a declared variable");
  for (const auto& name : palette) {
    const FunctionDecl* decl = sig.function(name);
    if (decl == nullptr) throw BuilderError(BuilderError::Kind::UnknownSymbol, "unknown symbol `" + name + "`");
    palette_.push_back(*decl);
  }
}

std::size_t TermBuilder::hole_count() const { return holes_of(partial_).size(); }

std::optional<TermPath> TermBuilder::selected_hole() const {
  for (auto& path : holes_of(partial_))
    if (subterm_at(partial_, path).selected()) return path;
  return std::nullopt;
}

void TermBuilder::place(const std::string& symbol) {
  const auto selected = selected_hole();
  if (!selected) throw BuilderError(BuilderError::Kind::NoHoles, "the term has no holes left");
  const std::string_view name = canonical_symbol(symbol);
  auto decl = std::find_if(palette_.begin(), palette_.end(), [&](const FunctionDecl& f) { return f.name == name; });
  if (decl == palette_.end() && std::find(declared_.begin(), declared_.end(), name) == declared_.end())
    throw BuilderError(BuilderError::Kind::UnknownSymbol, "unknown symbol `" + symbol + "`");
  if (decl == palette_.end())
    throw BuilderError(BuilderError::Kind::NotInPalette, "`" + symbol + "` is not offered for this variable");

  std::vector<Term> args(decl->arity, Term::hole());
  node_at(partial_, *selected) = Term::apply(decl->name, std::move(args));
  placements_.push_back({*selected, decl->name});

  const auto remaining = holes_of(partial_);
  if (!remaining.empty()) node_at(partial_, remaining.front()).set_selected(true);
}

bool TermBuilder::undo() {
  if (placements_.empty()) return false;
  const Placement last = placements_.back();
  placements_.pop_back();
  clear_selection(partial_);
  node_at(partial_, last.hole) = Term::hole({}, true);
  return true;
}

Term TermBuilder::finish() const {
  if (!is_complete())
    throw BuilderError(BuilderError::Kind::HolesRemain,
                       std::to_string(hole_count()) + " hole(s) remain in the term for `" + target_var_ + "`");
  return partial_;
}

TermBuilder start_builder(const std::string& var, const Signature& sig) { return TermBuilder(var, sig); }

TermBuilder start_builder(const std::string& var, const ProblemSpec& spec, const Rule& rule) {
  return TermBuilder(var, spec.signature, builder_palette(spec, rule, var));
}

Term fill_named_hole(const Term& t, const std::string& var, const Term& value) {
  if (t.is_hole() && t.name() == var) return value;
  if (t.arity() == 0) return t;
  Term out = t;
  for (auto& a : out.mutable_args()) a = fill_named_hole(a, var, value);
  return out;
}

std::vector<Term> preview_problem_state(const TermBuilder& builder, const ProofSession& session,
                                       const StepRequest& prior) {
  auto pv = session.preview(prior);
  if (!pv)
    throw EngineError(EngineErrorCode::NoMatch, "rule " + std::to_string(prior.rule_index) +
                                                    " does not match goal " + std::to_string(prior.goal_position));
  std::vector<Term> out;
  out.reserve(pv->tentative_goals.size());
  for (const auto& g : pv->tentative_goals) out.push_back(fill_named_hole(g, builder.target_var(), builder.partial()));
  return out;
}

}  // namespace axolotl
