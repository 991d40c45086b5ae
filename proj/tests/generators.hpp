// Seeded random generators for terms, problem specs and proof traces.

#pragma once

#include <random>
#include <string>
#include <vector>

#include "axolotl/engine.hpp"
#include "axolotl/problem.hpp"
#include "axolotl/term.hpp"

namespace axolotl::test {

using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

// Random formula over the user functions of `sig` (no built-ins). Variables
// are used only when `with_vars` is set.
inline Term random_formula(Rng& rng, const Signature& sig, int depth, bool with_vars) {
  std::vector<const FunctionDecl*> leaves, nodes;
  for (const auto& f : sig.functions()) (f.arity == 0 ? leaves : nodes).push_back(&f);
  const auto vars = sig.variables();
  const std::size_t leaf_choices = leaves.size() + (with_vars ? vars.size() : 0);
  if (depth <= 1 || nodes.empty() || pick(rng, 3) == 0) {
    const std::size_t i = pick(rng, leaf_choices);
    if (i < leaves.size()) return Term::apply(leaves[i]->name);
    return Term::variable(vars[i - leaves.size()].name);
  }
  const FunctionDecl* f = nodes[pick(rng, nodes.size())];
  std::vector<Term> args;
  for (std::size_t i = 0; i < f->arity; ++i) args.push_back(random_formula(rng, sig, depth - 1, with_vars));
  return Term::apply(f->name, std::move(args));
}

// Random cons/eps list of formulas; with variables it may end in a variable tail.
inline Term random_list(Rng& rng, const Signature& sig, int depth, bool with_vars) {
  const std::size_t length = pick(rng, 4);
  Term tail = Term::apply(std::string(kEmpty));
  if (with_vars && !sig.variables().empty() && pick(rng, 2) == 0)
    tail = Term::variable(sig.variables()[pick(rng, sig.variables().size())].name);
  for (std::size_t i = 0; i < length; ++i)
    tail = Term::apply(std::string(kCons), {random_formula(rng, sig, depth, with_vars), std::move(tail)});
  return tail;
}

// A well-formed term: a formula, a list, or a sequent of two lists.
inline Term random_term(Rng& rng, const Signature& sig, int depth, bool with_vars) {
  switch (pick(rng, 3)) {
    case 0: return random_formula(rng, sig, depth, with_vars);
    case 1: return random_list(rng, sig, depth - 1, with_vars);
    default:
      return Term::apply(std::string(kSequent),
                         {random_list(rng, sig, depth - 2, with_vars), random_list(rng, sig, depth - 2, with_vars)});
  }
}

inline Signature random_signature(Rng& rng) {
  Signature sig;
  const std::size_t constants = 1 + pick(rng, 3);
  for (std::size_t i = 0; i < constants; ++i) sig.add_function("c" + std::to_string(i), 0);
  if (pick(rng, 2)) sig.add_function("neg", 1);
  if (pick(rng, 2)) sig.add_function("f", 3);
  sig.add_function("impl", 2, pick(rng, 2) == 0);
  if (pick(rng, 2)) sig.add_function("and", 2, true);
  const std::size_t vars = pick(rng, 4);
  for (std::size_t i = 0; i < vars; ++i) sig.add_variable(i == 0 ? "x" : "v" + std::to_string(i));
  return sig;
}

inline ProblemSpec random_spec(Rng& rng) {
  ProblemSpec spec;
  spec.signature = random_signature(rng);
  const std::size_t goals = 1 + pick(rng, 3);
  for (std::size_t i = 0; i < goals; ++i) spec.goals.push_back(random_term(rng, spec.signature, 5, false));
  const std::size_t rules = pick(rng, 5);
  const char* names[] = {"ax", "→:l", "⊃-i", "r_1", "MP"};
  for (std::size_t r = 0; r < rules; ++r) {
    std::vector<Term> premises;
    const std::size_t n = pick(rng, 7);
    for (std::size_t i = 0; i < n; ++i) premises.push_back(random_term(rng, spec.signature, 4, true));
    Rule rule{std::move(premises), random_term(rng, spec.signature, 4, true), std::nullopt};
    if (pick(rng, 2)) rule.name = names[pick(rng, std::size(names))];
    spec.rules.push_back(std::move(rule));
  }
  return spec;
}

// Attempts one random successful rule application. Free variables receive
// random ground formulas; attempts that fail are retried a bounded number of times.
inline bool random_apply(Rng& rng, ProofSession& s, std::size_t attempts = 40) {
  const std::size_t open = s.open_count();
  if (open == 0 || s.spec().rules.empty()) return false;
  for (std::size_t a = 0; a < attempts; ++a) {
    StepRequest request{pick(rng, open), pick(rng, s.spec().rules.size()), {}};
    auto pv = s.preview(request);
    if (!pv) continue;
    for (const auto& var : pv->unbound)
      request.free_bindings.bind(var, random_formula(rng, s.spec().signature, 3, false));
    try {
      s.apply(request);
      return true;
    } catch (const EngineError&) {
    }
  }
  return false;
}

}  // namespace axolotl::test
