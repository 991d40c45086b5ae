#include "axolotl/engine.hpp"

#include <algorithm>

namespace axolotl {

const char* to_string(EngineErrorCode code) {
  switch (code) {
    case EngineErrorCode::NoMatch: return "no_match";
    case EngineErrorCode::UnresolvedVariables: return "unresolved_vars";
    case EngineErrorCode::IllFormed: return "ill_formed";
    case EngineErrorCode::BadIndex: return "bad_index";
    case EngineErrorCode::BadBinding: return "bad_binding";
    case EngineErrorCode::NothingToUndo: return "nothing_to_undo";
  }
  return "unknown";
}

ProofSession::ProofSession(ProblemSpec spec) : spec_(std::move(spec)) {
  roots_.reserve(spec_.goals.size());
  for (const auto& g : spec_.goals) roots_.push_back(ProofNode{g});
}

ProofSession new_session(ProblemSpec spec) { return ProofSession(std::move(spec)); }

namespace {

template <typename Nodes, typename Fn>
bool visit_open(Nodes& nodes, Fn&& fn) {
  for (auto& n : nodes) {
    if (n.status == NodeStatus::Open) {
      if (fn(n)) return true;
    } else if (visit_open(n.children, fn)) {
      return true;
    }
  }
  return false;
}

template <typename Nodes>
auto find_open(Nodes& roots, std::size_t position) {
  decltype(roots.data()) found = nullptr;
  std::size_t seen = 0;
  visit_open(roots, [&](auto& n) {
    if (seen++ == position) {
      found = &n;
      return true;
    }
    return false;
  });
  return found;
}

ProofNode* find_closed_by(std::vector<ProofNode>& nodes, std::size_t step) {
  for (auto& n : nodes) {
    if (n.step_index == step) return &n;
    if (auto* hit = find_closed_by(n.children, step)) return hit;
  }
  return nullptr;
}

}  // namespace

std::vector<GoalEntry> ProofSession::goals() const {
  std::vector<GoalEntry> out;
  visit_open(roots_, [&](const ProofNode& n) {
    out.push_back({out.size(), n.goal});
    return false;
  });
  return out;
}

std::size_t ProofSession::open_count() const {
  std::size_t count = 0;
  visit_open(roots_, [&](const ProofNode&) {
    ++count;
    return false;
  });
  return count;
}

ProofNode* ProofSession::open_leaf(std::size_t position) { return find_open(roots_, position); }

const ProofNode* ProofSession::open_leaf(std::size_t position) const {
  return find_open(roots_, position);
}

const Rule& ProofSession::rule_at(std::size_t index) const {
  if (index >= spec_.rules.size())
    throw EngineError(EngineErrorCode::BadIndex, "rule index " + std::to_string(index) + " out of range (" +
                                                     std::to_string(spec_.rules.size()) + " rules)");
  return spec_.rules[index];
}

void ProofSession::check_bindings(const Rule& rule, const Substitution& bindings) const {
  const auto free = rule.free_variables();
  for (const auto& [var, value] : bindings.bindings()) {
    if (std::find(free.begin(), free.end(), var) == free.end())
      throw EngineError(EngineErrorCode::BadBinding, "`" + var + "` is not a free premise variable of this rule",
                        {var});
    if (!is_ground(value) || contains_hole(value))
      throw EngineError(EngineErrorCode::BadBinding, "binding for `" + var + "` must be a complete ground term",
                        {var});
    if (auto v = check_well_formed(value, spec_.signature))
      throw EngineError(EngineErrorCode::BadBinding, "binding for `" + var + "`: " + v->message, {var});
  }
}

std::optional<ApplicationPreview> ProofSession::preview(const StepRequest& request) const {
  const Rule& rule = rule_at(request.rule_index);
  const ProofNode* leaf = open_leaf(request.goal_position);
  if (leaf == nullptr)
    throw EngineError(EngineErrorCode::BadIndex, "goal position " + std::to_string(request.goal_position) +
                                                     " out of range (" + std::to_string(open_count()) + " goals)");
  check_bindings(rule, request.free_bindings);

  auto match = match_pattern(rule.conclusion, leaf->goal);
  if (!match) return std::nullopt;

  ApplicationPreview out;
  Substitution combined = match->substitution;
  for (const auto& [var, value] : request.free_bindings.bindings()) combined.bind(var, value);
  for (const auto& var : rule.free_variables()) {
    if (!request.free_bindings.contains(var)) {
      out.unbound.push_back(var);
      combined.bind(var, Term::hole(var));
    }
  }
  for (const auto& p : rule.premises) out.premises.push_back(apply_subst(combined, p));

  for (const auto& g : goals()) {
    if (g.position == request.goal_position)
      out.tentative_goals.insert(out.tentative_goals.end(), out.premises.begin(), out.premises.end());
    else
      out.tentative_goals.push_back(g.goal);
  }
  out.match = std::move(*match);
  return out;
}

const Step& ProofSession::apply(const StepRequest& request) {
  auto pv = preview(request);
  if (!pv)
    throw EngineError(EngineErrorCode::NoMatch, "rule " + rule_label(spec_.rules[request.rule_index], request.rule_index) +
                                                    " does not match goal " + std::to_string(request.goal_position));
  if (!pv->unbound.empty()) {
    std::string names;
    for (const auto& v : pv->unbound) names += (names.empty() ? "" : ", ") + v;
    throw EngineError(EngineErrorCode::UnresolvedVariables, "no value for free variable(s) " + names, pv->unbound);
  }
  for (const auto& p : pv->premises) {
    if (auto v = check_well_formed(p, spec_.signature))
      throw EngineError(EngineErrorCode::IllFormed, "instantiated premise is ill formed: " + v->message,
                        {print_term(p, spec_.signature)});
  }

  const Rule& rule = spec_.rules[request.rule_index];
  ProofNode* leaf = open_leaf(request.goal_position);
  leaf->status = NodeStatus::Closed;
  leaf->rule_index = request.rule_index;
  leaf->rule_name = rule.name;
  leaf->step_index = history_.size();
  leaf->children.clear();
  for (auto& p : pv->premises) leaf->children.push_back(ProofNode{std::move(p)});

  // Bindings are stored in free-variable order, whatever order they arrived in.
  Substitution bindings;
  for (const auto& var : rule.free_variables()) bindings.bind(var, *request.free_bindings.find(var));
  history_.push_back(Step{request.goal_position, request.rule_index, std::move(pv->match), std::move(bindings)});
  return history_.back();
}

bool ProofSession::undo() {
  if (history_.empty()) return false;
  ProofNode* node = find_closed_by(roots_, history_.size() - 1);
  // Later steps are already undone, so the node's children are all open.
  node->status = NodeStatus::Open;
  node->rule_index.reset();
  node->rule_name.reset();
  node->step_index.reset();
  node->children.clear();
  history_.pop_back();
  return true;
}

ReplayResult replay(const ProblemSpec& spec, const std::vector<StepRequest>& steps) {
  ProofSession session(spec);
  for (std::size_t i = 0; i < steps.size(); ++i) {
    try {
      session.apply(steps[i]);
    } catch (const EngineError& e) {
      return ReplayFailure{i, e.code(), e.what()};
    }
  }
  return session;
}

std::vector<StepRequest> requests_of(const std::vector<Step>& history) {
  std::vector<StepRequest> out;
  out.reserve(history.size());
  for (const auto& s : history) out.push_back(s.request());
  return out;
}

}  // namespace axolotl
