// Backward proof construction over a ProblemSpec.
//
// A session holds one proof tree per initial goal. The open goals are the
// open leaves in depth-first left-to-right order; a goal position is an index
// into that order and is recomputed after every mutation.

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "axolotl/problem.hpp"
#include "axolotl/term.hpp"

namespace axolotl {

enum class NodeStatus { Open, Closed };

struct ProofNode {
  Term goal;
  NodeStatus status = NodeStatus::Open;
  std::optional<std::size_t> rule_index;
  std::optional<std::string> rule_name;
  std::optional<std::size_t> step_index;  // history entry that closed this node
  std::vector<ProofNode> children;

  explicit ProofNode(Term g) : goal(std::move(g)) {}

  bool is_open() const { return status == NodeStatus::Open; }

  friend bool operator==(const ProofNode&, const ProofNode&) = default;
};

// What the user asks for: a goal, a rule, and values for the rule's free
// premise variables.
struct StepRequest {
  std::size_t goal_position = 0;
  std::size_t rule_index = 0;
  Substitution free_bindings;

  friend bool operator==(const StepRequest&, const StepRequest&) = default;
};

// A history entry. Keeps the conclusion match so playback never re-derives it.
struct Step {
  std::size_t goal_position = 0;
  std::size_t rule_index = 0;
  MatchReport match;
  Substitution free_bindings;

  StepRequest request() const { return {goal_position, rule_index, free_bindings}; }

  friend bool operator==(const Step&, const Step&) = default;
};

enum class EngineErrorCode { NoMatch, UnresolvedVariables, IllFormed, BadIndex, BadBinding, NothingToUndo };

const char* to_string(EngineErrorCode code);

class EngineError : public std::runtime_error {
 public:
  EngineError(EngineErrorCode code, const std::string& message, std::vector<std::string> details = {})
      : std::runtime_error(message), code_(code), details_(std::move(details)) {}

  EngineErrorCode code() const { return code_; }
  // Unbound variable names, or the offending premise in file syntax.
  const std::vector<std::string>& details() const { return details_; }

 private:
  EngineErrorCode code_;
  std::vector<std::string> details_;
};

struct ApplicationPreview {
  MatchReport match;                  // conclusion against the selected goal
  std::vector<std::string> unbound;   // free variables still lacking a value
  std::vector<Term> premises;         // instantiated; unbound variables become named holes
  std::vector<Term> tentative_goals;  // whole goal list after the step
};

struct GoalEntry {
  std::size_t position;
  Term goal;
};

class ProofSession {
 public:
  explicit ProofSession(ProblemSpec spec);

  const ProblemSpec& spec() const { return spec_; }
  const std::vector<ProofNode>& roots() const { return roots_; }
  const std::vector<Step>& history() const { return history_; }

  std::vector<GoalEntry> goals() const;
  std::size_t open_count() const;
  bool is_complete() const { return open_count() == 0; }

  // nullopt when the rule's conclusion does not match the goal. Throws
  // EngineError(BadIndex / BadBinding) on invalid arguments.
  std::optional<ApplicationPreview> preview(const StepRequest& request) const;

  // Throws EngineError; the session is unchanged on failure.
  const Step& apply(const StepRequest& request);

  // Returns false when there is nothing to undo.
  bool undo();

  friend bool operator==(const ProofSession&, const ProofSession&) = default;

 private:
  ProofNode* open_leaf(std::size_t position);
  const ProofNode* open_leaf(std::size_t position) const;
  const Rule& rule_at(std::size_t index) const;
  void check_bindings(const Rule& rule, const Substitution& bindings) const;

  ProblemSpec spec_;
  std::vector<ProofNode> roots_;
  std::vector<Step> history_;
};

ProofSession new_session(ProblemSpec spec);

struct ReplayFailure {
  std::size_t step_index;  // zero-based
  EngineErrorCode code;
  std::string message;
};

using ReplayResult = std::variant<ProofSession, ReplayFailure>;

ReplayResult replay(const ProblemSpec& spec, const std::vector<StepRequest>& steps);
std::vector<StepRequest> requests_of(const std::vector<Step>& history);

// Visits every node in depth-first pre-order.
template <typename Fn>
void for_each_node(const std::vector<ProofNode>& roots, Fn&& fn, std::size_t depth = 0) {
  for (const auto& n : roots) {
    fn(n, depth);
    for_each_node(n.children, fn, depth + 1);
  }
}

}  // namespace axolotl
