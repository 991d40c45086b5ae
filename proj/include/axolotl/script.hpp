// Proof scripts: one step per line.
//
//   step GOAL_POS RULE_INDEX (BIND VAR=TERM)*
//
// Indices are zero-based; GOAL_POS counts open goals depth-first left to
// right at the time the step runs. Lines starting with `#` are comments and
// blank lines are ignored. Terms use file syntax.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "axolotl/engine.hpp"

namespace axolotl {

struct ScriptStep {
  std::size_t line;  // 1-based source line
  StepRequest request;
};

class ScriptError : public std::runtime_error {
 public:
  ScriptError(std::size_t line, const std::string& message) : std::runtime_error(message), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

std::vector<ScriptStep> parse_script(std::string_view text, const Signature& sig);

std::vector<StepRequest> requests_of(const std::vector<ScriptStep>& steps);

// Script reproducing `history`, one line per step, LF-terminated.
std::string format_script(const std::vector<Step>& history, const Signature& sig);

}  // namespace axolotl
