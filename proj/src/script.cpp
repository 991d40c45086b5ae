#include "axolotl/script.hpp"

#include <charconv>
#include <sstream>

namespace axolotl {

namespace {

std::size_t parse_index(std::string_view text, std::size_t line, const char* what) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
    throw ScriptError(line, std::string(what) + " `" + std::string(text) + "` is not a non-negative integer");
  return value;
}

}  // namespace

std::vector<ScriptStep> parse_script(std::string_view text, const Signature& sig) {
  std::vector<ScriptStep> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::istringstream fields(raw);
    std::vector<std::string> tokens;
    for (std::string tok; fields >> tok;) tokens.push_back(tok);
    if (tokens.empty() || tokens.front().starts_with('#')) continue;

    if (tokens.front() != "step") throw ScriptError(line, "expected `step`, found `" + tokens.front() + "`");
    if (tokens.size() < 3) throw ScriptError(line, "expected `step GOAL_POS RULE_INDEX`");

    ScriptStep step{line, {}};
    step.request.goal_position = parse_index(tokens[1], line, "goal position");
    step.request.rule_index = parse_index(tokens[2], line, "rule index");
    for (std::size_t i = 3; i < tokens.size(); i += 2) {
      if (tokens[i] != "BIND") throw ScriptError(line, "expected `BIND`, found `" + tokens[i] + "`");
      if (i + 1 >= tokens.size()) throw ScriptError(line, "`BIND` needs `VAR=TERM`");
      const std::string& binding = tokens[i + 1];
      const auto eq = binding.find('=');
      if (eq == std::string::npos || eq == 0) throw ScriptError(line, "malformed binding `" + binding + "`");
      const std::string var = binding.substr(0, eq);
      if (!sig.is_variable(var)) throw ScriptError(line, "`" + var + "` is not a declared variable");
      try {
        if (!step.request.free_bindings.bind(var, parse_term(std::string_view(binding).substr(eq + 1), sig)))
          throw ScriptError(line, "`" + var + "` bound twice");
      } catch (const TermParseError& e) {
        throw ScriptError(line, "binding for `" + var + "`: " + e.what());
      }
    }
    out.push_back(std::move(step));
  }
  return out;
}

std::vector<StepRequest> requests_of(const std::vector<ScriptStep>& steps) {
  std::vector<StepRequest> out;
  out.reserve(steps.size());
  for (const auto& s : steps) out.push_back(s.request);
  return out;
}

std::string format_script(const std::vector<Step>& history, const Signature& sig) {
  std::string out;
  for (const auto& s : history) {
    out += "step " + std::to_string(s.goal_position) + " " + std::to_string(s.rule_index);
    for (const auto& [var, value] : s.free_bindings.bindings()) out += " BIND " + var + "=" + print_term(value, sig);
    out += '\n';
  }
  return out;
}

}  // namespace axolotl
