// Shared helpers for the test binaries.

#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "axolotl/engine.hpp"
#include "axolotl/problem.hpp"
#include "axolotl/script.hpp"

namespace axolotl::test {

inline std::filesystem::path fixtures_dir() { return AXOLOTL_FIXTURES_DIR; }

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline ProblemSpec load_spec(const std::filesystem::path& path) {
  ParseOptions options;
  options.source_name = path.stem().string();
  auto result = parse_problem(read_file(path), options);
  if (!result.ok()) throw std::runtime_error("invalid fixture " + path.string() + ": " + result.errors.front().message);
  return std::move(*result.spec);
}

// `category/name` under fixtures/library.
inline ProblemSpec library_spec(const std::string& id) {
  return load_spec(fixtures_dir() / "library" / (id + ".axolotl"));
}

inline std::vector<StepRequest> script_requests(const std::string& name, const Signature& sig) {
  return requests_of(parse_script(read_file(fixtures_dir() / "scripts" / (name + ".script")), sig));
}

inline ProofSession replay_or_throw(const ProblemSpec& spec, const std::vector<StepRequest>& steps) {
  auto result = replay(spec, steps);
  if (auto* f = std::get_if<ReplayFailure>(&result))
    throw std::runtime_error("replay failed at step " + std::to_string(f->step_index) + ": " + f->message);
  return std::get<ProofSession>(std::move(result));
}

// Replays fixtures/scripts/<name>.script against fixtures/library/<id>.axolotl.
inline ProofSession replay_fixture(const std::string& id) {
  const auto spec = library_spec(id);
  const std::string name = id.substr(id.find('/') + 1);
  return replay_or_throw(spec, script_requests(name, spec.signature));
}

}  // namespace axolotl::test
