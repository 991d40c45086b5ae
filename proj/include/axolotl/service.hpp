// HTTP/JSON session service.
//
// Endpoints:
//   GET    /library
//   POST   /problems                 (text/plain problem file)
//   POST   /sessions                 {problem_id}
//   GET    /sessions/{id}
//   PATCH  /sessions/{id}            {observation_mode}
//   POST   /sessions/{id}/preview    {goal_position, rule_index, bindings}
//   POST   /sessions/{id}/apply      {goal_position, rule_index, bindings}
//   POST   /sessions/{id}/undo
//   GET    /sessions/{id}/export?format=latex|text|structured
//
// Errors are `{code, message, details}`. Mutations of one session are
// serialized by a per-session mutex; distinct sessions never contend.

#pragma once

#include <chrono>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "axolotl/engine.hpp"
#include "axolotl/problem.hpp"

namespace httplib {
class Server;
}

namespace axolotl {

struct LibraryProblem {
  std::string id;  // "category/name", or "upload-N"
  std::string category;
  ProblemSpec spec;
};

std::vector<LibraryProblem> bundled_problems();

// Loads every `.axolotl` file under `dir`; the category is the first
// directory component below `dir`. Invalid files are skipped and described
// in `warnings`.
std::vector<LibraryProblem> load_library_dir(const std::filesystem::path& dir, std::vector<std::string>& warnings);

class SessionService {
 public:
  // With a state directory, uploads and sessions are written through to disk
  // and reloaded on construction.
  explicit SessionService(std::vector<LibraryProblem> library,
                          std::optional<std::filesystem::path> state_dir = std::nullopt);
  ~SessionService();

  SessionService(const SessionService&) = delete;
  SessionService& operator=(const SessionService&) = delete;

  void mount(httplib::Server& server);

  std::size_t session_count() const;

  // Problems that could not be restored from the state directory.
  const std::vector<std::string>& restore_warnings() const { return restore_warnings_; }

 private:
  struct Record {
    std::mutex mutex;
    std::string id;
    std::string problem_id;
    ProofSession session;
    bool observation_mode = true;
    std::chrono::system_clock::time_point created;
    std::chrono::system_clock::time_point updated;

    Record(std::string id, std::string problem_id, ProofSession s)
        : id(std::move(id)), problem_id(std::move(problem_id)), session(std::move(s)) {}
  };

  using Library = std::vector<LibraryProblem>;

  std::shared_ptr<const Library> library() const;
  std::optional<LibraryProblem> find_problem(const std::string& id) const;
  std::shared_ptr<Record> find_session(const std::string& id) const;
  std::string add_upload(ProblemSpec spec, const std::string& text, std::optional<std::string> id = std::nullopt);
  std::shared_ptr<Record> create_session(const LibraryProblem& problem, std::optional<std::string> id = std::nullopt);

  void persist(const Record& record) const;
  void restore();

  struct Handlers;
  friend struct Handlers;

  mutable std::mutex library_mutex_;
  std::shared_ptr<const Library> library_;
  std::size_t next_upload_ = 1;

  mutable std::shared_mutex sessions_mutex_;
  std::unordered_map<std::string, std::shared_ptr<Record>> sessions_;

  std::optional<std::filesystem::path> state_dir_;
  std::vector<std::string> restore_warnings_;
};

}  // namespace axolotl
