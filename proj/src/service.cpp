#include "axolotl/service.hpp"

#include <algorithm>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include <httplib.h>
#include <json.hpp>

#include "axolotl/export.hpp"

namespace axolotl {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file_atomic(const fs::path& path, const std::string& contents) {
  fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << contents;
  }
  fs::rename(tmp, path);
}

std::string random_token() {
  std::random_device rd;
  std::ostringstream out;
  out << std::hex << std::setfill('0');
  for (int i = 0; i < 4; ++i) out << std::setw(8) << static_cast<std::uint32_t>(rd());
  return out.str();
}

std::string iso8601(std::chrono::system_clock::time_point tp) {
  const std::time_t t = std::chrono::system_clock::to_time_t(tp);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

std::chrono::system_clock::time_point parse_iso8601(const std::string& text) {
  std::tm tm{};
  std::istringstream in(text);
  in >> std::get_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  if (in.fail()) return std::chrono::system_clock::now();
  return std::chrono::system_clock::from_time_t(timegm(&tm));
}

// Error body and status for one failed request.
struct ApiError {
  int status;
  std::string code;
  std::string message;
  json details = json::array();
};

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, const ApiError& e) {
  send_json(res, e.status, json{{"code", e.code}, {"message", e.message}, {"details", e.details}});
}

ApiError from_engine(const EngineError& e) {
  json details = json::array();
  for (const auto& d : e.details()) details.push_back(d);
  switch (e.code()) {
    case EngineErrorCode::NoMatch: return {422, "no_match", e.what(), details};
    case EngineErrorCode::UnresolvedVariables: return {422, "unresolved_vars", e.what(), details};
    case EngineErrorCode::IllFormed: return {422, "ill_formed", e.what(), details};
    case EngineErrorCode::BadIndex: return {400, "bad_index", e.what(), details};
    case EngineErrorCode::BadBinding: return {400, "invalid_payload", e.what(), details};
    case EngineErrorCode::NothingToUndo: return {409, "nothing_to_undo", e.what(), details};
  }
  return {500, "internal", e.what(), details};
}

json term_json(const Term& t, const Signature& sig) {
  return json{{"display", print_term(t, sig, PrintMode::Display)}, {"file", print_term(t, sig)}};
}

std::string display_list(const std::vector<Term>& terms, const Signature& sig) {
  std::string out;
  for (const auto& t : terms) out += ", " + print_term(t, sig, PrintMode::Display);
  return out;
}

json rule_json(const Rule& rule, std::size_t index, const Signature& sig) {
  json premises = json::array();
  for (const auto& p : rule.premises) premises.push_back(print_term(p, sig, PrintMode::Display));
  return json{
      {"index", index},
      {"name", rule.name ? json(*rule.name) : json(nullptr)},
      {"label", rule_label(rule, index)},
      // Δ, conclusion ⇒ Δ, premises
      {"succinct", "Δ, " + print_term(rule.conclusion, sig, PrintMode::Display) + " ⇒ Δ" +
                       display_list(rule.premises, sig)},
      {"pretty", {{"premises", std::move(premises)}, {"conclusion", print_term(rule.conclusion, sig, PrintMode::Display)}}},
      {"free_variables", rule.free_variables()},
  };
}

json node_json(const ProofNode& n, const ProblemSpec& spec) {
  json children = json::array();
  for (const auto& c : n.children) children.push_back(node_json(c, spec));
  return json{
      {"goal", term_json(n.goal, spec.signature)},
      {"status", n.is_open() ? "open" : "closed"},
      {"rule_index", n.rule_index ? json(*n.rule_index) : json(nullptr)},
      {"label", n.rule_index ? json(rule_label(spec.rules[*n.rule_index], *n.rule_index)) : json(nullptr)},
      {"children", std::move(children)},
  };
}

// Binding payload: either [[var, term], ...] (order kept) or {var: term}.
Substitution bindings_from(const json& body, const Signature& sig) {
  Substitution out;
  if (!body.contains("bindings") || body["bindings"].is_null()) return out;
  const json& b = body["bindings"];
  auto add = [&](const std::string& var, const json& value) {
    if (!value.is_string()) throw std::invalid_argument("binding for `" + var + "` must be a string");
    if (!sig.is_variable(var)) throw std::invalid_argument("`" + var + "` is not a declared variable");
    Term t = [&] {
      try {
        return parse_term(value.get<std::string>(), sig);
      } catch (const TermParseError& e) {
        throw std::invalid_argument("binding for `" + var + "`: " + e.what());
      }
    }();
    if (!out.bind(var, std::move(t))) throw std::invalid_argument("`" + var + "` bound twice");
  };
  if (b.is_object()) {
    for (auto it = b.begin(); it != b.end(); ++it) add(it.key(), it.value());
  } else if (b.is_array()) {
    for (const auto& pair : b) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string())
        throw std::invalid_argument("bindings must be [variable, term] pairs");
      add(pair[0].get<std::string>(), pair[1]);
    }
  } else {
    throw std::invalid_argument("`bindings` must be an object or an array");
  }
  return out;
}

StepRequest request_from(const std::string& text, const Signature& sig) {
  json body;
  try {
    body = json::parse(text);
  } catch (const json::exception&) {
    throw std::invalid_argument("request body is not JSON");
  }
  if (!body.is_object()) throw std::invalid_argument("request body must be a JSON object");
  for (const char* field : {"goal_position", "rule_index"})
    if (!body.contains(field) || !body[field].is_number_unsigned())
      throw std::invalid_argument(std::string("`") + field + "` must be a non-negative integer");
  return {body["goal_position"].get<std::size_t>(), body["rule_index"].get<std::size_t>(), bindings_from(body, sig)};
}

}  // namespace

// ---------------------------------------------------------------------------
// Library

std::vector<LibraryProblem> bundled_problems() {
  std::vector<LibraryProblem> out;
  for (const auto& e : builtin_library()) out.push_back({e.category + "/" + e.spec.source_name, e.category, e.spec});
  return out;
}

std::vector<LibraryProblem> load_library_dir(const fs::path& dir, std::vector<std::string>& warnings) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".axolotl") files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  std::vector<LibraryProblem> out;
  for (const auto& path : files) {
    const fs::path rel = fs::relative(path, dir);
    const std::string category = rel.has_parent_path() ? rel.begin()->string() : "misc";
    ParseOptions options;
    options.source_name = path.stem().string();
    std::string text;
    try {
      text = read_file(path);
    } catch (const std::exception& e) {
      warnings.push_back(e.what());
      continue;
    }
    auto parsed = parse_problem(text, options);
    if (!parsed.ok()) {
      const auto& d = parsed.errors.front();
      warnings.push_back(path.string() + ":" + std::to_string(d.line) + ":" + std::to_string(d.column) + ": " +
                         to_string(d.kind) + ": " + d.message + " (skipped)");
      continue;
    }
    out.push_back({category + "/" + options.source_name, category, std::move(*parsed.spec)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Service

SessionService::SessionService(std::vector<LibraryProblem> library, std::optional<fs::path> state_dir)
    : library_(std::make_shared<const Library>(std::move(library))), state_dir_(std::move(state_dir)) {
  if (state_dir_) restore();
}

SessionService::~SessionService() = default;

std::shared_ptr<const SessionService::Library> SessionService::library() const {
  std::lock_guard lock(library_mutex_);
  return library_;
}

std::optional<LibraryProblem> SessionService::find_problem(const std::string& id) const {
  const auto lib = library();
  auto it = std::find_if(lib->begin(), lib->end(), [&](const LibraryProblem& p) { return p.id == id; });
  if (it == lib->end()) return std::nullopt;
  return *it;
}

std::shared_ptr<SessionService::Record> SessionService::find_session(const std::string& id) const {
  std::shared_lock lock(sessions_mutex_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

std::size_t SessionService::session_count() const {
  std::shared_lock lock(sessions_mutex_);
  return sessions_.size();
}

std::string SessionService::add_upload(ProblemSpec spec, const std::string& text, std::optional<std::string> id) {
  std::lock_guard lock(library_mutex_);
  if (!id) id = "upload-" + std::to_string(next_upload_++);
  spec.source_name = *id;
  auto next = std::make_shared<Library>(*library_);
  next->push_back({*id, "uploaded", std::move(spec)});
  library_ = std::move(next);
  if (state_dir_) write_file_atomic(*state_dir_ / "problems" / (*id + ".axolotl"), text);
  return *id;
}

std::shared_ptr<SessionService::Record> SessionService::create_session(const LibraryProblem& problem,
                                                                       std::optional<std::string> id) {
  auto record = std::make_shared<Record>(id.value_or(random_token()), problem.id, ProofSession(problem.spec));
  record->created = record->updated = std::chrono::system_clock::now();
  std::unique_lock lock(sessions_mutex_);
  sessions_[record->id] = record;
  return record;
}

void SessionService::persist(const Record& record) const {
  if (!state_dir_) return;
  const json doc{
      {"id", record.id},
      {"problem_id", record.problem_id},
      {"observation_mode", record.observation_mode},
      {"created", iso8601(record.created)},
      {"updated", iso8601(record.updated)},
      {"proof", json::parse(to_structured(record.session))},
  };
  write_file_atomic(*state_dir_ / "sessions" / (record.id + ".json"), doc.dump(2));
}

void SessionService::restore() {
  const fs::path problems = *state_dir_ / "problems";
  if (fs::exists(problems)) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(problems))
      if (e.path().extension() == ".axolotl") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& path : files) {
      const std::string id = path.stem().string();
      auto parsed = parse_problem(read_file(path));
      if (!parsed.ok()) {
        restore_warnings_.push_back("stored problem " + path.string() + " is invalid; skipped");
        continue;
      }
      add_upload(std::move(*parsed.spec), read_file(path), id);
      if (id.starts_with("upload-")) {
        try {
          next_upload_ = std::max(next_upload_, std::stoul(id.substr(7)) + 1);
        } catch (const std::exception&) {
        }
      }
    }
  }
  const fs::path sessions = *state_dir_ / "sessions";
  if (!fs::exists(sessions)) return;
  for (const auto& e : fs::directory_iterator(sessions)) {
    if (e.path().extension() != ".json") continue;
    try {
      const json doc = json::parse(read_file(e.path()));
      const auto problem = find_problem(doc.at("problem_id").get<std::string>());
      if (!problem) throw std::runtime_error("unknown problem " + doc.at("problem_id").dump());
      auto record = create_session(*problem, doc.at("id").get<std::string>());
      record->session = from_structured(doc.at("proof").dump());
      record->observation_mode = doc.at("observation_mode").get<bool>();
      record->created = parse_iso8601(doc.at("created").get<std::string>());
      record->updated = parse_iso8601(doc.at("updated").get<std::string>());
    } catch (const std::exception& ex) {
      restore_warnings_.push_back("stored session " + e.path().string() + " could not be restored: " + ex.what());
    }
  }
}

struct SessionService::Handlers {
  static json state(const Record& r) {
    const ProofSession& s = r.session;
    const ProblemSpec& spec = s.spec();
    json goals = json::array();
    for (const auto& g : s.goals()) {
      json entry = term_json(g.goal, spec.signature);
      entry["position"] = g.position;
      goals.push_back(std::move(entry));
    }
    json rules = json::array();
    for (std::size_t i = 0; i < spec.rules.size(); ++i) rules.push_back(rule_json(spec.rules[i], i, spec.signature));
    json tree = json::array();
    for (const auto& root : s.roots()) tree.push_back(node_json(root, spec));
    return json{
        {"session_id", r.id},
        {"problem_id", r.problem_id},
        {"goals", std::move(goals)},
        {"rules", std::move(rules)},
        {"tree", std::move(tree)},
        {"complete", s.is_complete()},
        {"observation_mode", r.observation_mode},
        {"history_length", s.history().size()},
    };
  }

  static json preview(const Record& r, const StepRequest& request) {
    const ProblemSpec& spec = r.session.spec();
    const Signature& sig = spec.signature;
    auto pv = r.session.preview(request);
    if (!pv) return json{{"status", "no_match"}, {"message", "the rule's conclusion does not match the goal"}};

    json trace = json::array();
    for (const auto& e : pv->match.trace)
      trace.push_back(json{{"variable", e.pattern.name()},
                           {"pattern", print_term(e.pattern, sig, PrintMode::Display)},
                           {"subterm", term_json(e.subterm, sig)}});
    json premises = json::array();
    for (const auto& p : pv->premises) premises.push_back(term_json(p, sig));
    json tentative = json::array();
    for (const auto& g : pv->tentative_goals) tentative.push_back(term_json(g, sig));
    const Rule& rule = spec.rules[request.rule_index];
    const Term goal = apply_subst(pv->match.substitution, rule.conclusion);
    return json{
        {"status", "ok"},
        {"conclusion", print_term(rule.conclusion, sig, PrintMode::Display)},
        {"match_trace", std::move(trace)},
        {"unbound_vars", pv->unbound},
        {"instantiated_rule", {{"premises", std::move(premises)}, {"conclusion", term_json(goal, sig)}}},
        {"tentative_goals", std::move(tentative)},
    };
  }
};

void SessionService::mount(httplib::Server& server) {
  using httplib::Request;
  using httplib::Response;

  // Runs `fn` with the record locked; maps exceptions onto error bodies.
  auto with_session = [this](const Request& req, Response& res, auto&& fn) {
    auto record = find_session(req.matches[1]);
    if (!record) {
      send_error(res, {404, "not_found", "no session `" + std::string(req.matches[1]) + "`"});
      return;
    }
    std::lock_guard lock(record->mutex);
    try {
      fn(*record);
    } catch (const EngineError& e) {
      send_error(res, from_engine(e));
    } catch (const std::invalid_argument& e) {
      send_error(res, {400, "invalid_payload", e.what()});
    } catch (const ExportError& e) {
      send_error(res, {422, "export_error", e.what()});
    }
  };

  server.Get("/library", [this](const Request&, Response& res) {
    const auto lib = library();
    // Group by category, keeping first-appearance order of categories.
    std::vector<std::string> categories;
    for (const auto& p : *lib)
      if (std::find(categories.begin(), categories.end(), p.category) == categories.end())
        categories.push_back(p.category);
    json out = json::array();
    for (const auto& c : categories)
      for (const auto& p : *lib)
        if (p.category == c) {
          std::string preview;
          for (const auto& g : p.spec.goals)
            preview += (preview.empty() ? "" : "; ") + print_term(g, p.spec.signature, PrintMode::Display);
          out.push_back(json{{"id", p.id}, {"category", p.category}, {"name", p.spec.source_name},
                             {"goal_preview", preview}});
        }
    send_json(res, 200, out);
  });

  server.Post("/problems", [this](const Request& req, Response& res) {
    auto parsed = parse_problem(req.body);
    if (!parsed.ok()) {
      json details = json::array();
      for (const auto& d : parsed.errors)
        details.push_back(json{{"line", d.line}, {"column", d.column}, {"kind", to_string(d.kind)}, {"message", d.message}});
      send_error(res, {422, "invalid_payload", "problem file is invalid", std::move(details)});
      return;
    }
    const std::string id = add_upload(std::move(*parsed.spec), req.body);
    send_json(res, 201, json{{"id", id}});
  });

  server.Post("/sessions", [this](const Request& req, Response& res) {
    json body;
    try {
      body = json::parse(req.body);
    } catch (const json::exception&) {
      send_error(res, {400, "invalid_payload", "request body is not JSON"});
      return;
    }
    if (!body.is_object() || !body.contains("problem_id") || !body["problem_id"].is_string()) {
      send_error(res, {400, "invalid_payload", "`problem_id` must be a string"});
      return;
    }
    const auto problem = find_problem(body["problem_id"].get<std::string>());
    if (!problem) {
      send_error(res, {404, "not_found", "no problem `" + body["problem_id"].get<std::string>() + "`"});
      return;
    }
    auto record = create_session(*problem);
    std::lock_guard lock(record->mutex);
    persist(*record);
    send_json(res, 201, json{{"session_id", record->id}, {"state", Handlers::state(*record)}});
  });

  const std::string session = R"(/sessions/([0-9A-Za-z_-]+))";

  server.Get(session, [=](const Request& req, Response& res) {
    with_session(req, res, [&](Record& r) { send_json(res, 200, Handlers::state(r)); });
  });

  server.Patch(session, [=, this](const Request& req, Response& res) {
    with_session(req, res, [&](Record& r) {
      json body;
      try {
        body = json::parse(req.body);
      } catch (const json::exception&) {
        throw std::invalid_argument("request body is not JSON");
      }
      if (!body.is_object() || !body.contains("observation_mode") || !body["observation_mode"].is_boolean())
        throw std::invalid_argument("`observation_mode` must be a boolean");
      r.observation_mode = body["observation_mode"].get<bool>();
      r.updated = std::chrono::system_clock::now();
      persist(r);
      send_json(res, 200, Handlers::state(r));
    });
  });

  server.Post(session + "/preview", [=](const Request& req, Response& res) {
    with_session(req, res, [&](Record& r) {
      const StepRequest request = request_from(req.body, r.session.spec().signature);
      send_json(res, 200, Handlers::preview(r, request));
    });
  });

  server.Post(session + "/apply", [=, this](const Request& req, Response& res) {
    with_session(req, res, [&](Record& r) {
      const StepRequest request = request_from(req.body, r.session.spec().signature);
      r.session.apply(request);
      r.updated = std::chrono::system_clock::now();
      persist(r);
      send_json(res, 200, json{{"completed", r.session.is_complete()}, {"state", Handlers::state(r)}});
    });
  });

  server.Post(session + "/undo", [=, this](const Request& req, Response& res) {
    with_session(req, res, [&](Record& r) {
      if (!r.session.undo()) throw EngineError(EngineErrorCode::NothingToUndo, "there are no rule applications to undo");
      r.updated = std::chrono::system_clock::now();
      persist(r);
      send_json(res, 200, Handlers::state(r));
    });
  });

  server.Get(session + "/export", [=](const Request& req, Response& res) {
    with_session(req, res, [&](Record& r) {
      const std::string name = req.has_param("format") ? req.get_param_value("format") : "structured";
      const auto format = parse_export_format(name);
      if (!format) throw std::invalid_argument("unknown export format `" + name + "`");
      const std::string doc = export_session(r.session, *format);
      res.status = 200;
      switch (*format) {
        case ExportFormat::Latex: res.set_content(doc, "application/x-tex"); break;
        case ExportFormat::Text: res.set_content(doc, "text/plain; charset=utf-8"); break;
        case ExportFormat::Structured: res.set_content(doc, "application/json"); break;
      }
    });
  });
}

}  // namespace axolotl
