// axolotl: check problem files, replay proof scripts, export proofs, serve the API.
//
// Exit codes: 0 success, 1 domain failure, 2 environment failure.

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <httplib.h>

#include "axolotl/export.hpp"
#include "axolotl/problem.hpp"
#include "axolotl/script.hpp"
#include "axolotl/service.hpp"

namespace fs = std::filesystem;
using namespace axolotl;

namespace {

constexpr int kOk = 0;
constexpr int kDomainFailure = 1;
constexpr int kEnvironmentFailure = 2;

// Thrown for I/O problems; maps to exit 2.
struct EnvironmentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw EnvironmentError("cannot read `" + path + "`");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void print_diagnostics(const std::string& file, const std::vector<ParseDiagnostic>& diags, const char* severity) {
  for (const auto& d : diags)
    std::cerr << file << ":" << d.line << ":" << d.column << ": " << severity << to_string(d.kind) << ": "
              << d.message << "\n";
}

// Parses and validates a problem file; nullopt after printing diagnostics.
std::optional<ProblemSpec> load_problem(const std::string& file, bool lenient) {
  ParseOptions options;
  options.lenient = lenient;
  options.source_name = fs::path(file).stem().string();
  auto result = parse_problem(read_file(file), options);
  print_diagnostics(file, result.warnings, "warning: ");
  print_diagnostics(file, result.errors, "");
  return std::move(result.spec);
}

// Replays `script` against `file`; prints failures and returns nullopt on error.
std::optional<ProofSession> run_script(const std::string& file, const std::string& script, bool lenient) {
  auto spec = load_problem(file, lenient);
  if (!spec) return std::nullopt;
  std::vector<ScriptStep> steps;
  try {
    steps = parse_script(read_file(script), spec->signature);
  } catch (const ScriptError& e) {
    std::cerr << script << ":" << e.line() << ": " << e.what() << "\n";
    return std::nullopt;
  }
  auto result = replay(*spec, requests_of(steps));
  if (auto* failure = std::get_if<ReplayFailure>(&result)) {
    std::cerr << script << ":" << steps[failure->step_index].line << ": step " << failure->step_index + 1
              << " failed: " << to_string(failure->code) << ": " << failure->message << "\n";
    return std::nullopt;
  }
  return std::get<ProofSession>(std::move(result));
}

int cmd_check(const std::string& file, bool lenient) {
  return load_problem(file, lenient) ? kOk : kDomainFailure;
}

int cmd_prove(const std::string& file, const std::string& script, bool lenient) {
  auto session = run_script(file, script, lenient);
  if (!session) return kDomainFailure;
  const auto steps = session->history().size();
  if (session->is_complete()) {
    std::cout << steps << " steps, complete\n";
    return kOk;
  }
  std::cout << steps << " steps, complete=false, open=" << session->open_count() << "\n";
  return kDomainFailure;
}

int cmd_export(const std::string& file, const std::optional<std::string>& script, const std::string& format_name,
               const std::optional<std::string>& out_path, bool lenient) {
  const auto format = parse_export_format(format_name);
  if (!format) {
    std::cerr << "unknown export format `" << format_name << "`\n";
    return kDomainFailure;
  }
  std::optional<ProofSession> session;
  if (script) {
    session = run_script(file, *script, lenient);
  } else if (auto spec = load_problem(file, lenient)) {
    session.emplace(std::move(*spec));
  }
  if (!session) return kDomainFailure;

  std::string doc;
  try {
    doc = export_session(*session, *format);
  } catch (const ExportError& e) {
    std::cerr << "export failed: " << e.what() << "\n";
    return kDomainFailure;
  }
  if (!out_path) {
    std::cout << doc;
    return kOk;
  }
  std::ofstream out(*out_path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << doc)) throw EnvironmentError("cannot write `" + *out_path + "`");
  return kOk;
}

int cmd_serve(const std::string& listen, const std::optional<std::string>& library_dir,
              const std::optional<std::string>& state_dir) {
  const auto colon = listen.rfind(':');
  if (colon == std::string::npos) {
    std::cerr << "--listen expects HOST:PORT\n";
    return kEnvironmentFailure;
  }
  const std::string host = listen.substr(0, colon);
  int port = 0;
  try {
    port = std::stoi(listen.substr(colon + 1));
  } catch (const std::exception&) {
    std::cerr << "invalid port in `" << listen << "`\n";
    return kEnvironmentFailure;
  }

  std::vector<LibraryProblem> library;
  if (library_dir) {
    if (!fs::is_directory(*library_dir)) throw EnvironmentError("`" + *library_dir + "` is not a directory");
    std::vector<std::string> warnings;
    library = load_library_dir(*library_dir, warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  } else {
    library = bundled_problems();
  }

  // Block the shutdown signals in every thread; a dedicated waiter stops the server.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  SessionService service(std::move(library), state_dir ? std::optional<fs::path>(*state_dir) : std::nullopt);
  for (const auto& w : service.restore_warnings()) std::cerr << "warning: " << w << "\n";
  httplib::Server server;
  service.mount(server);

  if (port == 0) {
    port = server.bind_to_any_port(host);
    if (port < 0) {
      std::cerr << "cannot bind " << host << "\n";
      return kEnvironmentFailure;
    }
  } else if (!server.bind_to_port(host, port)) {
    std::cerr << "cannot bind " << listen << "\n";
    return kEnvironmentFailure;
  }
  std::cout << "listening on " << host << ":" << port << std::endl;

  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    server.stop();
  });
  const bool ok = server.listen_after_bind();
  if (waiter.joinable()) {
    // listen returned without a signal (unexpected failure): release the waiter.
    if (!ok) pthread_kill(waiter.native_handle(), SIGTERM);
    waiter.join();
  }
  return ok ? kOk : kEnvironmentFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AXolotl-style backward proof assistant"};
  app.require_subcommand(1);

  bool lenient = false;
  std::string file, script, format = "structured", listen = "127.0.0.1:8080";
  std::optional<std::string> out_path, export_script, library_dir, state_dir;

  auto* check = app.add_subcommand("check", "Validate a problem file");
  check->add_option("file", file, "Problem file")->required();
  check->add_flag("--lenient", lenient, "Tolerate a trailing newline and CRLF line endings");

  auto* prove = app.add_subcommand("prove", "Replay a proof script and report completion");
  prove->add_option("file", file, "Problem file")->required();
  prove->add_option("script", script, "Proof script")->required();
  prove->add_flag("--lenient", lenient, "Tolerate a trailing newline and CRLF line endings");

  auto* exp = app.add_subcommand("export", "Replay a proof script and export the proof");
  exp->add_option("file", file, "Problem file")->required();
  exp->add_option("script", export_script, "Proof script (omit for a fresh session)");
  exp->add_option("--format", format, "latex, text or structured")
      ->check(CLI::IsMember({"latex", "text", "structured"}));
  exp->add_option("--out", out_path, "Output file (default: standard output)");
  exp->add_flag("--lenient", lenient, "Tolerate a trailing newline and CRLF line endings");

  auto* serve = app.add_subcommand("serve", "Run the HTTP session service");
  serve->add_option("--listen", listen, "HOST:PORT (port 0 picks a free port)");
  serve->add_option("--library", library_dir, "Directory of .axolotl files (default: bundled library)");
  serve->add_option("--state-dir", state_dir, "Persist uploads and sessions in this directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kEnvironmentFailure;
  }

  try {
    if (*check) return cmd_check(file, lenient);
    if (*prove) return cmd_prove(file, script, lenient);
    if (*exp) return cmd_export(file, export_script, format, out_path, lenient);
    if (*serve) return cmd_serve(listen, library_dir, state_dir);
  } catch (const EnvironmentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kEnvironmentFailure;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kEnvironmentFailure;
  }
  return kDomainFailure;
}
