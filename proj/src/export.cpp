#include "axolotl/export.hpp"

#include <json.hpp>

namespace axolotl {

using ordered_json = nlohmann::ordered_json;

std::optional<ExportFormat> parse_export_format(std::string_view name) {
  if (name == "latex") return ExportFormat::Latex;
  if (name == "text") return ExportFormat::Text;
  if (name == "structured") return ExportFormat::Structured;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// LaTeX

namespace {

std::string latex_name(const std::string& name) { return name.size() == 1 ? name : "\\mathit{" + name + "}"; }

void latex_list(const Term& t, const Signature& sig, std::vector<std::string>& out) {
  const Term* cur = &t;
  while (cur->is_symbol(kCons) && cur->arity() == 2) {
    out.push_back(latex_term(cur->args()[0], sig));
    cur = &cur->args()[1];
  }
  if (!cur->is_symbol(kEmpty)) out.push_back(latex_term(*cur, sig));
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += sep;
    out += items[i];
  }
  return out;
}

std::string latex_label(const std::string& label) {
  std::string out;
  for (std::size_t i = 0; i < label.size();) {
    const std::string_view rest = std::string_view(label).substr(i);
    if (rest.starts_with("→")) {
      out += "$\\rightarrow$";
      i += std::string_view("→").size();
    } else if (rest.starts_with("⊃")) {
      out += "$\\supset$";
      i += std::string_view("⊃").size();
    } else if (label[i] == '_' || label[i] == '#') {
      out += '\\';
      out += label[i++];
    } else {
      out += label[i++];
    }
  }
  return out;
}

const char* inference_command(std::size_t premises) {
  switch (premises) {
    case 1: return "\\UnaryInfC";
    case 2: return "\\BinaryInfC";
    case 3: return "\\TrinaryInfC";
    case 4: return "\\QuaternaryInfC";
    case 5: return "\\QuinaryInfC";
    default: return nullptr;
  }
}

void latex_node(const ProofNode& node, const ProofSession& session, std::size_t depth, std::string& out) {
  const std::string indent(2 * depth, ' ');
  const std::string goal = "$" + latex_term(node.goal, session.spec().signature) + "$";
  if (node.is_open()) {
    out += indent + "\\AxiomC{?}\n";
    out += indent + "\\UnaryInfC{" + goal + "}\n";
    return;
  }
  if (node.children.empty()) {
    out += indent + "\\AxiomC{" + goal + "}\n";
    return;
  }
  const std::string label = rule_label(session.spec().rules[*node.rule_index], *node.rule_index);
  const char* command = inference_command(node.children.size());
  if (command == nullptr)
    throw ExportError("rule " + label + " has " + std::to_string(node.children.size()) +
                      " premises; LaTeX export supports at most " + std::to_string(kMaxLatexPremises));
  for (const auto& child : node.children) latex_node(child, session, depth + 1, out);
  out += indent + "\\RightLabel{" + latex_label(label) + "}\n";
  out += indent + command + "{" + goal + "}\n";
}

}  // namespace

std::string latex_term(const Term& t, const Signature& sig) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      return latex_name(t.name());
    case Term::Kind::Hole:
      return (t.name().empty() ? std::string("\\square") : latex_name(t.name()) + "?");
    case Term::Kind::Application:
      break;
  }
  if (t.is_symbol(kSequent) && t.arity() == 2) {
    std::vector<std::string> lhs, rhs;
    latex_list(t.args()[0], sig, lhs);
    latex_list(t.args()[1], sig, rhs);
    std::string out = join(lhs, ", ");
    out += lhs.empty() ? "\\vdash" : " \\vdash";
    if (!rhs.empty()) out += " " + join(rhs, ", ");
    return out;
  }
  if (t.is_symbol(kEmpty)) return "\\epsilon";
  if (t.is_symbol(kCons) && t.arity() == 2) {
    std::vector<std::string> items;
    latex_list(t, sig, items);
    return "[" + join(items, ", ") + "]";
  }
  const FunctionDecl* decl = sig.function(t.name());
  if (decl != nullptr && decl->infix && t.arity() == 2)
    return "(" + latex_term(t.args()[0], sig) + " \\mathbin{" + latex_name(t.name()) + "} " +
           latex_term(t.args()[1], sig) + ")";
  std::string out = latex_name(t.name());
  if (t.arity() == 0) return out;
  std::vector<std::string> args;
  for (const auto& a : t.args()) args.push_back(latex_term(a, sig));
  return out + "(" + join(args, ", ") + ")";
}

std::string to_latex(const ProofSession& session) {
  std::string body;
  for (const auto& root : session.roots()) {
    body += "\\begin{prooftree}\n";
    latex_node(root, session, 0, body);
    body += "\\end{prooftree}\n";
  }
  std::string out;
  out += "\\documentclass{article}\n";
  out += "\\usepackage[a2paper]{geometry}\n";
  out += "\\usepackage{amssymb}\n";
  out += "\\usepackage{bussproofs}\n";
  out += "\\begin{document}\n";
  out += body;
  out += "\\end{document}\n";
  return out;
}

// ---------------------------------------------------------------------------
// Text

std::string to_text(const ProofSession& session) {
  std::string out;
  const auto& spec = session.spec();
  for_each_node(session.roots(), [&](const ProofNode& n, std::size_t depth) {
    out += std::string(2 * depth, ' ');
    if (n.is_open())
      out += "? ";
    else
      out += "[" + rule_label(spec.rules[*n.rule_index], *n.rule_index) + "] ";
    out += print_term(n.goal, spec.signature, PrintMode::Display);
    out += '\n';
  });
  return out;
}

// ---------------------------------------------------------------------------
// Structured

namespace {

ordered_json substitution_json(const Substitution& s, const Signature& sig) {
  ordered_json out = ordered_json::array();
  for (const auto& [var, value] : s.bindings()) out.push_back({var, print_term(value, sig)});
  return out;
}

ordered_json node_json(const ProofNode& n, const Signature& sig) {
  ordered_json out;
  out["goal"] = print_term(n.goal, sig);
  out["status"] = n.is_open() ? "open" : "closed";
  out["rule_index"] = n.rule_index ? ordered_json(*n.rule_index) : ordered_json(nullptr);
  out["rule_name"] = n.rule_name ? ordered_json(*n.rule_name) : ordered_json(nullptr);
  out["step"] = n.step_index ? ordered_json(*n.step_index) : ordered_json(nullptr);
  ordered_json children = ordered_json::array();
  for (const auto& c : n.children) children.push_back(node_json(c, sig));
  out["children"] = std::move(children);
  return out;
}

Substitution substitution_from(const ordered_json& j, const Signature& sig) {
  Substitution out;
  for (const auto& pair : j) {
    const auto var = pair.at(0).get<std::string>();
    if (!out.bind(var, parse_term(pair.at(1).get<std::string>(), sig)))
      throw ExportError("variable `" + var + "` bound twice");
  }
  return out;
}

}  // namespace

std::string to_structured(const ProofSession& session) {
  const auto& spec = session.spec();
  const auto& sig = spec.signature;
  ordered_json doc;
  doc["version"] = kStructuredVersion;
  doc["spec"] = {{"name", spec.source_name}, {"text", serialize_problem(spec)}};

  ordered_json tree = ordered_json::array();
  for (const auto& r : session.roots()) tree.push_back(node_json(r, sig));
  doc["tree"] = std::move(tree);

  ordered_json history = ordered_json::array();
  for (const auto& step : session.history()) {
    ordered_json trace = ordered_json::array();
    for (const auto& e : step.match.trace) trace.push_back({print_term(e.pattern, sig), print_term(e.subterm, sig)});
    history.push_back({
        {"goal_position", step.goal_position},
        {"rule_index", step.rule_index},
        {"bindings", substitution_json(step.free_bindings, sig)},
        {"match", {{"substitution", substitution_json(step.match.substitution, sig)}, {"trace", std::move(trace)}}},
    });
  }
  doc["history"] = std::move(history);
  return doc.dump(2) + "\n";
}

ProofSession from_structured(std::string_view text) {
  try {
    const auto doc = ordered_json::parse(text);
    if (doc.at("version").get<int>() != kStructuredVersion)
      throw ExportError("unsupported structured format version " + doc.at("version").dump());

    ParseOptions options;
    options.source_name = doc.at("spec").at("name").get<std::string>();
    auto parsed = parse_problem(doc.at("spec").at("text").get<std::string>(), options);
    if (!parsed.ok()) throw ExportError("embedded problem is invalid: " + parsed.errors.front().message);
    const Signature& sig = parsed.spec->signature;

    std::vector<StepRequest> requests;
    for (const auto& s : doc.at("history"))
      requests.push_back({s.at("goal_position").get<std::size_t>(), s.at("rule_index").get<std::size_t>(),
                          substitution_from(s.at("bindings"), sig)});

    auto replayed = replay(*parsed.spec, requests);
    if (auto* failure = std::get_if<ReplayFailure>(&replayed))
      throw ExportError("history step " + std::to_string(failure->step_index) + " does not replay: " + failure->message);
    auto session = std::get<ProofSession>(std::move(replayed));

    // The recorded tree and matches must agree with the replay.
    if (nlohmann::json::parse(to_structured(session)) != nlohmann::json::parse(text))
      throw ExportError("recorded proof tree does not match its history");
    return session;
  } catch (const nlohmann::json::exception& e) {
    throw ExportError(std::string("malformed structured proof: ") + e.what());
  } catch (const TermParseError& e) {
    throw ExportError(std::string("malformed term in structured proof: ") + e.what());
  }
}

std::string export_session(const ProofSession& session, ExportFormat format) {
  switch (format) {
    case ExportFormat::Latex: return to_latex(session);
    case ExportFormat::Text: return to_text(session);
    case ExportFormat::Structured: return to_structured(session);
  }
  return {};
}

}  // namespace axolotl
