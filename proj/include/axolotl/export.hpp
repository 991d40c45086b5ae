// Proof export: LaTeX (bussproofs), indented text, and a JSON interchange form.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "axolotl/engine.hpp"

namespace axolotl {

class ExportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ExportFormat { Latex, Text, Structured };

std::optional<ExportFormat> parse_export_format(std::string_view name);

// bussproofs has inference commands for at most five premises.
inline constexpr std::size_t kMaxLatexPremises = 5;

// Standalone A2 document with one prooftree per root. Open leaves get a `?`
// axiom above them. The rule list is never included.
// Throws ExportError when an applied rule has more than five premises.
std::string to_latex(const ProofSession& session);

// One node per line, pre-order, two spaces of indent per level:
// `? goal` for open leaves, `[rule] goal` otherwise.
std::string to_text(const ProofSession& session);

inline constexpr int kStructuredVersion = 1;

std::string to_structured(const ProofSession& session);

// Throws ExportError on malformed input or when the recorded tree does not
// agree with a replay of the recorded history.
ProofSession from_structured(std::string_view text);

std::string export_session(const ProofSession& session, ExportFormat format);

// Display-mode term rendered as LaTeX math (no surrounding `$`).
std::string latex_term(const Term& t, const Signature& sig);

}  // namespace axolotl
