#include <stdexcept>

#include "axolotl/problem.hpp"

namespace axolotl {

namespace {

struct BundledProblem {
  const char* category;
  const char* name;
  const char* text;
};

// Generated from fixtures/library/<category>/<name>.axolotl.
constexpr BundledProblem kBundled[] = {
#include "library_data.inc"
};

std::vector<LibraryEntry> load_bundled() {
  std::vector<LibraryEntry> out;
  for (const auto& b : kBundled) {
    ParseOptions options;
    options.source_name = b.name;
    auto result = parse_problem(b.text, options);
    if (!result.ok())
      throw std::logic_error(std::string("bundled problem ") + b.category + "/" + b.name +
                             " is invalid: " + result.errors.front().message);
    out.push_back({b.category, std::move(*result.spec)});
  }
  return out;
}

}  // namespace

const std::vector<LibraryEntry>& builtin_library() {
  static const std::vector<LibraryEntry> library = load_bundled();
  return library;
}

}  // namespace axolotl
