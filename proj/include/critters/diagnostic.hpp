#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace critters {

using AstPath = std::vector<std::size_t>;

struct Pos {
  int x = 0;
  int y = 0;

  auto operator<=>(const Pos&) const = default;
};

enum class Severity { error, warning };

// Machine-readable codes are part of the public contract; do not rename.
struct Diagnostic {
  Severity severity = Severity::error;
  std::string code;
  std::string message;
  std::string subject;  // e.g. "program", "mutants/m3", "portal[3,2]"
  std::optional<AstPath> path;
  std::optional<Pos> pos;

  bool operator==(const Diagnostic&) const = default;
};

Diagnostic make_error(std::string code, std::string message, std::string subject = {});
Diagnostic make_warning(std::string code, std::string message, std::string subject = {});

bool has_errors(const std::vector<Diagnostic>& diagnostics);
bool has_code(const std::vector<Diagnostic>& diagnostics, std::string_view code);

nlohmann::json to_json(const Diagnostic& d);
nlohmann::json to_json(const std::vector<Diagnostic>& diagnostics);
std::string to_string(const Diagnostic& d);

nlohmann::json to_json(Pos p);
std::string to_string(Pos p);

}  // namespace critters
