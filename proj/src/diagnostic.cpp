#include "critters/diagnostic.hpp"

#include <algorithm>

namespace critters {

Diagnostic make_error(std::string code, std::string message, std::string subject) {
  return Diagnostic{Severity::error, std::move(code), std::move(message), std::move(subject), std::nullopt,
                    std::nullopt};
}

Diagnostic make_warning(std::string code, std::string message, std::string subject) {
  return Diagnostic{Severity::warning, std::move(code), std::move(message), std::move(subject), std::nullopt,
                    std::nullopt};
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::error; });
}

bool has_code(const std::vector<Diagnostic>& diagnostics, std::string_view code) {
  return std::any_of(diagnostics.begin(), diagnostics.end(), [&](const Diagnostic& d) { return d.code == code; });
}

nlohmann::json to_json(Pos p) { return nlohmann::json::array({p.x, p.y}); }

std::string to_string(Pos p) { return "[" + std::to_string(p.x) + "," + std::to_string(p.y) + "]"; }

nlohmann::json to_json(const Diagnostic& d) {
  nlohmann::json j;
  j["severity"] = d.severity == Severity::error ? "error" : "warning";
  j["code"] = d.code;
  j["message"] = d.message;
  if (!d.subject.empty()) j["subject"] = d.subject;
  if (d.path) j["path"] = *d.path;
  if (d.pos) j["pos"] = to_json(*d.pos);
  return j;
}

nlohmann::json to_json(const std::vector<Diagnostic>& diagnostics) {
  auto arr = nlohmann::json::array();
  for (const auto& d : diagnostics) arr.push_back(to_json(d));
  return arr;
}

std::string to_string(const Diagnostic& d) {
  std::string out = d.severity == Severity::error ? "error" : "warning";
  out += " " + d.code;
  if (!d.subject.empty()) out += " [" + d.subject + "]";
  if (d.path) {
    out += " at [";
    for (std::size_t i = 0; i < d.path->size(); ++i) {
      if (i) out += ",";
      out += std::to_string((*d.path)[i]);
    }
    out += "]";
  }
  if (d.pos) out += " at " + to_string(*d.pos);
  out += ": " + d.message;
  return out;
}

}  // namespace critters
