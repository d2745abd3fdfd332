#include "critters/levels/catalog.hpp"

#include "critters/errors.hpp"
#include "critters/levels/level_json.hpp"
#include "critters/levels/validate.hpp"

namespace critters::levels {

namespace detail {
const std::vector<std::pair<std::string_view, std::string_view>>& embedded_levels();
}

const std::vector<std::pair<std::string_view, std::string_view>>& builtin_sources() {
  return detail::embedded_levels();
}

const std::vector<Level>& builtin_catalog() {
  static const std::vector<Level> levels = [] {
    std::vector<Level> out;
    ValidateOptions options;
    options.check_killability = false;  // warnings only; the test suite runs the full check
    for (const auto& [id, text] : builtin_sources()) {
      auto level = parse_level(text);
      auto diags = validate_level(level, options);
      if (has_errors(diags)) throw ValidationFailed("built-in level '" + level.id + "' is invalid", std::move(diags));
      out.push_back(std::move(level));
    }
    auto diags = validate_catalog(out);
    if (has_errors(diags)) throw ValidationFailed("built-in catalog is inconsistent", std::move(diags));
    return out;
  }();
  return levels;
}

const Level* find_builtin(std::string_view id) {
  for (const auto& l : builtin_catalog()) {
    if (l.id == id) return &l;
  }
  return nullptr;
}

}  // namespace critters::levels
