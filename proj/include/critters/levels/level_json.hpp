#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "critters/levels/level.hpp"

namespace critters::levels {

// Level file keys: id, kind, title, flavor, schema, board, program, mutants,
// roster, unlock. Tiles are rows of terrain codes (g grass, d dirt, i ice,
// w water, o wood); positions are [x,y] from the top-left corner.
nlohmann::json to_json(const Level& level);
Level level_from_json(const nlohmann::json& j);

// Parse only; no validation. Throws SyntaxError or SchemaError.
Level parse_level(std::string_view text);

// Parse and validate; throws ValidationFailed when validation reports errors.
Level load_level(std::string_view text);

}  // namespace critters::levels
