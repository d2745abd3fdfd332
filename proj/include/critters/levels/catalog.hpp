#pragma once

#include <string_view>
#include <vector>

#include "critters/levels/level.hpp"

namespace critters::levels {

// The shipped levels, parsed and validated once: base-01, loop-01, loop-02, loop-10.
const std::vector<Level>& builtin_catalog();

// nullptr when no built-in level has this id.
const Level* find_builtin(std::string_view id);

// Raw level files as embedded at build time, keyed by id.
const std::vector<std::pair<std::string_view, std::string_view>>& builtin_sources();

}  // namespace critters::levels
