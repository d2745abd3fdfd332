#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "json.hpp"

#include "critters/blocklang/interpreter.hpp"
#include "critters/levels/level.hpp"

namespace critters::mutation {

// State of one critter wherever a test could observe it. Base levels: one
// checkpoint per portal-eligible path index (1 .. L-2), after the per-tile
// code ran. Loop levels: one checkpoint per lap, after the lap body ran.
struct Checkpoint {
  std::size_t position = 0;  // path index (base) or lap number (loop)
  blocklang::CritterState state;
  std::optional<blocklang::Terrain> tile;
};

struct Trace {
  std::vector<Checkpoint> checkpoints;
  std::uint64_t laps = 0;  // loop levels only
};

Trace trace_critter(const levels::Level& level, const blocklang::Program& program,
                    const blocklang::CritterState& initial);

struct DivergenceRound {
  std::uint64_t round = 0;

  bool operator==(const DivergenceRound&) const = default;
};

struct DivergenceTile {
  std::size_t tile_index = 0;

  bool operator==(const DivergenceTile&) const = default;
};

using Divergence = std::variant<DivergenceRound, DivergenceTile>;

std::size_t divergence_position(const Divergence& d);

// Healthy vs mutant critter from one starting appearance, no tests installed.
std::optional<Divergence> first_divergence(const levels::Level& level, const blocklang::Program& mutant_program,
                                           const levels::AttrMap& appearance);

// Earliest divergence over every appearance the mutant spawns with; none
// means the mutant is observably equivalent.
std::optional<Divergence> first_divergence(const levels::Level& level, const MutantSpec& mutant);

nlohmann::json to_json(const std::optional<Divergence>& d);

}  // namespace critters::mutation
