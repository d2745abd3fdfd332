#pragma once

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "critters/blocklang/ast.hpp"
#include "critters/blocklang/schema.hpp"
#include "critters/diagnostic.hpp"
#include "critters/mutation/mutant.hpp"

namespace critters::levels {

using blocklang::AttrMap;
using blocklang::LevelKind;
using blocklang::Terrain;

struct Bush {
  Pos pos;
  std::string berry;

  bool operator==(const Bush&) const = default;
};

struct Signpost {
  std::string id;
  Pos pos;

  bool operator==(const Signpost&) const = default;
};

struct Landmarks {
  std::optional<Pos> village;
  std::optional<Pos> tower;
  std::optional<Pos> basket;
  std::optional<Pos> crossing;
  std::vector<Bush> bushes;
  std::vector<Signpost> signposts;

  bool operator==(const Landmarks&) const = default;
};

// Positions are [x,y] with the origin at the top-left; tiles[y][x].
struct Board {
  int width = 0;
  int height = 0;
  std::vector<std::vector<Terrain>> tiles;
  std::vector<Pos> path;
  Landmarks landmarks;

  bool operator==(const Board&) const = default;

  bool in_bounds(Pos p) const;
  Terrain at(Pos p) const;
  std::optional<std::size_t> path_index(Pos p) const;
  // First path index on or 4-adjacent to `p` (bushes stand beside the path).
  std::optional<std::size_t> path_index_near(Pos p) const;
};

// Critters of one appearance. `attrs` overrides the schema's initial values
// (e.g. a blue shirt) and is applied before the program runs.
struct HealthyGroup {
  std::size_t count = 0;
  AttrMap attrs;

  bool operator==(const HealthyGroup&) const = default;
};

struct RosterMutant {
  std::string id;
  std::size_t multiplicity = 1;
  AttrMap attrs;

  bool operator==(const RosterMutant&) const = default;
};

// Catalog mutants without a RosterMutant entry get one instance per distinct
// healthy appearance.
struct RosterConfig {
  std::vector<HealthyGroup> healthy;
  std::vector<RosterMutant> mutants;
  std::uint64_t spawn_interval = 8;

  bool operator==(const RosterConfig&) const = default;

  std::size_t healthy_count() const;
};

struct Unlock {
  std::optional<std::string> requires_level;
  std::optional<std::int64_t> min_points;

  bool operator==(const Unlock&) const = default;
};

struct Level {
  std::string id;
  LevelKind kind = LevelKind::base;
  std::string title;
  std::string flavor;
  blocklang::AttributeSchema schema;
  Board board;
  blocklang::Program program;
  std::vector<mutation::MutantSpec> mutants;
  RosterConfig roster;
  Unlock unlock;

  bool operator==(const Level&) const = default;

  const mutation::MutantSpec* mutant(std::string_view id) const;
};

// Schema initial state with `attrs` laid over it.
blocklang::CritterState appearance_state(const blocklang::AttributeSchema& schema, const AttrMap& attrs);

// Distinct healthy appearances in roster order.
std::vector<AttrMap> healthy_appearances(const RosterConfig& roster);

// Appearances a catalog mutant spawns with: those of its roster entries, or
// every healthy appearance when it has none.
std::vector<AttrMap> mutant_appearances(const RosterConfig& roster, std::string_view mutant_id);

}  // namespace critters::levels
