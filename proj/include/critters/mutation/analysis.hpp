#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "critters/engine/setup.hpp"
#include "critters/levels/level.hpp"
#include "critters/mutation/mutant.hpp"

namespace critters::mutation {

struct MutantKill {
  std::string id;
  bool killed = false;  // every instance detected
  std::optional<std::size_t> kill_position;  // earliest round (loop) or path index (base)
  std::size_t instances = 0;
  std::size_t killed_instances = 0;

  bool operator==(const MutantKill&) const = default;
};

struct AdequacyReport {
  std::vector<MutantKill> mutants;
  std::size_t false_positives = 0;  // healthy critters diverted
  double mutation_score = 1.0;      // killed mutants / catalog size; 1 for an empty catalog

  bool operator==(const AdequacyReport&) const = default;
};

// One full simulation of the level roster with `catalog` in place of the
// level's own mutants.
AdequacyReport adequacy(const levels::Level& level, const engine::TestSetup& setup,
                        const std::vector<MutantSpec>& catalog, std::uint64_t seed = 0);

nlohmann::json to_json(const AdequacyReport& r);

}  // namespace critters::mutation
