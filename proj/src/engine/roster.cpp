#include "critters/engine/roster.hpp"

#include <algorithm>
#include <limits>

namespace critters::engine {

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  if (n <= 1) return 0;
  const auto limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % n;
}

std::size_t Roster::healthy_count() const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [](const RosterEntry& e) { return !e.mutant; }));
}

std::size_t Roster::mutant_count() const { return entries.size() - healthy_count(); }

Roster spawn_schedule(const levels::Level& level, std::uint64_t seed) {
  std::vector<RosterEntry> composition;
  auto add = [&](std::optional<std::string> mutant, const levels::AttrMap& look) {
    composition.push_back({composition.size(), std::move(mutant), look, 0});
  };
  for (const auto& g : level.roster.healthy) {
    for (std::size_t i = 0; i < g.count; ++i) add(std::nullopt, g.attrs);
  }
  for (const auto& m : level.mutants) {
    bool listed = false;
    for (const auto& r : level.roster.mutants) {
      if (r.id != m.id) continue;
      listed = true;
      for (std::size_t i = 0; i < r.multiplicity; ++i) add(m.id, r.attrs);
    }
    if (!listed) {
      for (const auto& look : levels::healthy_appearances(level.roster)) add(m.id, look);
    }
  }

  std::mt19937_64 rng(seed);
  deterministic_shuffle(composition, rng);
  for (std::size_t i = 0; i < composition.size(); ++i) composition[i].spawn_tick = i * level.roster.spawn_interval;
  return Roster{std::move(composition)};
}

}  // namespace critters::engine
