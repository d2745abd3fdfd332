#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "critters/levels/level.hpp"

namespace critters::engine {

struct RosterEntry {
  std::size_t critter = 0;  // index in composition order, stable across seeds
  std::optional<std::string> mutant;
  levels::AttrMap appearance;
  std::uint64_t spawn_tick = 0;

  bool operator==(const RosterEntry&) const = default;
};

// Entries in spawn order.
struct Roster {
  std::vector<RosterEntry> entries;

  std::size_t healthy_count() const;
  std::size_t mutant_count() const;
};

// Healthy groups first, then catalog mutants in catalog order; shuffled by
// `seed` and spaced spawn_interval ticks apart.
Roster spawn_schedule(const levels::Level& level, std::uint64_t seed);

// Uniform draw from [0, n) by rejection, identical on every platform.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n);

template <typename T>
void deterministic_shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace critters::engine
