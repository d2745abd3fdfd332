#pragma once

#include <cstdint>
#include <optional>

#include "critters/engine/setup.hpp"
#include "critters/levels/level.hpp"
#include "critters/mutation/mutant.hpp"

namespace critters::mutation {

struct SolverBounds {
  std::size_t max_assertions = 2;
  std::size_t max_if_depth = 1;
  std::uint64_t node_budget = 20'000'000;  // candidate tests evaluated before BudgetExceeded
};

// Search order: assertion count, then exact if-depth, then test shape, then
// operands. Operands: left side an attribute (colors, then counters, each by
// name); right side another attribute of the same type, then literals (the
// palette, or counts 0..M). Conditions are equality atoms, preceded by tile
// checks on base levels. Every If holds at least one assertion.
//
// Loop levels: one test on the first signpost. Base levels: sets of portals
// on distinct path tiles; the assertion budget is shared by all portals.
//
// Returns the first setup that diverts every mutant instance and no healthy
// critter.
std::optional<engine::TestSetup> solve_min_test(const levels::Level& level, const SolverBounds& bounds = {});

// First setup that diverts every instance of `mutant` and no healthy critter.
std::optional<engine::TestSetup> find_killing_test(const levels::Level& level, const MutantSpec& mutant,
                                                   const SolverBounds& bounds = {});

}  // namespace critters::mutation
