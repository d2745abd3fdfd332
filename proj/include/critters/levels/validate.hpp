#pragma once

#include <vector>

#include "critters/diagnostic.hpp"
#include "critters/levels/level.hpp"
#include "critters/mutation/solver.hpp"

namespace critters::levels {

struct ValidateOptions {
  bool check_equivalence = true;
  bool check_killability = true;
  mutation::SolverBounds bounds{2, 1, 2'000'000};
};

// Board, path, landmark, schema, program, mutant and roster checks. Errors make
// the level unplayable; warnings (NonStandardBoardSize, UnkillableMutant) do not.
std::vector<Diagnostic> validate_level(const Level& level, const ValidateOptions& options = {});

// Cross-level checks: unique ids, known prerequisites, acyclic unlock graph.
std::vector<Diagnostic> validate_catalog(const std::vector<Level>& levels);

}  // namespace critters::levels
