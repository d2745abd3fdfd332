#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string_view>

#include "critters/blocklang/schema.hpp"
#include "critters/mutation/mutant.hpp"

namespace critters::mutation {

// Declaration order is the enumeration order at each AST node.
enum class Operator { color_constant, count_constant, branch_swap, loop_bound, statement_deletion };

std::string_view to_string(Operator op);
std::optional<Operator> parse_operator(std::string_view s);
std::set<Operator> all_operators();

// Single-edit mutants in AST preorder, then operator order, then value order.
// Mutants that fail to typecheck or duplicate an earlier post-edit AST (or the
// original) are skipped. Ids are "g1", "g2", ... in output order.
MutantCatalog generate_mutants(const Program& program, const blocklang::AttributeSchema& schema,
                               const std::set<Operator>& operators, std::size_t limit);

}  // namespace critters::mutation
