#pragma once

#include <functional>
#include <optional>
#include <variant>

#include "critters/blocklang/ast.hpp"
#include "critters/diagnostic.hpp"

namespace critters::blocklang {

// Any addressable node of a behavior program.
using BehaviorNode = std::variant<Expr, BehaviorStmt, BehaviorBlock>;

std::string_view category_name(const BehaviorNode& n);

// nullopt when the path does not address a node. Paths follow the layout
// documented in typecheck.hpp.
std::optional<BehaviorNode> node_at(const Program& program, const AstPath& path);

// Returns a copy of `program` with the node at `path` replaced. Throws BadPath
// for invalid paths and IllTypedReplacement when the replacement's category
// (expression / statement / block) differs from the replaced node's.
Program replace_at(const Program& program, const AstPath& path, const BehaviorNode& replacement);

// Preorder walk over every node of the program (blocks included).
void for_each_node(const Program& program, const std::function<void(const AstPath&, const BehaviorNode&)>& visit);

// The assertion addressed by `path` inside a test, or nullptr.
const AssertEq* assertion_at(const TestBlock& test, const AstPath& path);

}  // namespace critters::blocklang
