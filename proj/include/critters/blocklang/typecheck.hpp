#pragma once

#include <vector>

#include "critters/blocklang/ast.hpp"
#include "critters/blocklang/schema.hpp"
#include "critters/diagnostic.hpp"

namespace critters::blocklang {

// Diagnostic codes produced here:
//   TypeMismatch, UnknownAttribute, ConditionNotTruth, ContextViolation,
//   EngineAttributeWrite, PaletteViolation, UnknownBerry, NonPositiveCount,
//   RecipeShape.
//
// Paths: CUT init is rooted at [0], on_tile at [1]; recipes and tests are
// rooted at their top-level block. If nodes have children
// [0]=cond, [1]=then, [2]=else; Repeat has [0]=body; SetAttr has [0]=value;
// Eq and AssertEq have [0]=lhs, [1]=rhs.

std::vector<Diagnostic> typecheck(const CritterProgram& program, const AttributeSchema& schema);
std::vector<Diagnostic> typecheck(const Recipe& recipe, const AttributeSchema& schema);
std::vector<Diagnostic> typecheck(const Program& program, const AttributeSchema& schema);
std::vector<Diagnostic> typecheck(const TestBlock& test, const AttributeSchema& schema, LevelKind context);

// Static type of an expression, or nullopt when it cannot be typed.
std::optional<StaticType> static_type(const Expr& e, const AttributeSchema& schema);

}  // namespace critters::blocklang
