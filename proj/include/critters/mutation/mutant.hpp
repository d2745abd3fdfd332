#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "critters/blocklang/ast.hpp"
#include "critters/blocklang/ast_path.hpp"
#include "critters/blocklang/schema.hpp"
#include "critters/diagnostic.hpp"

namespace critters::mutation {

using blocklang::BehaviorNode;
using blocklang::Program;

struct Edit {
  AstPath path;
  BehaviorNode replacement;

  bool operator==(const Edit&) const = default;
};

struct MutantSpec {
  std::string id;
  std::vector<Edit> edits;
  std::string hint;  // shown only after the game

  bool operator==(const MutantSpec&) const = default;
};

struct MutantCatalog {
  std::vector<MutantSpec> mutants;

  bool operator==(const MutantCatalog&) const = default;
};

// Edits apply in order, each to the result of the previous one. The result
// must typecheck against `schema`.
Program apply_edits(const Program& program, const std::vector<Edit>& edits,
                    const blocklang::AttributeSchema& schema);

// Edits that, applied to apply_edits(program, edits), give back `program`.
std::vector<Edit> inverse_edits(const Program& program, const std::vector<Edit>& edits);

// Typecheck diagnostics for the mutant; subject is "mutants/<id>".
std::vector<Diagnostic> check_mutant(const Program& program, const MutantSpec& mutant,
                                     const blocklang::AttributeSchema& schema);

nlohmann::json to_json(const BehaviorNode& n);
nlohmann::json to_json(const Edit& e);
nlohmann::json to_json(const MutantSpec& m);
nlohmann::json to_json(const MutantCatalog& c);

BehaviorNode behavior_node_from_json(const nlohmann::json& j, const std::string& where = "$");
Edit edit_from_json(const nlohmann::json& j, const std::string& where = "$");
MutantSpec mutant_from_json(const nlohmann::json& j, const std::string& where = "$");
MutantCatalog catalog_from_json(const nlohmann::json& j, const std::string& where = "$");

}  // namespace critters::mutation
