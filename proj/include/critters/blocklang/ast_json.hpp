#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "critters/blocklang/ast.hpp"
#include "critters/blocklang/schema.hpp"

// Canonical AST text: JSON, one object per node with a "kind" discriminator,
// keys sorted, no insignificant whitespace.
//
//   {"kind":"lit","value":"red"} | {"kind":"lit","value":3}
//   {"kind":"attr","name":"shirt"}
//   {"kind":"tileIs","terrain":"dirt"}
//   {"kind":"eq","lhs":E,"rhs":E}
//   {"kind":"setAttr","name":"shirt","value":E}
//   {"kind":"collect","berry":"red","count":1}
//   {"kind":"if","cond":E,"then":[...],"else":[...]}
//   {"kind":"repeat","times":3,"body":[...]}
//   {"kind":"assertEq","lhs":E,"rhs":E}
//   {"kind":"cut","init":[...],"onTile":[...]}
//   {"kind":"recipe","body":[...]}
//   tests are a bare array of test statements.

namespace critters::blocklang {

using nlohmann::json;

json to_json(const Expr& e);
json to_json(const BehaviorStmt& s);
json to_json(const BehaviorBlock& b);
json to_json(const TestStmt& s);
json to_json(const TestBlock& t);
json to_json(const Program& p);
json to_json(const AttributeSchema& s);
json to_json(const AttrValue& v);
json to_json(const CritterState& s);

// `where` names the location in error messages.
Expr expr_from_json(const json& j, const std::string& where = "$");
BehaviorStmt behavior_stmt_from_json(const json& j, const std::string& where = "$");
BehaviorBlock behavior_block_from_json(const json& j, const std::string& where = "$");
TestStmt test_stmt_from_json(const json& j, const std::string& where = "$");
TestBlock test_block_from_json(const json& j, const std::string& where = "$");
Program program_from_json(const json& j, const std::string& where = "$");
AttributeSchema schema_from_json(const json& j, const std::string& where = "$");
AttrValue attr_value_from_json(const json& j, const std::string& where = "$");

// Text entry points. Throw SyntaxError for malformed JSON, SchemaError for
// well-formed JSON that is not a valid node.
json parse_json(std::string_view text);
Expr parse_expr(std::string_view text);
TestBlock parse_test(std::string_view text);
BehaviorBlock parse_behavior(std::string_view text);
Program parse_program(std::string_view text);

std::string canonical(const json& j);

template <typename Node>
std::string emit(const Node& n) {
  return canonical(to_json(n));
}

}  // namespace critters::blocklang
