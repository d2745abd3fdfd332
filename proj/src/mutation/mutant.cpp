#include "critters/mutation/mutant.hpp"

#include "critters/blocklang/ast_json.hpp"
#include "critters/blocklang/typecheck.hpp"
#include "critters/errors.hpp"
#include "critters/json_util.hpp"

namespace critters::mutation {

using namespace json_util;
using nlohmann::json;

Program apply_edits(const Program& program, const std::vector<Edit>& edits,
                    const blocklang::AttributeSchema& schema) {
  Program out = program;
  for (const auto& e : edits) out = blocklang::replace_at(out, e.path, e.replacement);
  if (edits.empty()) return out;
  auto diags = blocklang::typecheck(out, schema);
  if (has_errors(diags)) {
    const auto message = "edited program does not typecheck: " + to_string(diags.front());
    throw IllTypedReplacement(message, std::move(diags));
  }
  return out;
}

std::vector<Edit> inverse_edits(const Program& program, const std::vector<Edit>& edits) {
  std::vector<Edit> undo;
  Program current = program;
  for (const auto& e : edits) {
    auto old = blocklang::node_at(current, e.path);
    if (!old) throw BadPath("edit path does not address a node");
    undo.push_back(Edit{e.path, *old});
    current = blocklang::replace_at(current, e.path, e.replacement);
  }
  return {undo.rbegin(), undo.rend()};
}

std::vector<Diagnostic> check_mutant(const Program& program, const MutantSpec& mutant,
                                     const blocklang::AttributeSchema& schema) {
  const std::string subject = "mutants/" + mutant.id;
  if (mutant.edits.empty()) return {make_error("EmptyMutant", "mutant has no edits", subject)};
  Program current = program;
  for (std::size_t i = 0; i < mutant.edits.size(); ++i) {
    const auto& e = mutant.edits[i];
    try {
      current = blocklang::replace_at(current, e.path, e.replacement);
    } catch (const Error& err) {
      auto d = make_error(err.code(), err.what(), subject);
      d.path = e.path;
      return {d};
    }
  }
  auto diags = blocklang::typecheck(current, schema);
  for (auto& d : diags) d.subject = subject;
  return diags;
}

json to_json(const BehaviorNode& n) {
  return std::visit([](const auto& v) { return blocklang::to_json(v); }, n);
}

json to_json(const Edit& e) { return {{"path", e.path}, {"replacement", to_json(e.replacement)}}; }

json to_json(const MutantSpec& m) {
  auto edits = json::array();
  for (const auto& e : m.edits) edits.push_back(to_json(e));
  return {{"id", m.id}, {"edits", edits}, {"hint", m.hint}};
}

json to_json(const MutantCatalog& c) {
  auto arr = json::array();
  for (const auto& m : c.mutants) arr.push_back(to_json(m));
  return {{"mutants", arr}};
}

BehaviorNode behavior_node_from_json(const json& j, const std::string& where) {
  if (j.is_array()) return blocklang::behavior_block_from_json(j, where);
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) fail(where, "expected an AST node");
  const auto kind = j["kind"].get<std::string>();
  if (kind == "lit" || kind == "attr" || kind == "tileIs" || kind == "eq") {
    return blocklang::expr_from_json(j, where);
  }
  return blocklang::behavior_stmt_from_json(j, where);
}

Edit edit_from_json(const json& j, const std::string& where) {
  expect_keys(j, where, {"path", "replacement"});
  return Edit{path_of(j["path"], where + ".path"), behavior_node_from_json(j["replacement"], where + ".replacement")};
}

MutantSpec mutant_from_json(const json& j, const std::string& where) {
  expect_keys(j, where, {"id", "edits"}, {"hint"});
  MutantSpec m;
  m.id = string_of(j["id"], where + ".id");
  const auto& edits = array_of(j["edits"], where + ".edits");
  for (std::size_t i = 0; i < edits.size(); ++i) {
    m.edits.push_back(edit_from_json(edits[i], where + ".edits[" + std::to_string(i) + "]"));
  }
  if (j.contains("hint")) m.hint = string_of(j["hint"], where + ".hint");
  return m;
}

MutantCatalog catalog_from_json(const json& j, const std::string& where) {
  expect_keys(j, where, {"mutants"});
  MutantCatalog c;
  const auto& arr = array_of(j["mutants"], where + ".mutants");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    c.mutants.push_back(mutant_from_json(arr[i], where + ".mutants[" + std::to_string(i) + "]"));
  }
  return c;
}

}  // namespace critters::mutation
