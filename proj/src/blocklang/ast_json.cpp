#include "critters/blocklang/ast_json.hpp"

#include <initializer_list>
#include <set>

#include "critters/errors.hpp"
#include "critters/json_util.hpp"

namespace critters::blocklang {
namespace {

using namespace json_util;

std::string kind_of_node(const json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object node");
  auto it = j.find("kind");
  if (it == j.end() || !it->is_string()) fail(where, "node has no string \"kind\"");
  return it->get<std::string>();
}

Color color_of(const json& j, const std::string& where) {
  const auto name = string_of(j, where);
  auto c = parse_color(name);
  if (!c) fail(where, "unknown color '" + name + "'");
  return *c;
}

}  // namespace

json to_json(const AttrValue& v) {
  if (const auto* c = std::get_if<Color>(&v)) return std::string(to_string(*c));
  return std::get<Count>(v).n;
}

json to_json(const Expr& e) {
  return std::visit(
      [](const auto& n) -> json {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Lit>) {
          return {{"kind", "lit"}, {"value", to_json(n.value)}};
        } else if constexpr (std::is_same_v<T, Attr>) {
          return {{"kind", "attr"}, {"name", n.name}};
        } else if constexpr (std::is_same_v<T, TileIs>) {
          return {{"kind", "tileIs"}, {"terrain", std::string(to_string(n.terrain))}};
        } else {
          return {{"kind", "eq"}, {"lhs", to_json(*n.lhs)}, {"rhs", to_json(*n.rhs)}};
        }
      },
      e.node);
}

json to_json(const BehaviorBlock& b) {
  auto arr = json::array();
  for (const auto& s : b) arr.push_back(to_json(s));
  return arr;
}

json to_json(const BehaviorStmt& s) {
  return std::visit(
      [](const auto& n) -> json {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, SetAttr>) {
          return {{"kind", "setAttr"}, {"name", n.name}, {"value", to_json(n.value)}};
        } else if constexpr (std::is_same_v<T, Collect>) {
          return {{"kind", "collect"}, {"berry", n.berry}, {"count", n.count}};
        } else if constexpr (std::is_same_v<T, IfBehavior>) {
          return {{"kind", "if"},
                  {"cond", to_json(n.cond)},
                  {"then", to_json(n.then_branch)},
                  {"else", to_json(n.else_branch)}};
        } else {
          return {{"kind", "repeat"}, {"times", n.times}, {"body", to_json(n.body)}};
        }
      },
      s.node);
}

json to_json(const TestBlock& t) {
  auto arr = json::array();
  for (const auto& s : t) arr.push_back(to_json(s));
  return arr;
}

json to_json(const TestStmt& s) {
  if (const auto* a = std::get_if<AssertEq>(&s.node)) {
    return {{"kind", "assertEq"}, {"lhs", to_json(a->lhs)}, {"rhs", to_json(a->rhs)}};
  }
  const auto& i = std::get<IfTest>(s.node);
  return {{"kind", "if"}, {"cond", to_json(i.cond)}, {"then", to_json(i.then_branch)}, {"else", to_json(i.else_branch)}};
}

json to_json(const Program& p) {
  if (const auto* cut = std::get_if<CritterProgram>(&p)) {
    return {{"kind", "cut"}, {"init", to_json(cut->init)}, {"onTile", to_json(cut->on_tile)}};
  }
  return {{"kind", "recipe"}, {"body", to_json(std::get<Recipe>(p).stmts)}};
}

json to_json(const AttributeSchema& s) {
  json colors = json::object();
  for (const auto& [name, c] : s.colors) {
    auto palette = json::array();
    for (auto p : c.palette) palette.push_back(std::string(to_string(p)));
    colors[name] = {{"palette", palette}, {"initial", std::string(to_string(c.initial))}};
  }
  json counters = json::object();
  for (const auto& [name, c] : s.counters) {
    if (c.role == CounterRole::rounds) {
      counters[name] = {{"role", "rounds"}};
    } else {
      counters[name] = {{"role", "berry"}, {"berry", c.berry}};
    }
  }
  return {{"colors", colors}, {"counters", counters}};
}

json to_json(const CritterState& s) {
  json j = json::object();
  for (const auto& [name, v] : s.attrs) j[name] = to_json(v);
  return j;
}

AttrValue attr_value_from_json(const json& j, const std::string& where) {
  if (j.is_string()) return color_of(j, where);
  if (is_non_negative_integer(j)) return Count{j.get<std::uint64_t>()};
  fail(where, "expected a color name or a non-negative integer");
}

Expr expr_from_json(const json& j, const std::string& where) {
  const auto kind = kind_of_node(j, where);
  if (kind == "lit") {
    expect_keys(j, where, {"kind", "value"});
    return Expr{Lit{attr_value_from_json(j.at("value"), where + ".value")}};
  }
  if (kind == "attr") {
    expect_keys(j, where, {"kind", "name"});
    return Expr{Attr{string_of(j.at("name"), where + ".name")}};
  }
  if (kind == "tileIs") {
    expect_keys(j, where, {"kind", "terrain"});
    const auto name = string_of(j.at("terrain"), where + ".terrain");
    auto t = parse_terrain(name);
    if (!t) fail(where + ".terrain", "unknown terrain '" + name + "'");
    return Expr{TileIs{*t}};
  }
  if (kind == "eq") {
    expect_keys(j, where, {"kind", "lhs", "rhs"});
    return Expr{Eq{expr_from_json(j.at("lhs"), where + ".lhs"), expr_from_json(j.at("rhs"), where + ".rhs")}};
  }
  fail(where, "unknown expression kind '" + kind + "'");
}

BehaviorBlock behavior_block_from_json(const json& j, const std::string& where) {
  BehaviorBlock out;
  const auto& arr = array_of(j, where);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    out.push_back(behavior_stmt_from_json(arr[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

BehaviorStmt behavior_stmt_from_json(const json& j, const std::string& where) {
  const auto kind = kind_of_node(j, where);
  if (kind == "setAttr") {
    expect_keys(j, where, {"kind", "name", "value"});
    return BehaviorStmt{SetAttr{string_of(j.at("name"), where + ".name"), expr_from_json(j.at("value"), where + ".value")}};
  }
  if (kind == "collect") {
    expect_keys(j, where, {"kind", "berry", "count"});
    return BehaviorStmt{Collect{string_of(j.at("berry"), where + ".berry"), unsigned_of(j.at("count"), where + ".count")}};
  }
  if (kind == "if") {
    expect_keys(j, where, {"kind", "cond", "then", "else"});
    return BehaviorStmt{IfBehavior{expr_from_json(j.at("cond"), where + ".cond"),
                                   behavior_block_from_json(j.at("then"), where + ".then"),
                                   behavior_block_from_json(j.at("else"), where + ".else")}};
  }
  if (kind == "repeat") {
    expect_keys(j, where, {"kind", "times", "body"});
    return BehaviorStmt{
        Repeat{unsigned_of(j.at("times"), where + ".times"), behavior_block_from_json(j.at("body"), where + ".body")}};
  }
  fail(where, "unknown statement kind '" + kind + "'");
}

TestBlock test_block_from_json(const json& j, const std::string& where) {
  TestBlock out;
  const auto& arr = array_of(j, where);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    out.push_back(test_stmt_from_json(arr[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

TestStmt test_stmt_from_json(const json& j, const std::string& where) {
  const auto kind = kind_of_node(j, where);
  if (kind == "assertEq") {
    expect_keys(j, where, {"kind", "lhs", "rhs"});
    return TestStmt{AssertEq{expr_from_json(j.at("lhs"), where + ".lhs"), expr_from_json(j.at("rhs"), where + ".rhs")}};
  }
  if (kind == "if") {
    expect_keys(j, where, {"kind", "cond", "then", "else"});
    return TestStmt{IfTest{expr_from_json(j.at("cond"), where + ".cond"),
                           test_block_from_json(j.at("then"), where + ".then"),
                           test_block_from_json(j.at("else"), where + ".else")}};
  }
  fail(where, "unknown test statement kind '" + kind + "'");
}

Program program_from_json(const json& j, const std::string& where) {
  const auto kind = kind_of_node(j, where);
  if (kind == "cut") {
    expect_keys(j, where, {"kind", "init", "onTile"});
    return CritterProgram{behavior_block_from_json(j.at("init"), where + ".init"),
                          behavior_block_from_json(j.at("onTile"), where + ".onTile")};
  }
  if (kind == "recipe") {
    expect_keys(j, where, {"kind", "body"});
    return Recipe{behavior_block_from_json(j.at("body"), where + ".body")};
  }
  fail(where, "unknown program kind '" + kind + "'");
}

AttributeSchema schema_from_json(const json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  expect_keys(j, where, {"colors", "counters"});
  AttributeSchema s;
  const auto& colors = j.at("colors");
  if (!colors.is_object()) fail(where + ".colors", "expected an object");
  for (const auto& [name, c] : colors.items()) {
    const auto at = where + ".colors." + name;
    if (!c.is_object()) fail(at, "expected an object");
    expect_keys(c, at, {"palette", "initial"});
    ColorAttr attr;
    const auto& palette = array_of(c.at("palette"), at + ".palette");
    std::set<Color> seen;
    for (const auto& p : palette) {
      const auto color = color_of(p, at + ".palette");
      if (!seen.insert(color).second) fail(at + ".palette", "duplicate color");
      attr.palette.push_back(color);
    }
    if (attr.palette.empty()) fail(at + ".palette", "palette is empty");
    attr.initial = color_of(c.at("initial"), at + ".initial");
    if (!seen.count(attr.initial)) fail(at + ".initial", "initial color is not in the palette");
    s.colors.emplace(name, std::move(attr));
  }
  const auto& counters = j.at("counters");
  if (!counters.is_object()) fail(where + ".counters", "expected an object");
  for (const auto& [name, c] : counters.items()) {
    const auto at = where + ".counters." + name;
    if (s.colors.count(name)) fail(at, "attribute declared twice");
    if (!c.is_object()) fail(at, "expected an object");
    const auto role = string_of(c.value("role", json()), at + ".role");
    if (role == "rounds") {
      expect_keys(c, at, {"role"});
      s.counters.emplace(name, CounterAttr{CounterRole::rounds, {}});
    } else if (role == "berry") {
      expect_keys(c, at, {"role", "berry"});
      s.counters.emplace(name, CounterAttr{CounterRole::berry, string_of(c.at("berry"), at + ".berry")});
    } else {
      fail(at + ".role", "unknown counter role '" + role + "'");
    }
  }
  return s;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw SyntaxError(e.what(), e.byte);
  }
}

Expr parse_expr(std::string_view text) { return expr_from_json(parse_json(text)); }
TestBlock parse_test(std::string_view text) { return test_block_from_json(parse_json(text)); }
BehaviorBlock parse_behavior(std::string_view text) { return behavior_block_from_json(parse_json(text)); }
Program parse_program(std::string_view text) { return program_from_json(parse_json(text)); }

std::string canonical(const json& j) { return j.dump(); }

}  // namespace critters::blocklang
