#include "critters/engine/setup.hpp"

#include <algorithm>
#include <set>

#include "critters/blocklang/ast_json.hpp"
#include "critters/blocklang/typecheck.hpp"
#include "critters/json_util.hpp"

namespace critters::engine {

using namespace json_util;
using blocklang::LevelKind;
using nlohmann::json;

namespace {

void add_typecheck(std::vector<Diagnostic>& out, const levels::Level& level, const TestBlock& test,
                   const std::string& subject, std::optional<Pos> pos) {
  for (auto d : blocklang::typecheck(test, level.schema, level.kind)) {
    d.subject = subject;
    d.pos = pos;
    out.push_back(std::move(d));
  }
}

}  // namespace

std::vector<Diagnostic> check_setup(const levels::Level& level, const TestSetup& setup) {
  std::vector<Diagnostic> out;
  const auto& board = level.board;
  if (level.kind == LevelKind::base && !setup.signposts.empty()) {
    out.push_back(make_error("WrongSetupKind", "base levels take portals, not signpost tests", "setup"));
  }
  if (level.kind == LevelKind::loop && !setup.portals.empty()) {
    out.push_back(make_error("WrongSetupKind", "loop levels take signpost tests, not portals", "setup"));
  }

  std::set<Pos> seen_tiles;
  for (const auto& p : setup.portals) {
    const auto subject = "portal" + to_string(p.tile);
    auto placement = [&](std::string code, std::string message) {
      auto d = make_error(std::move(code), std::move(message), subject);
      d.pos = p.tile;
      out.push_back(std::move(d));
    };
    if (!board.in_bounds(p.tile)) {
      placement("PortalOffPath", "portal is outside the board");
      continue;
    }
    if (!blocklang::walkable(board.at(p.tile))) {
      placement("UnwalkablePortal",
                "portal on " + std::string(blocklang::to_string(board.at(p.tile))) + " which critters cannot walk on");
    } else if (const auto idx = board.path_index(p.tile); !idx) {
      placement("PortalOffPath", "portal is not on the critters' path");
    } else if (*idx == 0 || *idx + 1 == board.path.size()) {
      placement("PortalOnEndpoint", "portals cannot sit on the village or the tower");
    }
    if (!seen_tiles.insert(p.tile).second) placement("DuplicatePortal", "two portals on the same tile");
    add_typecheck(out, level, p.test, subject, p.tile);
  }

  std::set<std::string> seen_ids;
  for (const auto& s : setup.signposts) {
    const auto subject = "signpost/" + s.signpost_id;
    const auto& signs = board.landmarks.signposts;
    const bool known = std::any_of(signs.begin(), signs.end(),
                                   [&](const levels::Signpost& sp) { return sp.id == s.signpost_id; });
    if (!known) out.push_back(make_error("UnknownSignpost", "no signpost '" + s.signpost_id + "'", subject));
    if (!seen_ids.insert(s.signpost_id).second) {
      out.push_back(make_error("DuplicateSignpostTest", "signpost has more than one test", subject));
    }
    add_typecheck(out, level, s.test, subject, std::nullopt);
  }
  return out;
}

TestSetup all_signposts(const levels::Level& level, const TestBlock& test) {
  TestSetup setup;
  for (const auto& s : level.board.landmarks.signposts) setup.signposts.push_back({s.id, test});
  return setup;
}

TestSetup setup_from_json(const json& j, const levels::Level& level) {
  if (j.is_array()) {
    if (level.kind != LevelKind::loop) fail("$", "a bare test array is only accepted for loop levels");
    return all_signposts(level, blocklang::test_block_from_json(j));
  }
  expect_keys(j, "$", {}, {"portals", "signposts"});
  TestSetup setup;
  if (j.contains("portals")) {
    const auto& arr = array_of(j["portals"], "$.portals");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const auto where = "$.portals[" + std::to_string(i) + "]";
      expect_keys(arr[i], where, {"tile", "test"});
      setup.portals.push_back(
          {pos_of(arr[i]["tile"], where + ".tile"), blocklang::test_block_from_json(arr[i]["test"], where + ".test")});
    }
  }
  if (j.contains("signposts")) {
    const auto& arr = array_of(j["signposts"], "$.signposts");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const auto where = "$.signposts[" + std::to_string(i) + "]";
      expect_keys(arr[i], where, {"id", "test"});
      setup.signposts.push_back(
          {string_of(arr[i]["id"], where + ".id"), blocklang::test_block_from_json(arr[i]["test"], where + ".test")});
    }
  }
  return setup;
}

json to_json(const TestSetup& setup, LevelKind kind) {
  if (kind == LevelKind::base) {
    auto arr = json::array();
    for (const auto& p : setup.portals) arr.push_back({{"tile", to_json(p.tile)}, {"test", blocklang::to_json(p.test)}});
    return {{"portals", arr}};
  }
  auto arr = json::array();
  for (const auto& s : setup.signposts) arr.push_back({{"id", s.signpost_id}, {"test", blocklang::to_json(s.test)}});
  return {{"signposts", arr}};
}

std::size_t setup_block_count(const TestSetup& setup) {
  std::size_t n = 0;
  for (const auto& p : setup.portals) n += blocklang::block_count(p.test);
  for (const auto& s : setup.signposts) n += blocklang::block_count(s.test);
  return n;
}

}  // namespace critters::engine
