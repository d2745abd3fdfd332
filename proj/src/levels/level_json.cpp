#include "critters/levels/level_json.hpp"

#include "critters/blocklang/ast_json.hpp"
#include "critters/json_util.hpp"
#include "critters/levels/validate.hpp"

namespace critters::levels {

using namespace json_util;
using nlohmann::json;

namespace {

json attrs_to_json(const AttrMap& attrs) {
  json j = json::object();
  for (const auto& [name, v] : attrs) j[name] = blocklang::to_json(v);
  return j;
}

AttrMap attrs_from_json(const json& j, const std::string& where) {
  AttrMap out;
  for (const auto& [name, v] : object_of(j, where).items()) {
    out.emplace(name, blocklang::attr_value_from_json(v, where + "." + name));
  }
  return out;
}

json opt_pos(const std::optional<Pos>& p) { return p ? to_json(*p) : json(nullptr); }

Board board_from_json(const json& j, const std::string& where) {
  expect_keys(j, where, {"width", "height", "tiles", "path", "landmarks"});
  Board b;
  b.width = static_cast<int>(integer_of(j["width"], where + ".width"));
  b.height = static_cast<int>(integer_of(j["height"], where + ".height"));
  const auto& rows = array_of(j["tiles"], where + ".tiles");
  for (std::size_t y = 0; y < rows.size(); ++y) {
    const auto row_where = where + ".tiles[" + std::to_string(y) + "]";
    std::vector<Terrain> row;
    for (char c : string_of(rows[y], row_where)) {
      auto t = blocklang::terrain_from_code(c);
      if (!t) fail(row_where, std::string("unknown terrain code '") + c + "'");
      row.push_back(*t);
    }
    b.tiles.push_back(std::move(row));
  }
  const auto& path = array_of(j["path"], where + ".path");
  for (std::size_t i = 0; i < path.size(); ++i) b.path.push_back(pos_of(path[i], where + ".path[" + std::to_string(i) + "]"));

  const auto lw = where + ".landmarks";
  const auto& lm = j["landmarks"];
  expect_keys(lm, lw, {}, {"village", "tower", "basket", "crossing", "bushes", "signposts"});
  auto opt = [&](const char* key) -> std::optional<Pos> {
    if (!lm.contains(key) || lm[key].is_null()) return std::nullopt;
    return pos_of(lm[key], lw + "." + key);
  };
  b.landmarks.village = opt("village");
  b.landmarks.tower = opt("tower");
  b.landmarks.basket = opt("basket");
  b.landmarks.crossing = opt("crossing");
  if (lm.contains("bushes")) {
    const auto& arr = array_of(lm["bushes"], lw + ".bushes");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const auto w = lw + ".bushes[" + std::to_string(i) + "]";
      expect_keys(arr[i], w, {"pos", "berry"});
      b.landmarks.bushes.push_back({pos_of(arr[i]["pos"], w + ".pos"), string_of(arr[i]["berry"], w + ".berry")});
    }
  }
  if (lm.contains("signposts")) {
    const auto& arr = array_of(lm["signposts"], lw + ".signposts");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const auto w = lw + ".signposts[" + std::to_string(i) + "]";
      expect_keys(arr[i], w, {"id", "pos"});
      b.landmarks.signposts.push_back({string_of(arr[i]["id"], w + ".id"), pos_of(arr[i]["pos"], w + ".pos")});
    }
  }
  return b;
}

json board_to_json(const Board& b) {
  auto rows = json::array();
  for (const auto& row : b.tiles) {
    std::string s;
    for (auto t : row) s += blocklang::terrain_code(t);
    rows.push_back(s);
  }
  auto path = json::array();
  for (auto p : b.path) path.push_back(to_json(p));
  json lm = json::object();
  if (b.landmarks.village) lm["village"] = opt_pos(b.landmarks.village);
  if (b.landmarks.tower) lm["tower"] = opt_pos(b.landmarks.tower);
  if (b.landmarks.basket) lm["basket"] = opt_pos(b.landmarks.basket);
  if (b.landmarks.crossing) lm["crossing"] = opt_pos(b.landmarks.crossing);
  if (!b.landmarks.bushes.empty()) {
    auto arr = json::array();
    for (const auto& bush : b.landmarks.bushes) arr.push_back({{"pos", to_json(bush.pos)}, {"berry", bush.berry}});
    lm["bushes"] = arr;
  }
  if (!b.landmarks.signposts.empty()) {
    auto arr = json::array();
    for (const auto& s : b.landmarks.signposts) arr.push_back({{"id", s.id}, {"pos", to_json(s.pos)}});
    lm["signposts"] = arr;
  }
  return {{"width", b.width}, {"height", b.height}, {"tiles", rows}, {"path", path}, {"landmarks", lm}};
}

RosterConfig roster_from_json(const json& j, const std::string& where) {
  expect_keys(j, where, {"healthy"}, {"mutants", "spawnInterval"});
  RosterConfig r;
  const auto& healthy = array_of(j["healthy"], where + ".healthy");
  for (std::size_t i = 0; i < healthy.size(); ++i) {
    const auto w = where + ".healthy[" + std::to_string(i) + "]";
    expect_keys(healthy[i], w, {"count"}, {"attrs"});
    HealthyGroup g;
    g.count = unsigned_of(healthy[i]["count"], w + ".count");
    if (healthy[i].contains("attrs")) g.attrs = attrs_from_json(healthy[i]["attrs"], w + ".attrs");
    r.healthy.push_back(std::move(g));
  }
  if (j.contains("mutants")) {
    const auto& arr = array_of(j["mutants"], where + ".mutants");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const auto w = where + ".mutants[" + std::to_string(i) + "]";
      expect_keys(arr[i], w, {"id"}, {"multiplicity", "attrs"});
      RosterMutant m;
      m.id = string_of(arr[i]["id"], w + ".id");
      if (arr[i].contains("multiplicity")) m.multiplicity = unsigned_of(arr[i]["multiplicity"], w + ".multiplicity");
      if (arr[i].contains("attrs")) m.attrs = attrs_from_json(arr[i]["attrs"], w + ".attrs");
      r.mutants.push_back(std::move(m));
    }
  }
  if (j.contains("spawnInterval")) r.spawn_interval = unsigned_of(j["spawnInterval"], where + ".spawnInterval");
  return r;
}

json roster_to_json(const RosterConfig& r) {
  auto healthy = json::array();
  for (const auto& g : r.healthy) healthy.push_back({{"count", g.count}, {"attrs", attrs_to_json(g.attrs)}});
  auto mutants = json::array();
  for (const auto& m : r.mutants) {
    mutants.push_back({{"id", m.id}, {"multiplicity", m.multiplicity}, {"attrs", attrs_to_json(m.attrs)}});
  }
  return {{"healthy", healthy}, {"mutants", mutants}, {"spawnInterval", r.spawn_interval}};
}

}  // namespace

json to_json(const Level& level) {
  auto mutants = json::array();
  for (const auto& m : level.mutants) mutants.push_back(mutation::to_json(m));
  json unlock = json::object();
  if (level.unlock.requires_level) unlock["requires"] = *level.unlock.requires_level;
  if (level.unlock.min_points) unlock["minPoints"] = *level.unlock.min_points;
  return {{"id", level.id},
          {"kind", std::string(blocklang::to_string(level.kind))},
          {"title", level.title},
          {"flavor", level.flavor},
          {"schema", blocklang::to_json(level.schema)},
          {"board", board_to_json(level.board)},
          {"program", blocklang::to_json(level.program)},
          {"mutants", mutants},
          {"roster", roster_to_json(level.roster)},
          {"unlock", unlock}};
}

Level level_from_json(const json& j) {
  expect_keys(j, "$", {"id", "kind", "title", "flavor", "schema", "board", "program", "mutants", "roster", "unlock"});
  Level level;
  level.id = string_of(j["id"], "$.id");
  const auto kind = string_of(j["kind"], "$.kind");
  if (kind == "base") {
    level.kind = LevelKind::base;
  } else if (kind == "loop") {
    level.kind = LevelKind::loop;
  } else {
    fail("$.kind", "expected \"base\" or \"loop\"");
  }
  level.title = string_of(j["title"], "$.title");
  level.flavor = string_of(j["flavor"], "$.flavor");
  level.schema = blocklang::schema_from_json(j["schema"], "$.schema");
  level.board = board_from_json(j["board"], "$.board");
  level.program = blocklang::program_from_json(j["program"], "$.program");
  const auto& mutants = array_of(j["mutants"], "$.mutants");
  for (std::size_t i = 0; i < mutants.size(); ++i) {
    level.mutants.push_back(mutation::mutant_from_json(mutants[i], "$.mutants[" + std::to_string(i) + "]"));
  }
  level.roster = roster_from_json(j["roster"], "$.roster");
  const auto& unlock = j["unlock"];
  expect_keys(unlock, "$.unlock", {}, {"requires", "minPoints"});
  if (unlock.contains("requires")) level.unlock.requires_level = string_of(unlock["requires"], "$.unlock.requires");
  if (unlock.contains("minPoints")) level.unlock.min_points = integer_of(unlock["minPoints"], "$.unlock.minPoints");
  return level;
}

Level parse_level(std::string_view text) { return level_from_json(blocklang::parse_json(text)); }

Level load_level(std::string_view text) {
  auto level = parse_level(text);
  auto diags = validate_level(level);
  if (has_errors(diags)) {
    std::string first;
    for (const auto& d : diags) {
      if (d.severity == Severity::error) {
        first = to_string(d);
        break;
      }
    }
    throw ValidationFailed("level '" + level.id + "' is invalid: " + first, std::move(diags));
  }
  return level;
}

}  // namespace critters::levels
