#include <gtest/gtest.h>

#include <set>

#include "critters/engine/simulate.hpp"
#include "critters/errors.hpp"
#include "critters/levels/catalog.hpp"
#include "critters/levels/level_json.hpp"
#include "critters/levels/validate.hpp"
#include "oracle.hpp"

namespace critters::levels {
namespace {

using nlohmann::json;

std::vector<Diagnostic> diagnose(const json& file, ValidateOptions options = {}) {
  return validate_level(level_from_json(file), options);
}

const Diagnostic* find(const std::vector<Diagnostic>& diags, std::string_view code) {
  for (const auto& d : diags) {
    if (d.code == code) return &d;
  }
  return nullptr;
}

std::vector<Diagnostic> load_errors(const json& file) {
  try {
    load_level(file.dump());
  } catch (const ValidationFailed& e) {
    return e.diagnostics();
  }
  return {};
}

json mutant(std::string id, json path, json replacement) {
  return {{"id", std::move(id)}, {"hint", ""}, {"edits", {{{"path", std::move(path)}, {"replacement", std::move(replacement)}}}}};
}

json collect(const std::string& berry, int n) { return {{"kind", "collect"}, {"berry", berry}, {"count", n}}; }

TEST(LoadLevel, Base01Board) {
  const auto level = load_level(oracle::slurp(oracle::source_path("levels/base-01.json")));
  EXPECT_EQ(level.kind, LevelKind::base);
  EXPECT_EQ(level.board.width, 16);
  EXPECT_EQ(level.board.height, 16);
  EXPECT_EQ(level.board.tiles.size(), 16u);
  EXPECT_EQ(level.mutants.size(), 15u);
  EXPECT_EQ(level.roster.healthy_count(), 10u);
}

TEST(LoadLevel, PathThroughWater) {
  auto file = oracle::level_file("base-01");
  const auto& p = file["board"]["path"][3];
  const int x = p[0], y = p[1];
  auto row = file["board"]["tiles"][y].get<std::string>();
  row[x] = 'w';
  file["board"]["tiles"][y] = row;
  const auto d = load_errors(file);
  ASSERT_TRUE(find(d, "UnwalkablePath"));
  EXPECT_EQ(find(d, "UnwalkablePath")->pos, (Pos{x, y}));
}

TEST(LoadLevel, RecipeWithoutRepeat) {
  auto file = oracle::level_file("loop-01");
  file["program"]["body"] = json::array({collect("red", 1)});
  file["mutants"] = json::array();
  EXPECT_TRUE(has_code(load_errors(file), "RecipeShape"));
}

TEST(LoadLevel, SyntaxAndSchemaErrors) {
  EXPECT_THROW(load_level(""), SyntaxError);
  EXPECT_THROW(load_level("{\"id\":"), SyntaxError);
  auto file = oracle::level_file("loop-01");
  file.erase("board");
  EXPECT_THROW(load_level(file.dump()), SchemaError);
  file = oracle::level_file("loop-01");
  file["kind"] = "spiral";
  EXPECT_THROW(load_level(file.dump()), SchemaError);
  file = oracle::level_file("loop-01");
  file["board"]["tiles"][0] = "gggggggx";
  EXPECT_THROW(load_level(file.dump()), SchemaError);
}

TEST(Validate, BuiltinsAreClean) {
  for (const auto& level : builtin_catalog()) {
    EXPECT_TRUE(validate_level(level).empty()) << level.id << " " << to_json(validate_level(level)).dump();
  }
}

TEST(Validate, EquivalentMutant) {
  auto file = oracle::level_file("loop-01");
  // roundsCount never reaches 4 inside a three-lap recipe.
  const json never = {{"kind", "if"},
                      {"cond", {{"kind", "eq"}, {"lhs", {{"kind", "attr"}, {"name", "roundsCount"}}}, {"rhs", {{"kind", "lit"}, {"value", 4}}}}},
                      {"then", json::array({collect("red", 2)})},
                      {"else", json::array({collect("red", 1)})}};
  file["mutants"].push_back(mutant("same", {0, 0, 0}, never));
  const auto d = diagnose(file);
  ASSERT_TRUE(find(d, "EquivalentMutant"));
  EXPECT_EQ(find(d, "EquivalentMutant")->severity, Severity::error);
  EXPECT_EQ(find(d, "EquivalentMutant")->subject, "mutants/same");
  EXPECT_THROW(load_level(file.dump()), ValidationFailed);
}

TEST(Validate, LoopBoundDecreaseIsUnkillable) {
  auto file = oracle::level_file("loop-01");
  file["mutants"].push_back(mutant("short", {0}, {{"kind", "repeat"}, {"times", 2}, {"body", json::array({collect("red", 1)})}}));
  const auto d = diagnose(file);
  ASSERT_TRUE(find(d, "UnkillableMutant"));
  EXPECT_EQ(find(d, "UnkillableMutant")->severity, Severity::warning);
  EXPECT_FALSE(has_errors(d));
  EXPECT_NO_THROW(load_level(file.dump()));
  EXPECT_FALSE(has_code(diagnose(file, {true, false, {}}), "UnkillableMutant"));
}

TEST(Validate, LoopBoundIncreaseIsKillable) {
  auto file = oracle::level_file("loop-01");
  file["mutants"].push_back(mutant("long", {0}, {{"kind", "repeat"}, {"times", 4}, {"body", json::array({collect("red", 1)})}}));
  EXPECT_TRUE(diagnose(file).empty());
}

TEST(Validate, MutantProblems) {
  auto file = oracle::level_file("loop-01");
  file["mutants"].push_back(file["mutants"][0]);
  EXPECT_TRUE(has_code(diagnose(file), "DuplicateMutantId"));

  file = oracle::level_file("loop-01");
  auto copy = file["mutants"][0];
  copy["id"] = "again";
  file["mutants"].push_back(copy);
  EXPECT_TRUE(has_code(diagnose(file), "DuplicateMutantAst"));

  file = oracle::level_file("loop-01");
  file["mutants"].push_back(mutant("same", {0, 0, 0}, collect("red", 1)));
  EXPECT_TRUE(has_code(diagnose(file), "MutantNotDistinct"));

  file = oracle::level_file("loop-01");
  file["mutants"].push_back(mutant("bad", {0, 0, 9}, collect("red", 1)));
  EXPECT_TRUE(has_errors(diagnose(file)));

  file = oracle::level_file("loop-01");
  file["mutants"].push_back(mutant("blue", {0, 0, 0}, collect("blue", 1)));
  EXPECT_TRUE(has_code(diagnose(file), "UnknownBerry"));
}

TEST(Validate, PathShape) {
  auto file = oracle::level_file("loop-01");
  std::swap(file["board"]["path"][2], file["board"]["path"][3]);
  EXPECT_TRUE(has_code(diagnose(file), "PathNotAdjacent"));

  file = oracle::level_file("loop-01");
  file["board"]["path"].erase(file["board"]["path"].size() - 1);
  EXPECT_TRUE(has_code(diagnose(file), "PathNotCyclic"));

  file = oracle::level_file("loop-01");
  file["board"]["path"].push_back(file["board"]["path"][0]);
  EXPECT_TRUE(has_code(diagnose(file), "PathRepeatsTile"));

  file = oracle::level_file("loop-01");
  file["board"]["path"][5] = {9, 1};
  EXPECT_TRUE(has_code(diagnose(file), "PathOffBoard"));
}

TEST(Validate, Landmarks) {
  auto file = oracle::level_file("base-01");
  file["board"]["landmarks"]["village"] = file["board"]["path"][1];
  EXPECT_TRUE(has_code(diagnose(file, {true, false, {}}), "VillageNotAtStart"));

  file = oracle::level_file("base-01");
  file["board"]["landmarks"]["tower"] = file["board"]["path"][1];
  EXPECT_TRUE(has_code(diagnose(file, {true, false, {}}), "TowerNotAtEnd"));

  file = oracle::level_file("loop-01");
  file["board"]["landmarks"]["signposts"][0]["pos"] = {3, 3};
  EXPECT_TRUE(has_code(diagnose(file), "SignpostOffPath"));

  file = oracle::level_file("loop-01");
  file["board"]["landmarks"]["signposts"] = json::array();
  EXPECT_TRUE(has_code(diagnose(file), "MissingSignpost"));

  file = oracle::level_file("loop-01");
  file["board"]["landmarks"]["crossing"] = {3, 3};
  EXPECT_TRUE(has_code(diagnose(file), "CrossingOffPath"));

  file = oracle::level_file("loop-01");
  file["board"]["landmarks"]["basket"] = {2, 1};
  EXPECT_TRUE(has_code(diagnose(file), "BasketNotAtStart"));

  file = oracle::level_file("loop-01");
  file["board"]["landmarks"]["bushes"] = json::array();
  EXPECT_TRUE(has_code(diagnose(file), "MissingBush"));
}

TEST(Validate, NonStandardBoardSizeIsAWarning) {
  auto file = oracle::level_file("loop-01");
  file["board"]["width"] = 9;
  for (auto& row : file["board"]["tiles"]) row = row.get<std::string>() + "w";
  const auto d = diagnose(file);
  ASSERT_TRUE(find(d, "NonStandardBoardSize"));
  EXPECT_EQ(find(d, "NonStandardBoardSize")->severity, Severity::warning);
  EXPECT_FALSE(has_errors(d));

  file["board"]["width"] = 10;
  EXPECT_TRUE(has_code(diagnose(file), "BoardShape"));
}

TEST(Validate, SchemaAndRoster) {
  auto file = oracle::level_file("loop-01");
  file["schema"]["counters"].erase("roundsCount");
  EXPECT_TRUE(has_code(diagnose(file), "MissingRoundsCounter"));

  file = oracle::level_file("base-01");
  file["schema"]["colors"]["shirt"]["palette"] = json::array();
  EXPECT_THROW(level_from_json(file), SchemaError);
  auto level = *find_builtin("base-01");
  level.schema.colors.begin()->second.palette.clear();
  EXPECT_TRUE(has_code(validate_level(level, {true, false, {}}), "EmptyPalette"));

  file = oracle::level_file("loop-01");
  file["roster"]["mutants"] = {{{"id", "zz"}}};
  EXPECT_TRUE(has_code(diagnose(file), "UnknownRosterMutant"));

  file = oracle::level_file("loop-01");
  file["roster"]["spawnInterval"] = 0;
  EXPECT_TRUE(has_code(diagnose(file), "InvalidSpawnInterval"));

  file = oracle::level_file("loop-02");
  file["roster"]["healthy"][0]["attrs"]["shirt"] = "purple";
  EXPECT_TRUE(has_code(diagnose(file), "InvalidAppearance"));

  file = oracle::level_file("loop-01");
  file["roster"]["healthy"][0]["count"] = 0;
  const auto d = diagnose(file);
  ASSERT_TRUE(find(d, "NoHealthyCritters"));
  EXPECT_EQ(find(d, "NoHealthyCritters")->severity, Severity::warning);
}

TEST(Validate, ProgramKind) {
  auto file = oracle::level_file("loop-01");
  file["program"] = oracle::level_file("base-01")["program"];
  file["mutants"] = json::array();
  EXPECT_TRUE(has_code(diagnose(file), "ProgramKindMismatch"));
}

TEST(Catalog, Contents) {
  const auto& levels = builtin_catalog();
  std::vector<std::string> ids;
  for (const auto& l : levels) ids.push_back(l.id);
  EXPECT_EQ(ids, (std::vector<std::string>{"base-01", "loop-01", "loop-02", "loop-10"}));
  EXPECT_TRUE(validate_catalog(levels).empty());
  EXPECT_EQ(find_builtin("nope"), nullptr);
  for (const auto& l : levels) {
    if (l.kind == LevelKind::base) {
      EXPECT_FALSE(l.unlock.requires_level);
      EXPECT_EQ(l.board.width, 16);
      continue;
    }
    EXPECT_EQ(l.board.width, 8);
    EXPECT_EQ(l.board.height, 8);
    ASSERT_TRUE(l.unlock.requires_level);
    const auto* pre = find_builtin(*l.unlock.requires_level);
    ASSERT_NE(pre, nullptr);
    EXPECT_EQ(pre->kind, LevelKind::base);
    EXPECT_EQ(l.unlock.min_points, 800);
    EXPECT_EQ(engine::spawn_schedule(l, 0).entries.size(), 10u);
  }
}

TEST(Catalog, RoundTrip) {
  for (const auto& level : builtin_catalog()) {
    const auto again = level_from_json(json::parse(to_json(level).dump()));
    EXPECT_EQ(again, level) << level.id;
    EXPECT_TRUE(validate_level(again).empty()) << level.id;
    EXPECT_EQ(to_json(again), to_json(level));
  }
  for (const auto& [id, text] : builtin_sources()) {
    ASSERT_NE(find_builtin(id), nullptr);
    EXPECT_EQ(parse_level(text), *find_builtin(id));
  }
}

TEST(Catalog, CrossLevelChecks) {
  auto levels = builtin_catalog();
  levels.push_back(levels[1]);
  EXPECT_TRUE(has_code(validate_catalog(levels), "DuplicateLevelId"));

  levels = builtin_catalog();
  levels[1].unlock.requires_level = "base-99";
  EXPECT_TRUE(has_code(validate_catalog(levels), "UnknownPrerequisite"));

  levels = builtin_catalog();
  levels[0].unlock.requires_level = "loop-01";
  levels[0].unlock.min_points = 800;
  EXPECT_TRUE(has_code(validate_catalog(levels), "UnlockCycle"));
}

TEST(Catalog, Deposits) {
  auto deposit_of = [](const Level& level) {
    const auto r = engine::simulate(level, {}, 0);
    for (const auto& e : r.timeline) {
      if (e.kind == engine::EventKind::deposit && !r.outcomes[e.critter].mutant) return e.detail.at("berries");
    }
    return json();
  };
  EXPECT_EQ(deposit_of(*find_builtin("loop-01")), (json{{"red", 3}}));
  EXPECT_EQ(deposit_of(*find_builtin("loop-10")), (json{{"pink", 2}, {"red", 4}}));
}

TEST(Catalog, Base01OrangePortalCatchesEight) {
  const auto& level = *find_builtin("base-01");
  const auto r = engine::simulate(level, engine::setup_from_json(oracle::golden("orange_portal_setup.json"), level), 0);
  EXPECT_EQ(r.detected, (engine::Fraction{8, 15}));
  // Independently: the reference model agrees.
  const auto ref = oracle::base_outcomes(oracle::level_file("base-01"), oracle::golden("orange_portal_setup.json").at("portals"));
  EXPECT_EQ(ref.caught, 8u);
  EXPECT_EQ(ref.mutants, 15u);
}

}  // namespace
}  // namespace critters::levels
