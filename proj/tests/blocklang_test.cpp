#include <gtest/gtest.h>

#include <random>

#include "critters/blocklang/ast_json.hpp"
#include "critters/blocklang/ast_path.hpp"
#include "critters/blocklang/interpreter.hpp"
#include "critters/blocklang/typecheck.hpp"
#include "critters/errors.hpp"
#include "oracle.hpp"

namespace critters::blocklang {
namespace {

using namespace dsl;

AttributeSchema base_schema() {
  AttributeSchema s;
  s.colors["shirt"] = ColorAttr{{kAllColors.begin(), kAllColors.end()}, Color::red};
  return s;
}

AttributeSchema loop_schema() {
  AttributeSchema s;
  s.counters["redBerries"] = CounterAttr{CounterRole::berry, "red"};
  s.counters["roundsCount"] = CounterAttr{CounterRole::rounds, {}};
  return s;
}

CritterState with(AttributeSchema schema, std::initializer_list<std::pair<const char*, AttrValue>> values) {
  auto s = schema.initial_state();
  for (const auto& [k, v] : values) s.attrs[k] = v;
  return s;
}

CritterProgram orange_boots_cut() {
  return {{set_attr("shirt", lit(Color::red))},
          {if_(tile_is(Terrain::dirt), {set_attr("shirt", lit(Color::orange))})}};
}

TEST(Value, WalkableTerrain) {
  EXPECT_TRUE(walkable(Terrain::grass));
  EXPECT_TRUE(walkable(Terrain::dirt));
  EXPECT_TRUE(walkable(Terrain::ice));
  EXPECT_FALSE(walkable(Terrain::water));
  EXPECT_FALSE(walkable(Terrain::wood));
}

TEST(Value, NamesRoundTrip) {
  for (auto c : kAllColors) EXPECT_EQ(parse_color(to_string(c)), c);
  for (auto t : kAllTerrains) {
    EXPECT_EQ(parse_terrain(to_string(t)), t);
    EXPECT_EQ(terrain_from_code(terrain_code(t)), t);
  }
  EXPECT_FALSE(parse_color("teal"));
  EXPECT_FALSE(terrain_from_code('x'));
}

TEST(Eval, ShirtEqualsOrange) {
  const Interpreter in(base_schema());
  const auto s = with(base_schema(), {{"shirt", Color::orange}});
  EXPECT_EQ(in.eval(eq(attr("shirt"), lit(Color::orange)), s, std::nullopt), Value(Truth{true}));
}

TEST(Eval, ZeroEqualsZero) {
  const Interpreter in(loop_schema());
  EXPECT_EQ(in.eval(eq(lit(0), lit(0)), loop_schema().initial_state(), std::nullopt), Value(Truth{true}));
}

TEST(Eval, BerriesEqualRounds) {
  const Interpreter in(loop_schema());
  const auto s = with(loop_schema(), {{"redBerries", Count{2}}, {"roundsCount", Count{2}}});
  EXPECT_EQ(in.eval(eq(attr("redBerries"), attr("roundsCount")), s, std::nullopt), Value(Truth{true}));
}

TEST(Eval, Errors) {
  const Interpreter in(base_schema());
  const auto s = base_schema().initial_state();
  try {
    in.eval(eq(attr("shirt"), lit(3)), s, std::nullopt);
    FAIL();
  } catch (const EvalError& e) {
    EXPECT_EQ(e.code(), "TypeMismatch");
  }
  try {
    in.eval(attr("hat"), s, std::nullopt);
    FAIL();
  } catch (const EvalError& e) {
    EXPECT_EQ(e.code(), "UnknownAttribute");
  }
  try {
    in.eval(tile_is(Terrain::dirt), s, std::nullopt);
    FAIL();
  } catch (const EvalError& e) {
    EXPECT_EQ(e.code(), "TileContextMissing");
  }
}

TEST(Exec, DirtTurnsShirtOrange) {
  const Interpreter in(base_schema());
  const auto cut = orange_boots_cut();
  const auto red = with(base_schema(), {{"shirt", Color::red}});
  const auto r = in.exec(cut.on_tile, red, Terrain::dirt);
  EXPECT_EQ(r.state.attrs.at("shirt"), AttrValue(Color::orange));
  ASSERT_EQ(r.effects.size(), 1u);
  EXPECT_EQ(std::get<AttrChange>(r.effects[0]).name, "shirt");
}

TEST(Exec, GrassLeavesStateUntouched) {
  const Interpreter in(base_schema());
  const auto red = with(base_schema(), {{"shirt", Color::red}});
  const auto r = in.exec(orange_boots_cut().on_tile, red, Terrain::grass);
  EXPECT_EQ(r.state, red);
  EXPECT_TRUE(r.effects.empty());
}

TEST(Exec, LapBodyThreeTimes) {
  const Interpreter in(loop_schema());
  auto s = loop_schema().initial_state();
  for (int i = 0; i < 3; ++i) s = in.exec({collect("red", 1)}, s, std::nullopt).state;
  EXPECT_EQ(s.attrs.at("redBerries"), AttrValue(Count{3}));
}

TEST(Exec, RepeatRunsBody) {
  const Interpreter in(loop_schema());
  const auto r = in.exec({repeat(4, {collect("red", 2)})}, loop_schema().initial_state(), std::nullopt);
  EXPECT_EQ(r.state.attrs.at("redBerries"), AttrValue(Count{8}));
  EXPECT_EQ(r.effects.size(), 4u);
  EXPECT_EQ(std::get<CollectEffect>(r.effects.back()).total, 8u);
}

TEST(Exec, CounterOverflow) {
  const Interpreter in(loop_schema(), 5);
  try {
    in.exec({repeat(6, {collect("red", 1)})}, loop_schema().initial_state(), std::nullopt);
    FAIL();
  } catch (const EvalError& e) {
    EXPECT_EQ(e.code(), "CounterOverflow");
  }
}

TEST(RunTest, ThreeAssertionsStopAtSecond) {
  const Interpreter in(loop_schema());
  const TestBlock t = {assert_eq(attr("redBerries"), lit(1)), assert_eq(attr("redBerries"), lit(2)),
                       assert_eq(attr("redBerries"), lit(3))};
  const auto s = with(loop_schema(), {{"redBerries", Count{1}}, {"roundsCount", Count{1}}});
  const auto out = in.run_test(t, s, std::nullopt);
  EXPECT_FALSE(out.passed);
  EXPECT_EQ(out.failed_assertion, AstPath({1}));
}

TEST(RunTest, EmptyTestPasses) {
  const Interpreter in(loop_schema());
  const auto out = in.run_test({}, loop_schema().initial_state(), std::nullopt);
  EXPECT_TRUE(out.passed);
  EXPECT_FALSE(out.failed_assertion);
}

TEST(RunTest, LongTestPassesInRoundTwo) {
  const Interpreter in(loop_schema());
  const auto t = parse_test(oracle::slurp(oracle::source_path("tests/golden/long_test.json")));
  const auto s = with(loop_schema(), {{"redBerries", Count{2}}, {"roundsCount", Count{2}}});
  EXPECT_TRUE(in.run_test(t, s, std::nullopt).passed);
}

TEST(RunTest, FailurePathAddressesAssertionInsideIf) {
  const Interpreter in(loop_schema());
  const auto t = parse_test(oracle::slurp(oracle::source_path("tests/golden/long_test.json")));
  const auto s = with(loop_schema(), {{"redBerries", Count{5}}, {"roundsCount", Count{2}}});
  const auto out = in.run_test(t, s, std::nullopt);
  ASSERT_FALSE(out.passed);
  EXPECT_EQ(*out.failed_assertion, AstPath({1, 1, 0}));
  EXPECT_NE(assertion_at(t, *out.failed_assertion), nullptr);
}

TEST(Typecheck, ColorAgainstCount) {
  const TestBlock t = {assert_eq(attr("shirt"), lit(3))};
  const auto d = typecheck(t, base_schema(), LevelKind::base);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].code, "TypeMismatch");
  EXPECT_EQ(d[0].path, AstPath({0}));
}

TEST(Typecheck, RepeatInCut) {
  const CritterProgram cut{{}, {repeat(2, {set_attr("shirt", lit(Color::blue))})}};
  EXPECT_TRUE(has_code(typecheck(cut, base_schema()), "ContextViolation"));
}

TEST(Typecheck, ContextRuleTable) {
  // Each row: program, expected code.
  auto loop_plus_shirt = loop_schema();
  loop_plus_shirt.colors["shirt"] = ColorAttr{{Color::red, Color::blue}, Color::red};
  EXPECT_TRUE(has_code(typecheck(CritterProgram{{collect("red", 1)}, {}}, loop_plus_shirt), "ContextViolation"));
  EXPECT_TRUE(has_code(typecheck(Recipe{{repeat(2, {if_(tile_is(Terrain::dirt), {collect("red", 1)})})}}, loop_schema()),
                       "ContextViolation"));
  EXPECT_TRUE(has_code(typecheck(TestBlock{if_test(tile_is(Terrain::ice), {})}, loop_schema(), LevelKind::loop),
                       "ContextViolation"));
  EXPECT_TRUE(typecheck(TestBlock{if_test(tile_is(Terrain::ice), {assert_eq(attr("shirt"), lit(Color::red))})},
                        base_schema(), LevelKind::base)
                  .empty());
  EXPECT_TRUE(has_code(typecheck(Recipe{{collect("red", 1)}}, loop_schema()), "RecipeShape"));
  EXPECT_TRUE(has_code(typecheck(Recipe{{repeat(2, {set_attr("roundsCount", lit(1))})}}, loop_schema()),
                       "EngineAttributeWrite"));
  EXPECT_TRUE(has_code(typecheck(Recipe{{repeat(2, {collect("blue", 1)})}}, loop_schema()), "UnknownBerry"));
  EXPECT_TRUE(has_code(typecheck(Recipe{{repeat(0, {collect("red", 1)})}}, loop_schema()), "NonPositiveCount"));
  EXPECT_TRUE(has_code(typecheck(TestBlock{if_test(attr("redBerries"), {})}, loop_schema(), LevelKind::loop),
                       "ConditionNotTruth"));
  EXPECT_TRUE(has_code(typecheck(TestBlock{assert_eq(attr("hat"), lit(1))}, loop_schema(), LevelKind::loop),
                       "UnknownAttribute"));
  auto narrow = base_schema();
  narrow.colors["shirt"].palette = {Color::red, Color::orange};
  EXPECT_TRUE(has_code(typecheck(CritterProgram{{set_attr("shirt", lit(Color::blue))}, {}}, narrow), "PaletteViolation"));
}

TEST(Typecheck, ShortTestUnderLoopSchema) {
  const auto t = parse_test(oracle::slurp(oracle::source_path("tests/golden/short_test.json")));
  EXPECT_TRUE(typecheck(t, loop_schema(), LevelKind::loop).empty());
}

TEST(Json, GoldenRecipeRoundTrips) {
  const auto text = oracle::slurp(oracle::source_path("tests/golden/loop01_recipe.json"));
  const auto program = parse_program(text);
  EXPECT_EQ(emit(program) + "\n", text);
  EXPECT_EQ(program, Program(Recipe{{repeat(3, {collect("red", 1)})}}));
}

TEST(Json, EmptyTextIsSyntaxError) {
  EXPECT_THROW(parse_program(""), SyntaxError);
  try {
    parse_test("[{\"kind\":");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_GT(e.position(), 0u);
  }
}

TEST(Json, UnknownVariantIsSchemaError) {
  EXPECT_THROW(parse_test(R"([{"kind":"assertLt","lhs":{"kind":"lit","value":1},"rhs":{"kind":"lit","value":2}}])"),
               SchemaError);
  EXPECT_THROW(parse_expr(R"({"kind":"lit","value":-1})"), SchemaError);
  EXPECT_THROW(parse_expr(R"({"kind":"lit","value":true})"), SchemaError);
}

TEST(Json, RoundsFourParseEmitIdentity) {
  const TestBlock rounds_four = {assert_eq(attr("roundsCount"), lit(4))};
  EXPECT_EQ(parse_test(emit(rounds_four)), rounds_four);
  EXPECT_EQ(emit(rounds_four) + "\n", oracle::slurp(oracle::source_path("tests/golden/rounds_four_test.json")));
}

TEST(Json, EmissionIsCanonical) {
  const auto e = eq(attr("redBerries"), attr("roundsCount"));
  EXPECT_EQ(emit(e), R"({"kind":"eq","lhs":{"kind":"attr","name":"redBerries"},"rhs":{"kind":"attr","name":"roundsCount"}})");
  const auto reordered = R"({ "rhs": {"name":"roundsCount","kind":"attr"}, "kind":"eq", "lhs":{"kind":"attr","name":"redBerries"} })";
  EXPECT_EQ(emit(parse_expr(reordered)), emit(e));
}

TEST(Json, CanonicalCorpusRoundTrips) {
  for (const auto* name : {"long_test.json", "short_test.json", "shirt_test.json", "rounds_four_test.json", "three_assertions_test.json"}) {
    const auto text = oracle::slurp(oracle::source_path(std::string("tests/golden/") + name));
    EXPECT_EQ(emit(parse_test(text)) + "\n", text) << name;
  }
}

TEST(Path, NodeAtFollowsLayout) {
  const Program p = orange_boots_cut();
  const auto cond = node_at(p, {1, 0, 0});
  ASSERT_TRUE(cond);
  EXPECT_EQ(std::get<Expr>(*cond), tile_is(Terrain::dirt));
  const auto value = node_at(p, {1, 0, 1, 0, 0});
  ASSERT_TRUE(value);
  EXPECT_EQ(std::get<Expr>(*value), lit(Color::orange));
  EXPECT_FALSE(node_at(p, {2}));
  EXPECT_FALSE(node_at(p, {1, 0, 3}));
}

TEST(Path, ReplaceChecksCategory) {
  const Program p = orange_boots_cut();
  const auto q = replace_at(p, {0, 0, 0}, BehaviorNode{lit(Color::blue)});
  EXPECT_EQ(std::get<CritterProgram>(q).init[0], set_attr("shirt", lit(Color::blue)));
  EXPECT_EQ(p, Program(orange_boots_cut()));
  EXPECT_THROW(replace_at(p, {0, 0, 0}, BehaviorNode{BehaviorBlock{}}), IllTypedReplacement);
  EXPECT_THROW(replace_at(p, {5}, BehaviorNode{BehaviorBlock{}}), BadPath);
}

// Random well-typed loop programs and tests never raise type errors at runtime.
class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  Expr value(StaticType t) {
    if (t == StaticType::color) return pick(2) ? attr("shirt") : lit(kColors[pick(2)]);
    switch (pick(4)) {
      case 0: return attr("redBerries");
      case 1: return attr("pinkBerries");
      case 2: return attr("roundsCount");
      default: return lit(pick(5));
    }
  }
  Expr cond() {
    const auto t = pick(2) ? StaticType::color : StaticType::count;
    return eq(value(t), value(t));
  }
  BehaviorBlock body(int depth) {
    BehaviorBlock b;
    for (auto n = pick(3) + 1; n > 0; --n) {
      switch (depth > 0 ? pick(4) : pick(2)) {
        case 0: b.push_back(collect(pick(2) ? "red" : "pink", pick(3) + 1)); break;
        case 1: b.push_back(set_attr("shirt", lit(kColors[pick(2)]))); break;
        case 2: b.push_back(if_(cond(), body(depth - 1), body(depth - 1))); break;
        default: b.push_back(repeat(pick(2) + 1, body(depth - 1))); break;
      }
    }
    return b;
  }
  TestBlock test(int depth) {
    TestBlock t;
    for (auto n = pick(3); n > 0; --n) {
      if (depth > 0 && pick(2)) {
        t.push_back(if_test(cond(), test(depth - 1), test(depth - 1)));
      } else {
        const auto ty = pick(2) ? StaticType::color : StaticType::count;
        t.push_back(assert_eq(value(ty), value(ty)));
      }
    }
    return t;
  }
  std::uint64_t pick(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng_); }

 private:
  static constexpr Color kColors[2] = {Color::red, Color::blue};
  std::mt19937_64 rng_;
};

TEST(Property, WellTypedProgramsNeverFailTypeChecksAtRuntime) {
  AttributeSchema schema = loop_schema();
  schema.counters["pinkBerries"] = CounterAttr{CounterRole::berry, "pink"};
  schema.colors["shirt"] = ColorAttr{{Color::red, Color::blue}, Color::red};
  const Interpreter in(schema);
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Generator g(seed);
    const Recipe r{{repeat(g.pick(3) + 1, g.body(2))}};
    ASSERT_TRUE(typecheck(r, schema).empty()) << emit(Program(r));
    const auto t = g.test(2);
    ASSERT_TRUE(typecheck(t, schema, LevelKind::loop).empty()) << emit(t);
    const auto before = schema.initial_state();
    const auto run = in.exec(r.stmts, before, std::nullopt);
    EXPECT_TRUE(schema.conforms(run.state));
    const auto copy = run.state;
    const auto out = in.run_test(t, run.state, std::nullopt);
    EXPECT_EQ(run.state, copy);
    if (!out.passed) EXPECT_NE(assertion_at(t, *out.failed_assertion), nullptr);
    EXPECT_EQ(parse_program(emit(Program(r))), Program(r));
    EXPECT_EQ(parse_test(emit(t)), t);

    // Effects account for every changed attribute.
    std::set<std::string> touched;
    for (const auto& e : run.effects) {
      if (const auto* a = std::get_if<AttrChange>(&e)) touched.insert(a->name);
      if (const auto* c = std::get_if<CollectEffect>(&e)) touched.insert(c->counter);
    }
    for (const auto& [name, v] : run.state.attrs) {
      if (before.attrs.at(name) != v) EXPECT_TRUE(touched.count(name)) << name;
    }
  }
}

TEST(Property, InterpreterAgreesWithReference) {
  AttributeSchema schema = loop_schema();
  schema.counters["pinkBerries"] = CounterAttr{CounterRole::berry, "pink"};
  schema.colors["shirt"] = ColorAttr{{Color::red, Color::blue}, Color::red};
  const auto schema_json = to_json(schema);
  const Interpreter in(schema);
  for (std::uint64_t seed = 1000; seed < 1200; ++seed) {
    Generator g(seed);
    const auto body = g.body(2);
    const auto t = g.test(2);
    auto s = in.exec(body, schema.initial_state(), std::nullopt).state;
    oracle::State ref = oracle::initial_state(schema_json, nlohmann::json::object());
    oracle::exec(to_json(body), ref, schema_json, "");
    for (const auto& [name, v] : s.attrs) EXPECT_EQ(to_json(v), ref.at(name)) << name;
    EXPECT_EQ(in.run_test(t, s, std::nullopt).passed, oracle::run_test(to_json(t), ref));
  }
}

}  // namespace
}  // namespace critters::blocklang
