// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "critters/blocklang/ast_json.hpp"
#include "critters/engine/roster.hpp"
#include "critters/engine/score.hpp"
#include "critters/engine/simulate.hpp"
#include "critters/levels/catalog.hpp"
#include "critters/mutation/analysis.hpp"
#include "critters/mutation/solver.hpp"
#include "oracle.hpp"
#include "service_support.hpp"

namespace {

using namespace critters;
using namespace critters::blocklang::dsl;
using blocklang::TestBlock;
using engine::Fate;
using nlohmann::json;

// Expected scoreboard values.
constexpr std::int64_t kBaseSaved = 250, kBaseDetected = 400, kBasePortals = 0, kBaseBonus = 65, kBaseTotal = 715;
constexpr std::int64_t kMaxBaseScore = 1100;
constexpr std::int64_t kLoopSuccessful = 400, kLoopDetected = 600, kLoopPenalty = 0, kLoopTotal = 1000;
constexpr std::int64_t kLatePenalty = 25;
constexpr std::int64_t kUnlockPoints = 800;

struct Check {
  bool ok = true;
  std::ostringstream note;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      if (ok) note << "failed: ";
      else note << "; ";
      note << what;
      ok = false;
    }
  }
};

const levels::Level& builtin(std::string_view id) { return *levels::find_builtin(id); }

TestBlock golden_test(const std::string& name) {
  return blocklang::parse_test(oracle::slurp(oracle::source_path("tests/golden/" + name)));
}

engine::TestSetup golden_setup(const std::string& name, const levels::Level& level) {
  return engine::setup_from_json(oracle::golden(name), level);
}

std::string s(std::int64_t v) { return std::to_string(v); }

// --- A1 ------------------------------------------------------------------------

void a1(Check& c) {
  const auto& level = builtin("base-01");
  const auto r = engine::simulate(level, golden_setup("orange_portal_setup.json", level), 0);
  const auto b = engine::score(r, 0);
  c.expect(b.points("saved") == kBaseSaved, "saved " + s(b.points("saved")));
  c.expect(b.points("detected") == kBaseDetected, "detected " + s(b.points("detected")));
  c.expect(b.points("portals") == kBasePortals, "portals " + s(b.points("portals")));
  c.expect(b.points("time_bonus") == kBaseBonus, "bonus " + s(b.points("time_bonus")));
  c.expect(b.total == kBaseTotal, "total " + s(b.total));
  const auto ref = oracle::base_outcomes(oracle::level_file("base-01"), oracle::golden("orange_portal_setup.json").at("portals"));
  c.expect(oracle::base_total(ref.saved, ref.healthy, ref.caught, ref.mutants, 0) == b.total, "reference total differs");
  if (c.ok) c.note << "base-01 orange portal: " << b.points("saved") << " / " << b.points("detected") << " / "
                   << b.points("portals") << " / " << b.points("time_bonus") << " = " << b.total;
}

// --- A2 ------------------------------------------------------------------------

void a2(Check& c) {
  const auto& level = builtin("base-01");
  const auto setup = golden_setup("base01_perfect_setup.json", level);
  for (double secs : {0.0, 12.5, 30.0}) {
    for (std::uint64_t seed : {0ull, 1ull, 2024ull}) {
      const auto r = engine::simulate(level, setup, seed);
      const auto total = engine::score(r, secs).total;
      c.expect(total == kMaxBaseScore, "setup " + std::to_string(secs) + "s seed " + std::to_string(seed) + " total " + s(total));
    }
  }
  if (c.ok) c.note << "base-01 red + orange portals, setup <= 30 s: total " << kMaxBaseScore;
}

// --- A3 ------------------------------------------------------------------------

void a3(Check& c) {
  const auto& level = builtin("loop-01");
  const auto r = engine::simulate(level, engine::all_signposts(level, golden_test("short_test.json")), 0);
  const auto b = engine::score(r, 0);
  c.expect(b.points("successful") == kLoopSuccessful, "successful " + s(b.points("successful")));
  c.expect(b.points("detected") == kLoopDetected, "detected " + s(b.points("detected")));
  c.expect(b.points("penalty") == kLoopPenalty, "penalty " + s(b.points("penalty")));
  c.expect(b.total == kLoopTotal, "total " + s(b.total));
  if (c.ok) c.note << "loop-01 short test: " << b.points("successful") << " / " << b.points("detected") << " / "
                   << b.points("penalty") << " = " << b.total;
}

// --- A4 / A5 ---------------------------------------------------------------------

std::vector<std::pair<Fate, std::uint64_t>> fates(const engine::RunResult& r) {
  std::vector<std::pair<Fate, std::uint64_t>> out;
  for (const auto& o : r.outcomes) out.emplace_back(o.fate, o.round);
  return out;
}

void everyone_back_in_round_one(Check& c, const std::string& golden) {
  const auto& level = builtin("loop-01");
  const auto test = golden_test(golden);
  for (std::uint64_t seed : {0ull, 5ull}) {
    const auto r = engine::simulate(level, engine::all_signposts(level, test), seed);
    for (const auto& o : r.outcomes) {
      c.expect(o.fate == Fate::sent_back && o.round == 1, "critter " + std::to_string(o.critter) + " not sent back in round 1");
    }
    c.expect(r.outcomes.size() == 10, "roster size " + std::to_string(r.outcomes.size()));
    const auto b = engine::score(r, 0);
    c.expect(b.points("successful") == 0 && b.points("detected") == 600 && b.points("penalty") == 0 && b.total == 600,
             "score " + s(b.total));
  }
  const auto ref = oracle::loop_outcomes(oracle::level_file("loop-01"), oracle::golden(golden));
  for (const auto& col : ref) c.expect(col.sent_back && col.round == 1, "reference collector passes");
}

void a4(Check& c) {
  everyone_back_in_round_one(c, "rounds_four_test.json");
  if (c.ok) c.note << "AssertEq(roundsCount, 4): all 10 collectors sent back in round 1; 0 + 600 + 0 = 600";
}

void a5(Check& c) {
  everyone_back_in_round_one(c, "three_assertions_test.json");
  const auto& level = builtin("loop-01");
  for (std::uint64_t seed : {0ull, 9ull}) {
    const auto a = engine::simulate(level, engine::all_signposts(level, golden_test("rounds_four_test.json")), seed);
    const auto b = engine::simulate(level, engine::all_signposts(level, golden_test("three_assertions_test.json")), seed);
    c.expect(fates(a) == fates(b), "outcomes differ from the single-assertion test");
    c.expect(engine::score(a, 0) == engine::score(b, 0), "scores differ");
  }
  if (c.ok) c.note << "three-assertion sequence: outcome identical to A4";
}

// --- A6 ------------------------------------------------------------------------

// Tests built from healthy lap states: for each round in `rounds`, check the
// chosen counters against their healthy values, split by shirt when the
// roster has several looks.
TestBlock sound_test(const json& file, const std::vector<json>& looks, std::uint64_t rounds,
                     const std::vector<std::string>& counters) {
  TestBlock t;
  for (const auto& look : looks) {
    const auto laps = oracle::lap_states(file, file.at("program"), look);
    TestBlock per_look;
    for (std::size_t k = 0; k < laps.size(); ++k) {
      if (!(rounds >> k & 1)) continue;
      TestBlock checks;
      for (const auto& name : counters) checks.push_back(assert_eq(attr(name), lit(laps[k].at(name).get<std::uint64_t>())));
      per_look.push_back(if_test(eq(attr("roundsCount"), lit(k + 1)), checks));
    }
    if (look.contains("shirt")) {
      t.push_back(if_test(eq(attr("shirt"), lit(*blocklang::parse_color(look.at("shirt").get<std::string>()))), per_look));
    } else {
      t.insert(t.end(), per_look.begin(), per_look.end());
    }
  }
  return t;
}

void a6(Check& c) {
  std::set<std::pair<std::uint64_t, std::uint64_t>> pairs;
  std::size_t tests = 0;
  for (const auto* id : {"loop-01", "loop-02"}) {
    const auto& level = builtin(id);
    const auto file = oracle::level_file(id);
    const auto looks = oracle::healthy_looks(file);
    std::vector<std::vector<std::string>> counter_sets;
    std::vector<std::string> all;
    for (const auto& [name, spec] : file.at("schema").at("counters").items()) {
      if (spec.at("role") != "berry") continue;
      counter_sets.push_back({name});
      all.push_back(name);
    }
    if (all.size() > 1) counter_sets.push_back(all);
    const auto laps = file.at("program").at("body").at(0).at("times").get<std::uint64_t>();
    for (std::uint64_t rounds = 1; rounds < (std::uint64_t{1} << laps); ++rounds) {
      for (const auto& counters : counter_sets) {
        const auto test = sound_test(file, looks, rounds, counters);
        const auto ref = oracle::loop_outcomes(file, blocklang::parse_json(blocklang::emit(test)));
        for (std::uint64_t seed : {0ull, 3ull}) {
          const auto r = engine::simulate(level, engine::all_signposts(level, test), seed);
          ++tests;
          std::int64_t expected = 0;
          for (std::size_t i = 0; i < ref.size(); ++i) {
            const auto& o = r.outcomes[i];
            const auto& want = ref[i];
            c.expect(o.mutant == want.mutant && (o.fate == Fate::sent_back) == want.sent_back, std::string(id) + " outcome");
            if (!want.mutant || !want.sent_back) continue;
            c.expect(o.round == want.round, std::string(id) + " detection round");
            c.expect(o.first_effect_round == want.first_effect, std::string(id) + " first effect round");
            const auto d = want.round, fe = want.first_effect;
            c.expect(d >= fe, "detection before first effect");
            pairs.insert({fe, d});
            expected += kLatePenalty * static_cast<std::int64_t>(d - fe);
          }
          c.expect(r.total_penalty == expected, std::string(id) + " penalty " + s(r.total_penalty) + " vs " + s(expected));
          c.expect(engine::score(r, 0).total == oracle::loop_score(ref).total, std::string(id) + " total");
        }
      }
    }
  }
  bool late = false;
  for (const auto& [r, d] : pairs) late = late || d > r;
  c.expect(late, "no late detection exercised");
  if (c.ok) {
    c.note << tests << " runs, (r,d) pairs";
    for (const auto& [r, d] : pairs) c.note << " (" << r << "," << d << ")";
    c.note << " all penalised 25*(d-r)";
  }
}

// --- A7 ------------------------------------------------------------------------

void a7(Check& c) {
  const auto& level = builtin("loop-01");
  const auto file = oracle::level_file("loop-01");
  for (std::uint64_t seed : {0ull, 1ull, 77ull}) {
    const auto long_run = engine::simulate(level, engine::all_signposts(level, golden_test("long_test.json")), seed);
    const auto short_run = engine::simulate(level, engine::all_signposts(level, golden_test("short_test.json")), seed);
    c.expect(fates(long_run) == fates(short_run), "per-critter outcomes differ for seed " + std::to_string(seed));
    c.expect(long_run.outcomes.size() == 10, "roster incomplete");
  }
  const auto a = oracle::loop_outcomes(file, oracle::golden("long_test.json"));
  const auto b = oracle::loop_outcomes(file, oracle::golden("short_test.json"));
  for (std::size_t i = 0; i < a.size(); ++i) {
    c.expect(a[i].sent_back == b[i].sent_back && a[i].round == b[i].round, "reference outcomes differ");
  }
  if (c.ok) c.note << "long and short loop-01 tests agree on all 10 critters (6 healthy, 4 mutants)";
}

// --- A8 ------------------------------------------------------------------------

std::map<std::size_t, std::vector<std::string>> relative_events(const levels::Level& level, const engine::RunResult& r,
                                                                std::uint64_t seed) {
  std::map<std::size_t, std::uint64_t> spawned;
  for (const auto& e : engine::spawn_schedule(level, seed).entries) spawned[e.critter] = e.spawn_tick;
  std::map<std::size_t, std::vector<std::string>> out;
  for (const auto& e : r.timeline) {
    auto j = engine::to_json(e);
    j["tick"] = e.tick - spawned.at(e.critter);
    out[e.critter].push_back(j.dump());
  }
  return out;
}

void a8(Check& c) {
  std::size_t levels_checked = 0;
  for (const auto& level : levels::builtin_catalog()) {
    const auto setup = level.kind == blocklang::LevelKind::base
                           ? golden_setup("orange_portal_setup.json", level)
                           : engine::all_signposts(level, golden_test(level.id == "loop-02" ? "shirt_test.json" : "short_test.json"));
    std::set<std::vector<std::size_t>> orders;
    const auto reference = engine::simulate(level, setup, 0);
    const auto reference_events = relative_events(level, reference, 0);
    for (std::uint64_t seed : {0ull, 1ull, 42ull, 987654321ull}) {
      const auto x = engine::canonical_timeline(engine::simulate(level, setup, seed).timeline);
      const auto y = engine::canonical_timeline(engine::simulate(level, setup, seed).timeline);
      c.expect(x == y, level.id + " timelines differ for seed " + std::to_string(seed));
      const auto r = engine::simulate(level, setup, seed);
      c.expect(engine::to_json(r) == engine::to_json(reference), level.id + " result depends on seed");
      c.expect(relative_events(level, r, seed) == reference_events, level.id + " events differ beyond spawn order");
      std::vector<std::size_t> order;
      for (const auto& e : engine::spawn_schedule(level, seed).entries) order.push_back(e.critter);
      orders.insert(order);
    }
    c.expect(orders.size() > 1, level.id + " seeds never change spawn order");
    ++levels_checked;
  }
  if (c.ok) c.note << levels_checked << " levels: byte-identical timelines per seed; seeds only permute spawn order";
}

// --- A9 ------------------------------------------------------------------------

void a9(Check& c) {
  const auto& level = builtin("loop-01");
  const auto found = mutation::solve_min_test(level, {1, 0, 1'000'000});
  c.expect(found.has_value(), "no test found");
  if (!found) return;
  const auto report = mutation::adequacy(level, *found, level.mutants);
  c.expect(report.mutation_score == 1.0, "mutation score " + std::to_string(report.mutation_score));
  c.expect(report.false_positives == 0, "false positives " + std::to_string(report.false_positives));
  const auto total = engine::score(engine::simulate(level, *found, 0), 0).total;
  c.expect(total == 1000, "score " + s(total));
  // Independent check with the reference model.
  const auto ref = oracle::loop_outcomes(oracle::level_file("loop-01"),
                                         blocklang::parse_json(blocklang::emit(found->signposts.at(0).test)));
  c.expect(oracle::loop_score(ref).total == 1000, "reference score");
  if (c.ok) c.note << "solver test " << blocklang::emit(found->signposts[0].test)
                   << ": mutation score 1.0, 0 false positives, score 1000";
}

// --- A10 -----------------------------------------------------------------------

json portal(int x, int y, const TestBlock& t) { return {{"tile", {x, y}}, {"test", blocklang::to_json(t)}}; }

void a10(Check& c) {
  const auto file = oracle::level_file("base-01");
  const TestBlock orange{assert_eq(attr("shirt"), lit(blocklang::Color::orange))};
  const TestBlock blue_or_pink{
      if_test(eq(attr("shirt"), lit(blocklang::Color::blue)), {assert_eq(attr("shirt"), lit(blocklang::Color::red))}),
      if_test(eq(attr("shirt"), lit(blocklang::Color::pink)), {assert_eq(attr("shirt"), lit(blocklang::Color::red))})};
  const TestBlock not_orange{
      if_test(eq(attr("shirt"), lit(blocklang::Color::orange)), {assert_eq(attr("shirt"), lit(blocklang::Color::red))})};
  const json almost = {{"portals", {portal(2, 2, blue_or_pink), portal(7, 3, orange)}}};
  const json enough = {{"portals", {portal(2, 2, not_orange), portal(7, 3, orange)}}};

  // Expected totals from the reference model.
  const auto ra = oracle::base_outcomes(file, almost.at("portals"));
  const auto rb = oracle::base_outcomes(file, enough.at("portals"));
  const auto expect_almost = oracle::base_total(ra.saved, ra.healthy, ra.caught, ra.mutants, 61);
  const auto expect_enough = oracle::base_total(rb.saved, rb.healthy, rb.caught, rb.mutants, 120);
  c.expect(expect_almost == kUnlockPoints - 1, "reference for the 799 game is " + s(expect_almost));
  c.expect(expect_enough == kUnlockPoints, "reference for the 800 game is " + s(expect_enough));

  service_support::Harness h("accept-unlock");
  auto locked = [&](const std::string& player) {
    const auto list = h.call("GET", "/api/levels", nullptr, {{"player", player}}).body;
    for (const auto& l : list) {
      if (l.at("id") == "loop-01") return l.at("locked").get<bool>();
    }
    return true;
  };
  const auto p = h.player("Ada");
  const auto first = h.play(p, "base-01", almost, 61);
  c.expect(first.at("score").at("total") == kUnlockPoints - 1, "first game scored " + first.at("score").at("total").dump());
  c.expect(locked(p), "loop-01 unlocked at 799");
  c.expect(h.call("POST", "/api/sessions", {{"player", p}, {"level", "loop-01"}}).status == 403, "session allowed at 799");
  const auto second = h.play(p, "base-01", enough, 120);
  c.expect(second.at("score").at("total") == kUnlockPoints, "second game scored " + second.at("score").at("total").dump());
  c.expect(!locked(p), "loop-01 still locked at 800");
  c.expect(h.call("POST", "/api/sessions", {{"player", p}, {"level", "loop-01"}}).status == 201, "session refused at 800");
  c.expect(engine::stars(1000) == 3, "stars(1000)");
  c.expect(engine::stars(800) == 2, "stars(800)");
  c.expect(second.at("score").at("stars") == 2, "800-point game shows " + second.at("score").at("stars").dump() + " stars");
  if (c.ok) c.note << "799 keeps loop-01 locked, 800 unlocks it; stars(1000)=3, stars(800)=2";
}

// --- A11 -----------------------------------------------------------------------

std::vector<std::string> secrets(const levels::Level& level) {
  std::vector<std::string> out;
  for (const auto& m : level.mutants) {
    out.push_back(blocklang::to_json(mutation::apply_edits(level.program, m.edits, level.schema)).dump());
    for (const auto& e : mutation::to_json(m).at("edits")) out.push_back(e.dump());
    if (!m.hint.empty()) out.push_back(m.hint);
  }
  return out;
}

void a11(Check& c) {
  service_support::Harness h("accept-authority");
  std::vector<std::string> pre_finish;
  std::size_t reveals = 0;
  auto keep = [&](const service_support::ApiResponse& r) {
    pre_finish.push_back(r.body.dump());
    return r;
  };
  auto play = [&](const std::string& player, const std::string& level, const json& placements, double secs) {
    for (const auto& l : levels::builtin_catalog()) {
      keep(h.call("GET", "/api/levels/" + l.id, nullptr, {{"player", player}}));
    }
    keep(h.call("GET", "/api/levels", nullptr, {{"player", player}}));
    const auto created = keep(h.call("POST", "/api/sessions", {{"player", player}, {"level", level}}));
    const auto id = created.body.at("session_id").get<std::string>();
    keep(h.call("PUT", "/api/sessions/" + id + "/tests", {{"placements", json::array()}}));
    keep(h.call("PUT", "/api/sessions/" + id + "/tests", {{"placements", placements}}));
    keep(h.call("GET", "/api/sessions/" + id));
    h.advance_seconds(secs);
    const auto run = h.call("POST", "/api/sessions/" + id + "/run");
    // After the finish the reveal must carry the mutant programs.
    const auto text = run.body.dump();
    const auto hidden = secrets(*levels::find_builtin(level));
    bool shown = !hidden.empty();
    for (const auto& sct : hidden) shown = shown && text.find(sct) != std::string::npos;
    if (shown) ++reveals;
  };
  const auto a = h.player("Ada");
  const auto b = h.player("Bob");
  keep(h.call("GET", "/api/players/" + a + "/progress"));
  play(a, "base-01", oracle::golden("orange_portal_setup.json"), 12);
  play(a, "base-01", oracle::golden("base01_perfect_setup.json"), 75);
  play(b, "base-01", oracle::golden("base01_perfect_setup.json"), 3);
  play(a, "loop-01", oracle::golden("short_test.json"), 40);
  play(a, "loop-01", oracle::golden("rounds_four_test.json"), 40);
  play(b, "loop-02", oracle::golden("shirt_test.json"), 10);
  play(b, "loop-10", oracle::golden("short_test.json"), 10);
  keep(h.call("GET", "/api/leaderboard/base-01"));

  std::size_t leaks = 0;
  for (const auto& level : levels::builtin_catalog()) {
    for (const auto& sct : secrets(level)) {
      for (const auto& body : pre_finish) leaks += body.find(sct) != std::string::npos;
    }
  }
  c.expect(leaks == 0, std::to_string(leaks) + " pre-finish responses contain mutant content");
  c.expect(reveals == 7, "reveal missing after finish in " + std::to_string(7 - reveals) + " games");

  std::size_t recomputed = 0;
  for (const auto& r : service::read_log(h.service->log_file())) {
    if (r.at("event") != "game_finished") continue;
    const auto& p = r.at("payload");
    const auto& level = builtin(r.at("level").get<std::string>());
    const auto setup = engine::setup_from_json(p.at("placements"), level);
    const auto result = engine::simulate(level, setup, p.at("seed").get<std::uint64_t>());
    const auto total = engine::score(result, p.at("setup_seconds").get<double>()).total;
    c.expect(total == p.at("total").get<std::int64_t>(), "stored total " + p.at("total").dump() + " vs " + s(total));
    ++recomputed;
  }
  c.expect(recomputed == 7, "expected 7 finished games, found " + std::to_string(recomputed));
  if (c.ok) c.note << pre_finish.size() << " pre-finish responses free of mutant content; " << recomputed
                   << " stored scores equal engine recomputation";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
      {"A1", a1}, {"A2", a2}, {"A3", a3}, {"A4", a4},  {"A5", a5},  {"A6", a6},
      {"A7", a7}, {"A8", a8}, {"A9", a9}, {"A10", a10}, {"A11", a11}};
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Check c;
    try {
      run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    std::printf("%s %s %s\n", name.c_str(), c.ok ? "PASS" : "FAIL", c.note.str().c_str());
    failures += !c.ok;
  }
  std::fflush(stdout);
  return failures == 0 ? 0 : 1;
}
