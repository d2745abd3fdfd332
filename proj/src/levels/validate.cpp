#include "critters/levels/validate.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>

#include "critters/blocklang/ast_json.hpp"
#include "critters/blocklang/typecheck.hpp"
#include "critters/errors.hpp"
#include "critters/mutation/trace.hpp"

namespace critters::levels {

using namespace blocklang;

namespace {

bool adjacent(Pos a, Pos b) { return std::abs(a.x - b.x) + std::abs(a.y - b.y) == 1; }

class Validator {
 public:
  Validator(const Level& level, const ValidateOptions& options) : level_(level), options_(options) {}

  std::vector<Diagnostic> run() {
    const bool board_ok = board();
    const bool path_ok = board_ok && path();
    if (path_ok) landmarks();
    schema();
    const bool program_ok = program();
    const bool mutants_ok = program_ok && mutants();
    roster();
    if (path_ok && mutants_ok && !has_errors(out_)) behaviour();
    return std::move(out_);
  }

 private:
  void error(std::string code, std::string message, std::string subject, std::optional<Pos> pos = std::nullopt) {
    auto d = make_error(std::move(code), std::move(message), std::move(subject));
    d.pos = pos;
    out_.push_back(std::move(d));
  }

  void warning(std::string code, std::string message, std::string subject) {
    out_.push_back(make_warning(std::move(code), std::move(message), std::move(subject)));
  }

  bool board() {
    const auto& b = level_.board;
    if (b.width <= 0 || b.height <= 0) {
      error("BoardShape", "board dimensions must be positive", "board");
      return false;
    }
    bool ok = b.tiles.size() == static_cast<std::size_t>(b.height);
    for (const auto& row : b.tiles) ok = ok && row.size() == static_cast<std::size_t>(b.width);
    if (!ok) {
      error("BoardShape", "tile rows do not match the board dimensions", "board");
      return false;
    }
    const int expected = level_.kind == LevelKind::base ? 16 : 8;
    if (b.width != expected || b.height != expected) {
      warning("NonStandardBoardSize",
              std::string(to_string(level_.kind)) + " boards are normally " + std::to_string(expected) + "x" +
                  std::to_string(expected),
              "board");
    }
    return true;
  }

  bool path() {
    const auto& b = level_.board;
    const auto& path = b.path;
    if (path.size() < 3) {
      error("PathTooShort", "the path needs at least three waypoints", "board.path");
      return false;
    }
    bool ok = true;
    std::set<Pos> seen;
    for (std::size_t i = 0; i < path.size(); ++i) {
      const auto p = path[i];
      if (!b.in_bounds(p)) {
        error("PathOffBoard", "waypoint " + std::to_string(i) + " lies outside the board", "board.path", p);
        ok = false;
        continue;
      }
      if (!walkable(b.at(p))) {
        error("UnwalkablePath", "waypoint " + std::to_string(i) + " is " + std::string(to_string(b.at(p))),
              "board.path", p);
        ok = false;
      }
      if (i > 0 && !adjacent(path[i - 1], p)) {
        error("PathNotAdjacent", "waypoints " + std::to_string(i - 1) + " and " + std::to_string(i) +
                                     " are not neighbours", "board.path", p);
        ok = false;
      }
      if (!seen.insert(p).second) {
        error("PathRepeatsTile", "waypoint " + std::to_string(i) + " revisits a tile", "board.path", p);
        ok = false;
      }
    }
    if (level_.kind == LevelKind::loop && !adjacent(path.back(), path.front())) {
      error("PathNotCyclic", "a loop path must end next to where it starts", "board.path", path.back());
      ok = false;
    }
    return ok;
  }

  void landmarks() {
    const auto& b = level_.board;
    const auto& lm = b.landmarks;
    const auto& path = b.path;
    if (level_.kind == LevelKind::base) {
      if (!lm.village || *lm.village != path.front()) {
        error("VillageNotAtStart", "the village must be the first waypoint", "board.landmarks.village", lm.village);
      }
      if (!lm.tower || *lm.tower != path.back()) {
        error("TowerNotAtEnd", "the tower must be the last waypoint", "board.landmarks.tower", lm.tower);
      }
      return;
    }
    if (!lm.basket || *lm.basket != path.front()) {
      error("BasketNotAtStart", "the basket must be the first waypoint", "board.landmarks.basket", lm.basket);
    }
    const auto crossing = lm.crossing ? b.path_index(*lm.crossing) : std::nullopt;
    if (!crossing || *crossing == 0) {
      error("CrossingOffPath", "the crossing must be on the cycle, away from the basket", "board.landmarks.crossing",
            lm.crossing);
    }
    if (lm.signposts.empty()) error("MissingSignpost", "loop levels need at least one signpost", "board.landmarks");
    std::set<std::string> ids;
    std::optional<std::size_t> first_sign;
    for (const auto& s : lm.signposts) {
      const auto subject = "signpost/" + s.id;
      if (!ids.insert(s.id).second) error("DuplicateSignpostId", "signpost id used twice", subject, s.pos);
      const auto idx = b.path_index(s.pos);
      if (!idx || *idx == 0) {
        error("SignpostOffPath", "signposts must stand on the cycle, away from the basket", subject, s.pos);
      } else {
        first_sign = first_sign ? std::min(*first_sign, *idx) : *idx;
      }
    }
    std::set<std::string> berries;
    for (const auto& bush : lm.bushes) {
      berries.insert(bush.berry);
      const auto subject = "bush/" + bush.berry;
      const auto idx = b.path_index_near(bush.pos);
      if (!idx || *idx == 0) {
        error("BushOffPath", "bushes must stand on or beside the cycle, away from the basket", subject, bush.pos);
      } else if (first_sign && *idx >= *first_sign) {
        error("BushAfterSignpost", "bushes must come before the first signpost", subject, bush.pos);
      }
      if (!level_.schema.counter_for_berry(bush.berry)) {
        error("UnknownBerry", "no counter collects '" + bush.berry + "' berries", subject, bush.pos);
      }
    }
    for (const auto& [name, c] : level_.schema.counters) {
      if (c.role == CounterRole::berry && !berries.count(c.berry)) {
        error("MissingBush", "no bush grows '" + c.berry + "' berries", "board.landmarks");
      }
    }
  }

  void schema() {
    const auto& s = level_.schema;
    for (const auto& [name, c] : s.colors) {
      if (c.palette.empty()) error("EmptyPalette", "color attribute '" + name + "' has no colors", "schema");
      if (std::find(c.palette.begin(), c.palette.end(), c.initial) == c.palette.end()) {
        error("PaletteViolation", "initial color of '" + name + "' is not in its palette", "schema");
      }
      if (s.counters.count(name)) error("DuplicateAttribute", "'" + name + "' is declared twice", "schema");
    }
    std::size_t rounds = 0;
    std::set<std::string> berries;
    for (const auto& [name, c] : s.counters) {
      if (c.role == CounterRole::rounds) ++rounds;
      if (c.role == CounterRole::berry && !berries.insert(c.berry).second) {
        error("DuplicateBerryCounter", "two counters collect '" + c.berry + "' berries", "schema");
      }
    }
    if (level_.kind == LevelKind::loop && rounds != 1) {
      error("MissingRoundsCounter", "loop levels need exactly one engine-managed rounds counter", "schema");
    }
    if (level_.kind == LevelKind::base && rounds != 0) {
      error("UnexpectedRoundsCounter", "base levels have no rounds counter", "schema");
    }
  }

  bool program() {
    if (kind_of(level_.program) != level_.kind) {
      error("ProgramKindMismatch", "a " + std::string(to_string(level_.kind)) + " level needs a " +
                                       (level_.kind == LevelKind::base ? "critter program" : "recipe"),
            "program");
      return false;
    }
    auto diags = typecheck(level_.program, level_.schema);
    const bool ok = !has_errors(diags);
    out_.insert(out_.end(), diags.begin(), diags.end());
    return ok;
  }

  bool mutants() {
    bool ok = true;
    std::set<std::string> ids;
    std::map<std::string, std::string> asts{{emit(level_.program), ""}};
    for (const auto& m : level_.mutants) {
      const auto subject = "mutants/" + m.id;
      if (!ids.insert(m.id).second) {
        error("DuplicateMutantId", "mutant id used twice", subject);
        ok = false;
      }
      auto diags = mutation::check_mutant(level_.program, m, level_.schema);
      if (has_errors(diags)) {
        out_.insert(out_.end(), diags.begin(), diags.end());
        ok = false;
        continue;
      }
      const auto text = emit(mutation::apply_edits(level_.program, m.edits, level_.schema));
      auto [it, fresh] = asts.emplace(text, m.id);
      if (!fresh) {
        ok = false;
        if (it->second.empty()) {
          error("MutantNotDistinct", "mutant is syntactically identical to the program", subject);
        } else {
          error("DuplicateMutantAst", "mutant has the same code as '" + it->second + "'", subject);
        }
      }
    }
    return ok;
  }

  void roster() {
    const auto& r = level_.roster;
    if (r.spawn_interval == 0) error("InvalidSpawnInterval", "spawn interval must be at least one tick", "roster");
    auto check_look = [&](const AttrMap& attrs, const std::string& subject) {
      auto state = appearance_state(level_.schema, attrs);
      if (!level_.schema.conforms(state)) {
        error("InvalidAppearance", "appearance does not conform to the schema", subject);
      }
      if (const auto rounds = level_.schema.rounds_attr(); rounds && attrs.count(*rounds)) {
        error("EngineAttributeWrite", "'" + *rounds + "' is managed by the engine", subject);
      }
    };
    for (std::size_t i = 0; i < r.healthy.size(); ++i) check_look(r.healthy[i].attrs, "roster/healthy/" + std::to_string(i));
    for (const auto& m : r.mutants) {
      if (!level_.mutant(m.id)) error("UnknownRosterMutant", "no mutant '" + m.id + "' in the catalog", "roster/" + m.id);
      check_look(m.attrs, "roster/" + m.id);
    }
    if (r.healthy_count() == 0) warning("NoHealthyCritters", "the roster has no healthy critters", "roster");
  }

  void behaviour() {
    for (const auto& m : level_.mutants) {
      const auto subject = "mutants/" + m.id;
      try {
        if (options_.check_equivalence && !mutation::first_divergence(level_, m)) {
          error("EquivalentMutant", "mutant behaves exactly like the program", subject);
          continue;
        }
        if (options_.check_killability && !mutation::find_killing_test(level_, m, options_.bounds)) {
          warning("UnkillableMutant",
                  "no test with up to " + std::to_string(options_.bounds.max_assertions) + " assertions and if-depth " +
                      std::to_string(options_.bounds.max_if_depth) + " detects this mutant",
                  subject);
        }
      } catch (const BudgetExceeded&) {
        warning("UnkillableMutant", "test search budget exhausted before a detecting test was found", subject);
      } catch (const EvalError& e) {
        error(e.code(), std::string("mutant fails at runtime: ") + e.what(), subject);
      }
    }
    try {
      for (const auto& look : healthy_appearances(level_.roster)) {
        (void)mutation::trace_critter(level_, level_.program, appearance_state(level_.schema, look));
      }
    } catch (const EvalError& e) {
      error(e.code(), std::string("program fails at runtime: ") + e.what(), "program");
    }
  }

  const Level& level_;
  const ValidateOptions& options_;
  std::vector<Diagnostic> out_;
};

}  // namespace

std::vector<Diagnostic> validate_level(const Level& level, const ValidateOptions& options) {
  return Validator(level, options).run();
}

std::vector<Diagnostic> validate_catalog(const std::vector<Level>& levels) {
  std::vector<Diagnostic> out;
  std::map<std::string, const Level*> by_id;
  for (const auto& l : levels) {
    if (!by_id.emplace(l.id, &l).second) out.push_back(make_error("DuplicateLevelId", "level id used twice", l.id));
  }
  for (const auto& l : levels) {
    if (!l.unlock.requires_level) continue;
    if (!by_id.count(*l.unlock.requires_level)) {
      out.push_back(make_error("UnknownPrerequisite", "requires unknown level '" + *l.unlock.requires_level + "'", l.id));
    }
  }
  // Each level has at most one prerequisite, so walking the chain finds cycles.
  for (const auto& l : levels) {
    std::set<std::string> seen{l.id};
    const Level* cur = &l;
    while (cur->unlock.requires_level) {
      auto it = by_id.find(*cur->unlock.requires_level);
      if (it == by_id.end()) break;
      if (!seen.insert(it->first).second) {
        out.push_back(make_error("UnlockCycle", "unlock requirements form a cycle", l.id));
        break;
      }
      cur = it->second;
    }
  }
  return out;
}

}  // namespace critters::levels
