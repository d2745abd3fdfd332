#include "critters/engine/simulate.hpp"

#include <algorithm>
#include <map>

#include "critters/blocklang/ast_json.hpp"
#include "critters/blocklang/interpreter.hpp"
#include "critters/errors.hpp"
#include "critters/mutation/trace.hpp"

namespace critters::engine {

using namespace blocklang;
using nlohmann::json;

std::int64_t Fraction::scaled(std::int64_t weight) const {
  if (den == 0) return weight;
  const auto w = static_cast<std::uint64_t>(weight);
  return static_cast<std::int64_t>((2 * w * num + den) / (2 * den));
}

std::string_view to_string(Fate f) {
  switch (f) {
    case Fate::reached_tower: return "reached_tower";
    case Fate::teleported: return "teleported";
    case Fate::completed: return "completed";
    case Fate::sent_back: return "sent_back";
  }
  return "?";
}

namespace {

struct Walker {
  const RosterEntry* entry = nullptr;
  const Program* program = nullptr;
  CritterState state;
  std::size_t idx = 0;
  bool done = false;
  std::uint64_t lap = 0;
  std::uint64_t laps = 0;
  std::optional<std::uint64_t> exiting_round;
  std::map<std::size_t, std::vector<CollectEffect>> pending;  // bush path index -> collects
};

class Simulation {
 public:
  Simulation(const levels::Level& level, const TestSetup& setup, std::uint64_t seed)
      : level_(level), interp_(level.schema), roster_(spawn_schedule(level, seed)) {
    for (const auto& m : level.mutants) programs_.emplace(m.id, mutation::apply_edits(level.program, m.edits, level.schema));
    for (const auto& p : setup.portals) portals_.emplace(*level.board.path_index(p.tile), &p);
    const auto& signs = level.board.landmarks.signposts;
    for (const auto& s : signs) {
      const TestBlock* test = &empty_;
      for (const auto& t : setup.signposts) {
        if (t.signpost_id == s.id) test = &t.test;
      }
      if (auto idx = level.board.path_index(s.pos)) signposts_.emplace(*idx, std::make_pair(&s, test));
    }
    for (const auto& b : level.board.landmarks.bushes) {
      if (auto idx = level.board.path_index_near(b.pos); idx && !bushes_.count(b.berry)) bushes_.emplace(b.berry, *idx);
    }
    if (level.board.landmarks.crossing) crossing_ = level.board.path_index(*level.board.landmarks.crossing);
    result_.kind = level.kind;
    result_.portal_count = setup.portals.size();
    result_.outcomes.resize(roster_.entries.size());
  }

  RunResult run() {
    std::vector<Walker> walkers;
    walkers.reserve(roster_.entries.size());
    std::size_t next = 0;
    for (std::uint64_t tick = 0;; ++tick) {
      for (auto& w : walkers) {
        if (!w.done) step(w, tick);
      }
      while (next < roster_.entries.size() && roster_.entries[next].spawn_tick <= tick) {
        walkers.push_back(spawn(roster_.entries[next++], tick));
      }
      const bool active = std::any_of(walkers.begin(), walkers.end(), [](const Walker& w) { return !w.done; });
      if (!active && next == roster_.entries.size()) break;
    }
    finish();
    return std::move(result_);
  }

 private:
  void emit(std::uint64_t tick, const Walker& w, EventKind kind, json detail = json::object()) {
    result_.timeline.push_back(Event{tick, w.entry->critter, kind, std::move(detail)});
  }

  void emit_collect(std::uint64_t tick, const Walker& w, const CollectEffect& c) {
    emit(tick, w, EventKind::collect, {{"berry", c.berry}, {"count", c.count}, {"total", c.total}});
  }

  void emit_effects(std::uint64_t tick, Walker& w, const std::vector<Effect>& effects) {
    for (const auto& e : effects) {
      if (const auto* a = std::get_if<AttrChange>(&e)) {
        emit(tick, w, EventKind::attr_change, {{"name", a->name}, {"value", blocklang::to_json(a->value)}});
        continue;
      }
      const auto& c = std::get<CollectEffect>(e);
      auto bush = bushes_.find(c.berry);
      if (bush == bushes_.end() || bush->second == 0) {
        emit_collect(tick, w, c);
      } else {
        w.pending[bush->second].push_back(c);
      }
    }
  }

  CritterOutcome& outcome(const Walker& w) { return result_.outcomes[w.entry->critter]; }

  Walker spawn(const RosterEntry& entry, std::uint64_t tick) {
    Walker w;
    w.entry = &entry;
    w.program = entry.mutant ? &programs_.at(*entry.mutant) : &level_.program;
    w.state = levels::appearance_state(level_.schema, entry.appearance);
    auto& out = result_.outcomes[entry.critter];
    out.critter = entry.critter;
    out.mutant = entry.mutant;
    emit(tick, w, EventKind::spawn, {{"pos", to_json(level_.board.path.front())}, {"mutant", entry.mutant.has_value()}});
    if (const auto* cut = std::get_if<CritterProgram>(w.program)) {
      auto r = interp_.exec(cut->init, std::move(w.state), std::nullopt);
      w.state = std::move(r.state);
      emit_effects(tick, w, r.effects);
    } else {
      const auto* loop = std::get<Recipe>(*w.program).loop();
      w.laps = loop ? loop->times : 0;
      if (w.laps == 0) {
        finish_lap_run(w, tick);
      } else {
        start_lap(w, tick);
      }
    }
    return w;
  }

  void start_lap(Walker& w, std::uint64_t tick) {
    ++w.lap;
    outcome(w).laps = w.lap;
    if (const auto rounds = level_.schema.rounds_attr()) {
      interp_.set_counter(w.state, *rounds, w.lap);
      emit(tick, w, EventKind::attr_change, {{"name", *rounds}, {"value", w.lap}});
    }
    const auto* loop = std::get<Recipe>(*w.program).loop();
    auto r = interp_.exec(loop->body, std::move(w.state), std::nullopt);
    w.state = std::move(r.state);
    emit_effects(tick, w, r.effects);
  }

  void finish_lap_run(Walker& w, std::uint64_t tick) {
    json berries = json::object();
    for (const auto& [name, c] : level_.schema.counters) {
      if (c.role == CounterRole::berry) berries[c.berry] = blocklang::to_json(w.state.attrs.at(name));
    }
    emit(tick, w, EventKind::deposit, {{"berries", berries}});
    outcome(w).fate = Fate::completed;
    w.done = true;
  }

  void step(Walker& w, std::uint64_t tick) {
    const auto& path = level_.board.path;
    if (level_.kind == LevelKind::base) {
      ++w.idx;
      const Pos here = path[w.idx];
      emit(tick, w, EventKind::move, {{"to", to_json(here)}});
      if (w.idx + 1 == path.size()) {
        emit(tick, w, EventKind::reach_tower);
        outcome(w).fate = Fate::reached_tower;
        w.done = true;
        return;
      }
      const auto tile = level_.board.at(here);
      auto r = interp_.exec(std::get<CritterProgram>(*w.program).on_tile, std::move(w.state), tile);
      w.state = std::move(r.state);
      emit_effects(tick, w, r.effects);
      auto portal = portals_.find(w.idx);
      if (portal == portals_.end()) return;
      const auto verdict = interp_.run_test(portal->second->test, w.state, tile);
      if (verdict.passed) {
        emit(tick, w, EventKind::test_pass, {{"portal", to_json(here)}});
        return;
      }
      emit(tick, w, EventKind::test_fail, {{"portal", to_json(here)}, {"assertion", *verdict.failed_assertion}});
      emit(tick, w, EventKind::teleport);
      auto& out = outcome(w);
      out.fate = Fate::teleported;
      out.tile = here;
      out.path_index = w.idx;
      w.done = true;
      return;
    }

    w.idx = (w.idx + 1) % path.size();
    emit(tick, w, EventKind::move, {{"to", to_json(path[w.idx])}});
    if (w.exiting_round) {
      if (crossing_ && w.idx == *crossing_) exit_crossing(w, tick);
      return;
    }
    if (w.idx == 0) {
      if (w.lap >= w.laps) {
        finish_lap_run(w, tick);
      } else {
        start_lap(w, tick);
      }
      return;
    }
    if (auto it = w.pending.find(w.idx); it != w.pending.end()) {
      for (const auto& c : it->second) emit_collect(tick, w, c);
      w.pending.erase(it);
    }
    auto sign = signposts_.find(w.idx);
    if (sign == signposts_.end()) return;
    const auto& id = sign->second.first->id;
    const auto verdict = interp_.run_test(*sign->second.second, w.state, std::nullopt);
    if (verdict.passed) {
      emit(tick, w, EventKind::test_pass, {{"signpost", id}});
      return;
    }
    emit(tick, w, EventKind::test_fail, {{"signpost", id}, {"assertion", *verdict.failed_assertion}});
    w.exiting_round = w.lap;
    auto& out = outcome(w);
    out.fate = Fate::sent_back;
    out.round = w.lap;
    if (!crossing_ || w.idx == *crossing_) exit_crossing(w, tick);
  }

  void exit_crossing(Walker& w, std::uint64_t tick) {
    emit(tick, w, EventKind::exit_crossing, {{"round", *w.exiting_round}});
    w.done = true;
  }

  void finish() {
    std::map<std::pair<std::string, levels::AttrMap>, std::optional<mutation::Divergence>> divergence;
    for (const auto& e : roster_.entries) {
      auto& out = result_.outcomes[e.critter];
      if (!e.mutant) {
        ++result_.saved.den;
        if (!out.detected()) ++result_.saved.num;
        continue;
      }
      ++result_.detected.den;
      if (out.detected()) ++result_.detected.num;
      if (level_.kind != LevelKind::loop) continue;
      auto key = std::make_pair(*e.mutant, e.appearance);
      if (!divergence.count(key)) {
        divergence.emplace(key, mutation::first_divergence(level_, programs_.at(*e.mutant), e.appearance));
      }
      if (const auto& d = divergence.at(key)) {
        out.first_effect_round = mutation::divergence_position(*d);
        if (out.detected() && out.round > *out.first_effect_round) {
          out.late_rounds = out.round - *out.first_effect_round;
          result_.total_penalty += kLatePenaltyPerRound * static_cast<std::int64_t>(out.late_rounds);
        }
      }
    }
    if (level_.kind == LevelKind::loop) {
      for (const auto& m : level_.mutants) {
        const auto d = mutation::first_divergence(level_, m);
        result_.first_effect_round[m.id] =
            d ? std::optional<std::uint64_t>(mutation::divergence_position(*d)) : std::nullopt;
      }
    }
  }

  const levels::Level& level_;
  Interpreter interp_;
  Roster roster_;
  std::map<std::string, Program> programs_;
  std::map<std::size_t, const PortalPlacement*> portals_;
  std::map<std::size_t, std::pair<const levels::Signpost*, const TestBlock*>> signposts_;
  std::map<std::string, std::size_t> bushes_;
  std::optional<std::size_t> crossing_;
  TestBlock empty_;
  RunResult result_;
};

}  // namespace

RunResult simulate(const levels::Level& level, const TestSetup& setup, std::uint64_t seed) {
  auto diags = check_setup(level, setup);
  if (has_errors(diags)) {
    const auto message = "invalid test setup: " + to_string(diags.front());
    throw ValidationFailed(message, std::move(diags));
  }
  return Simulation(level, setup, seed).run();
}

RunResult simulate_base(const levels::Level& level, const std::vector<PortalPlacement>& portals, std::uint64_t seed) {
  return simulate(level, TestSetup{portals, {}}, seed);
}

RunResult simulate_loop(const levels::Level& level, const std::vector<SignpostTest>& tests, std::uint64_t seed) {
  return simulate(level, TestSetup{{}, tests}, seed);
}

json to_json(const RunResult& r) {
  auto outcomes = json::array();
  for (const auto& o : r.outcomes) {
    json j = {{"critter", o.critter}, {"mutant", o.mutant ? json(*o.mutant) : json(nullptr)},
              {"fate", std::string(to_string(o.fate))}};
    if (r.kind == LevelKind::base) {
      if (o.tile) {
        j["tile"] = to_json(*o.tile);
        j["path_index"] = *o.path_index;
      }
    } else {
      j["laps"] = o.laps;
      if (o.fate == Fate::sent_back) j["round"] = o.round;
      if (o.mutant) {
        j["first_effect_round"] = o.first_effect_round ? json(*o.first_effect_round) : json(nullptr);
        j["late_rounds"] = o.late_rounds;
      }
    }
    outcomes.push_back(std::move(j));
  }
  json j = {{"kind", std::string(blocklang::to_string(r.kind))},
            {"outcomes", outcomes},
            {"detected", {{"num", r.detected.num}, {"den", r.detected.den}}}};
  if (r.kind == LevelKind::base) {
    j["saved"] = {{"num", r.saved.num}, {"den", r.saved.den}};
    j["portal_count"] = r.portal_count;
  } else {
    j["successful"] = {{"num", r.saved.num}, {"den", r.saved.den}};
    j["total_penalty"] = r.total_penalty;
    json first = json::object();
    for (const auto& [id, round] : r.first_effect_round) first[id] = round ? json(*round) : json(nullptr);
    j["first_effect_round"] = first;
  }
  return j;
}

bool verify_timeline(const levels::Level& level, const TestSetup& setup, std::uint64_t seed, const json& timeline) {
  try {
    return canonical_timeline(simulate(level, setup, seed).timeline) == timeline.dump();
  } catch (const Error&) {
    return false;
  }
}

}  // namespace critters::engine
