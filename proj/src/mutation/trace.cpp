#include "critters/mutation/trace.hpp"

#include <algorithm>

#include "critters/blocklang/ast_json.hpp"

namespace critters::mutation {

using namespace blocklang;

Trace trace_critter(const levels::Level& level, const Program& program, const CritterState& initial) {
  const Interpreter interp(level.schema);
  Trace out;
  if (const auto* cut = std::get_if<CritterProgram>(&program)) {
    const auto& path = level.board.path;
    auto state = interp.exec(cut->init, initial, std::nullopt).state;
    for (std::size_t i = 1; i + 1 < path.size(); ++i) {
      const auto tile = level.board.at(path[i]);
      state = interp.exec(cut->on_tile, std::move(state), tile).state;
      out.checkpoints.push_back({i, state, tile});
    }
    return out;
  }
  const auto* loop = std::get<Recipe>(program).loop();
  if (!loop) return out;
  out.laps = loop->times;
  const auto rounds = level.schema.rounds_attr();
  CritterState state = initial;
  for (std::uint64_t k = 1; k <= loop->times; ++k) {
    if (rounds) interp.set_counter(state, *rounds, k);
    state = interp.exec(loop->body, std::move(state), std::nullopt).state;
    out.checkpoints.push_back({static_cast<std::size_t>(k), state, std::nullopt});
  }
  return out;
}

std::size_t divergence_position(const Divergence& d) {
  if (const auto* r = std::get_if<DivergenceRound>(&d)) return static_cast<std::size_t>(r->round);
  return std::get<DivergenceTile>(d).tile_index;
}

std::optional<Divergence> first_divergence(const levels::Level& level, const Program& mutant_program,
                                           const levels::AttrMap& appearance) {
  const auto initial = levels::appearance_state(level.schema, appearance);
  const auto healthy = trace_critter(level, level.program, initial);
  const auto mutant = trace_critter(level, mutant_program, initial);
  const auto n = std::min(healthy.checkpoints.size(), mutant.checkpoints.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (healthy.checkpoints[i].state != mutant.checkpoints[i].state) {
      if (level.kind == LevelKind::loop) return DivergenceRound{healthy.checkpoints[i].position};
      return DivergenceTile{healthy.checkpoints[i].position};
    }
  }
  if (level.kind == LevelKind::loop && healthy.laps != mutant.laps) {
    return DivergenceRound{std::min(healthy.laps, mutant.laps) + 1};
  }
  return std::nullopt;
}

std::optional<Divergence> first_divergence(const levels::Level& level, const MutantSpec& mutant) {
  const auto program = apply_edits(level.program, mutant.edits, level.schema);
  std::optional<Divergence> best;
  for (const auto& look : levels::mutant_appearances(level.roster, mutant.id)) {
    auto d = first_divergence(level, program, look);
    if (d && (!best || divergence_position(*d) < divergence_position(*best))) best = d;
  }
  return best;
}

nlohmann::json to_json(const std::optional<Divergence>& d) {
  if (!d) return nullptr;
  if (const auto* r = std::get_if<DivergenceRound>(&*d)) return {{"round", r->round}};
  return {{"tile_index", std::get<DivergenceTile>(*d).tile_index}};
}

}  // namespace critters::mutation
