#include "critters/mutation/analysis.hpp"

#include <algorithm>
#include <map>

#include "critters/engine/simulate.hpp"

namespace critters::mutation {

AdequacyReport adequacy(const levels::Level& level, const engine::TestSetup& setup,
                        const std::vector<MutantSpec>& catalog, std::uint64_t seed) {
  levels::Level probe = level;
  probe.mutants = catalog;
  const auto run = engine::simulate(probe, setup, seed);

  AdequacyReport report;
  std::map<std::string, MutantKill*> by_id;
  for (const auto& m : catalog) {
    MutantKill k;
    k.id = m.id;
    report.mutants.push_back(std::move(k));
  }
  for (auto& k : report.mutants) by_id.emplace(k.id, &k);

  for (const auto& o : run.outcomes) {
    if (!o.mutant) {
      if (o.detected()) ++report.false_positives;
      continue;
    }
    auto& k = *by_id.at(*o.mutant);
    ++k.instances;
    if (!o.detected()) continue;
    ++k.killed_instances;
    const std::size_t pos = level.kind == blocklang::LevelKind::loop ? static_cast<std::size_t>(o.round) : *o.path_index;
    k.kill_position = k.kill_position ? std::min(*k.kill_position, pos) : pos;
  }

  std::size_t killed = 0;
  for (auto& k : report.mutants) {
    k.killed = k.instances > 0 && k.killed_instances == k.instances;
    if (k.killed) ++killed;
  }
  report.mutation_score =
      catalog.empty() ? 1.0 : static_cast<double>(killed) / static_cast<double>(catalog.size());
  return report;
}

nlohmann::json to_json(const AdequacyReport& r) {
  auto arr = nlohmann::json::array();
  for (const auto& k : r.mutants) {
    arr.push_back({{"id", k.id},
                   {"killed", k.killed},
                   {"kill_position", k.kill_position ? nlohmann::json(*k.kill_position) : nlohmann::json(nullptr)},
                   {"instances", k.instances},
                   {"killed_instances", k.killed_instances}});
  }
  return {{"mutants", arr}, {"false_positives", r.false_positives}, {"mutation_score", r.mutation_score}};
}

}  // namespace critters::mutation
