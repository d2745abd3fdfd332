#include "critters/levels/level.hpp"

#include <algorithm>

namespace critters::levels {

bool Board::in_bounds(Pos p) const { return p.x >= 0 && p.y >= 0 && p.x < width && p.y < height; }

Terrain Board::at(Pos p) const { return tiles.at(static_cast<std::size_t>(p.y)).at(static_cast<std::size_t>(p.x)); }

std::optional<std::size_t> Board::path_index(Pos p) const {
  auto it = std::find(path.begin(), path.end(), p);
  if (it == path.end()) return std::nullopt;
  return static_cast<std::size_t>(it - path.begin());
}

std::optional<std::size_t> Board::path_index_near(Pos p) const {
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (std::abs(path[i].x - p.x) + std::abs(path[i].y - p.y) <= 1) return i;
  }
  return std::nullopt;
}

std::size_t RosterConfig::healthy_count() const {
  std::size_t n = 0;
  for (const auto& g : healthy) n += g.count;
  return n;
}

const mutation::MutantSpec* Level::mutant(std::string_view id) const {
  for (const auto& m : mutants) {
    if (m.id == id) return &m;
  }
  return nullptr;
}

blocklang::CritterState appearance_state(const blocklang::AttributeSchema& schema, const AttrMap& attrs) {
  auto s = schema.initial_state();
  for (const auto& [name, v] : attrs) s.attrs.insert_or_assign(name, v);
  return s;
}

std::vector<AttrMap> healthy_appearances(const RosterConfig& roster) {
  std::vector<AttrMap> out;
  for (const auto& g : roster.healthy) {
    if (g.count > 0 && std::find(out.begin(), out.end(), g.attrs) == out.end()) out.push_back(g.attrs);
  }
  if (out.empty()) out.emplace_back();
  return out;
}

std::vector<AttrMap> mutant_appearances(const RosterConfig& roster, std::string_view mutant_id) {
  std::vector<AttrMap> out;
  for (const auto& m : roster.mutants) {
    if (m.id == mutant_id && m.multiplicity > 0 && std::find(out.begin(), out.end(), m.attrs) == out.end()) {
      out.push_back(m.attrs);
    }
  }
  if (out.empty()) {
    const bool listed = std::any_of(roster.mutants.begin(), roster.mutants.end(),
                                    [&](const RosterMutant& m) { return m.id == mutant_id; });
    if (!listed) return healthy_appearances(roster);
  }
  return out;
}

}  // namespace critters::levels
