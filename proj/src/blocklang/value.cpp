#include "critters/blocklang/value.hpp"

#include <array>
#include <utility>

namespace critters::blocklang {
namespace {

constexpr std::array<std::pair<Color, std::string_view>, 6> kColorNames = {{
    {Color::red, "red"},
    {Color::orange, "orange"},
    {Color::blue, "blue"},
    {Color::pink, "pink"},
    {Color::green, "green"},
    {Color::purple, "purple"},
}};

struct TerrainInfo {
  Terrain terrain;
  std::string_view name;
  char code;
};

constexpr std::array<TerrainInfo, 5> kTerrainInfo = {{
    {Terrain::grass, "grass", 'g'},
    {Terrain::dirt, "dirt", 'd'},
    {Terrain::ice, "ice", 'i'},
    {Terrain::water, "water", 'w'},
    {Terrain::wood, "wood", 'o'},
}};

}  // namespace

std::string_view to_string(Color c) {
  for (const auto& [color, name] : kColorNames)
    if (color == c) return name;
  return "?";
}

std::optional<Color> parse_color(std::string_view s) {
  for (const auto& [color, name] : kColorNames)
    if (name == s) return color;
  return std::nullopt;
}

std::string_view to_string(Terrain t) {
  for (const auto& info : kTerrainInfo)
    if (info.terrain == t) return info.name;
  return "?";
}

std::optional<Terrain> parse_terrain(std::string_view s) {
  for (const auto& info : kTerrainInfo)
    if (info.name == s) return info.terrain;
  return std::nullopt;
}

char terrain_code(Terrain t) {
  for (const auto& info : kTerrainInfo)
    if (info.terrain == t) return info.code;
  return '?';
}

std::optional<Terrain> terrain_from_code(char c) {
  for (const auto& info : kTerrainInfo)
    if (info.code == c) return info.terrain;
  return std::nullopt;
}

std::string_view to_string(StaticType t) {
  switch (t) {
    case StaticType::color: return "color";
    case StaticType::count: return "count";
    case StaticType::truth: return "truth";
  }
  return "?";
}

StaticType type_of(const Value& v) {
  if (std::holds_alternative<Color>(v)) return StaticType::color;
  if (std::holds_alternative<Count>(v)) return StaticType::count;
  return StaticType::truth;
}

StaticType type_of(const AttrValue& v) {
  return std::holds_alternative<Color>(v) ? StaticType::color : StaticType::count;
}

Value widen(const AttrValue& v) {
  if (const auto* c = std::get_if<Color>(&v)) return *c;
  return std::get<Count>(v);
}

std::string to_string(const Value& v) {
  if (const auto* c = std::get_if<Color>(&v)) return std::string(to_string(*c));
  if (const auto* n = std::get_if<Count>(&v)) return std::to_string(n->n);
  return std::get<Truth>(v).b ? "true" : "false";
}

std::string to_string(const AttrValue& v) { return to_string(widen(v)); }

}  // namespace critters::blocklang
