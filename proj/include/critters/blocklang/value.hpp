#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace critters::blocklang {

enum class Color : std::uint8_t { red, orange, blue, pink, green, purple };

inline constexpr std::array<Color, 6> kAllColors = {Color::red,  Color::orange, Color::blue,
                                                    Color::pink, Color::green,  Color::purple};

struct Count {
  std::uint64_t n = 0;

  auto operator<=>(const Count&) const = default;
};

// Only ever produced by condition evaluation; attributes cannot hold it.
struct Truth {
  bool b = false;

  auto operator<=>(const Truth&) const = default;
};

using AttrValue = std::variant<Color, Count>;
using Value = std::variant<Color, Count, Truth>;

enum class StaticType { color, count, truth };

enum class Terrain : std::uint8_t { grass, dirt, ice, water, wood };

inline constexpr std::array<Terrain, 5> kAllTerrains = {Terrain::grass, Terrain::dirt, Terrain::ice,
                                                        Terrain::water, Terrain::wood};

constexpr bool walkable(Terrain t) {
  return t == Terrain::grass || t == Terrain::dirt || t == Terrain::ice;
}

std::string_view to_string(Color c);
std::optional<Color> parse_color(std::string_view s);

std::string_view to_string(Terrain t);
std::optional<Terrain> parse_terrain(std::string_view s);
char terrain_code(Terrain t);
std::optional<Terrain> terrain_from_code(char c);

std::string_view to_string(StaticType t);

StaticType type_of(const Value& v);
StaticType type_of(const AttrValue& v);
Value widen(const AttrValue& v);
std::string to_string(const Value& v);
std::string to_string(const AttrValue& v);

}  // namespace critters::blocklang
