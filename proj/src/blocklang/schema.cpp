#include "critters/blocklang/schema.hpp"

#include <algorithm>

namespace critters::blocklang {

std::optional<StaticType> AttributeSchema::type_of(std::string_view name) const {
  if (colors.find(name) != colors.end()) return StaticType::color;
  if (counters.find(name) != counters.end()) return StaticType::count;
  return std::nullopt;
}

const ColorAttr* AttributeSchema::color(std::string_view name) const {
  auto it = colors.find(name);
  return it == colors.end() ? nullptr : &it->second;
}

const CounterAttr* AttributeSchema::counter(std::string_view name) const {
  auto it = counters.find(name);
  return it == counters.end() ? nullptr : &it->second;
}

std::optional<std::string> AttributeSchema::counter_for_berry(std::string_view berry) const {
  for (const auto& [name, c] : counters)
    if (c.role == CounterRole::berry && c.berry == berry) return name;
  return std::nullopt;
}

std::optional<std::string> AttributeSchema::rounds_attr() const {
  for (const auto& [name, c] : counters)
    if (c.role == CounterRole::rounds) return name;
  return std::nullopt;
}

CritterState AttributeSchema::initial_state() const {
  CritterState s;
  for (const auto& [name, c] : colors) s.attrs.emplace(name, c.initial);
  for (const auto& [name, c] : counters) s.attrs.emplace(name, Count{0});
  return s;
}

std::vector<std::string> AttributeSchema::ordered_attrs() const {
  std::vector<std::string> out;
  for (const auto& [name, c] : colors) out.push_back(name);
  for (const auto& [name, c] : counters) out.push_back(name);
  return out;
}

bool AttributeSchema::conforms(const CritterState& s) const {
  if (s.attrs.size() != colors.size() + counters.size()) return false;
  for (const auto& [name, value] : s.attrs) {
    if (const auto* c = color(name)) {
      const auto* v = std::get_if<Color>(&value);
      if (!v || std::find(c->palette.begin(), c->palette.end(), *v) == c->palette.end()) return false;
    } else if (counter(name)) {
      if (!std::holds_alternative<Count>(value)) return false;
    } else {
      return false;
    }
  }
  return true;
}

}  // namespace critters::blocklang
