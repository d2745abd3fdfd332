#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "critters/blocklang/value.hpp"

namespace critters::blocklang {

struct ColorAttr {
  std::vector<Color> palette;
  Color initial = Color::red;

  bool operator==(const ColorAttr&) const = default;
};

enum class CounterRole { berry, rounds };

struct CounterAttr {
  CounterRole role = CounterRole::berry;
  std::string berry;  // set iff role == berry

  bool operator==(const CounterAttr&) const = default;
};

using AttrMap = std::map<std::string, AttrValue, std::less<>>;

struct CritterState {
  AttrMap attrs;

  bool operator==(const CritterState&) const = default;
};

struct AttributeSchema {
  std::map<std::string, ColorAttr, std::less<>> colors;
  std::map<std::string, CounterAttr, std::less<>> counters;

  bool operator==(const AttributeSchema&) const = default;

  std::optional<StaticType> type_of(std::string_view name) const;
  const ColorAttr* color(std::string_view name) const;
  const CounterAttr* counter(std::string_view name) const;

  // Counter attribute that accumulates `berry`, if declared.
  std::optional<std::string> counter_for_berry(std::string_view berry) const;
  // The engine-managed lap counter (conventionally "roundsCount").
  std::optional<std::string> rounds_attr() const;

  // Colors at their declared initial value, counters at zero.
  CritterState initial_state() const;

  // Attribute names ordered colors first, then counters; each group by name.
  std::vector<std::string> ordered_attrs() const;

  bool conforms(const CritterState& s) const;
};

}  // namespace critters::blocklang
