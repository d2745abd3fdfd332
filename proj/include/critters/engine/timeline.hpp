#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace critters::engine {

enum class EventKind {
  spawn,
  move,
  attr_change,
  collect,
  test_pass,
  test_fail,
  teleport,
  exit_crossing,
  reach_tower,
  deposit
};

std::string_view to_string(EventKind k);
std::optional<EventKind> parse_event_kind(std::string_view s);

// `detail` holds the kind-specific fields:
//   spawn {pos, mutant}   move {to}   attr_change {name, value}
//   collect {berry, count, total}   test_pass {portal|signpost}
//   test_fail {portal|signpost, assertion}   exit_crossing {round}
//   deposit {berries}
struct Event {
  std::uint64_t tick = 0;
  std::size_t critter = 0;
  EventKind kind = EventKind::spawn;
  nlohmann::json detail = nlohmann::json::object();

  bool operator==(const Event&) const = default;
};

using Timeline = std::vector<Event>;

nlohmann::json to_json(const Event& e);
nlohmann::json to_json(const Timeline& t);
std::string canonical_timeline(const Timeline& t);

}  // namespace critters::engine
