#include "critters/engine/timeline.hpp"

#include <array>

namespace critters::engine {

namespace {

constexpr std::array<std::pair<EventKind, std::string_view>, 10> kNames = {{
    {EventKind::spawn, "spawn"},
    {EventKind::move, "move"},
    {EventKind::attr_change, "attr_change"},
    {EventKind::collect, "collect"},
    {EventKind::test_pass, "test_pass"},
    {EventKind::test_fail, "test_fail"},
    {EventKind::teleport, "teleport"},
    {EventKind::exit_crossing, "exit_crossing"},
    {EventKind::reach_tower, "reach_tower"},
    {EventKind::deposit, "deposit"},
}};

}  // namespace

std::string_view to_string(EventKind k) {
  for (const auto& [kind, name] : kNames) {
    if (kind == k) return name;
  }
  return "?";
}

std::optional<EventKind> parse_event_kind(std::string_view s) {
  for (const auto& [kind, name] : kNames) {
    if (name == s) return kind;
  }
  return std::nullopt;
}

nlohmann::json to_json(const Event& e) {
  nlohmann::json j = e.detail;
  j["tick"] = e.tick;
  j["critter"] = e.critter;
  j["kind"] = std::string(to_string(e.kind));
  return j;
}

nlohmann::json to_json(const Timeline& t) {
  auto arr = nlohmann::json::array();
  for (const auto& e : t) arr.push_back(to_json(e));
  return arr;
}

std::string canonical_timeline(const Timeline& t) { return to_json(t).dump(); }

}  // namespace critters::engine
