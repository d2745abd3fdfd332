#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "critters/engine/simulate.hpp"

namespace critters::engine {

struct TimeBonusConfig {
  double full_seconds = 30.0;   // at or below: full bonus
  double zero_seconds = 120.0;  // at or above: no bonus
  double share = 0.10;          // of the base score
};

struct ScoreRow {
  std::string key;
  std::string label;
  std::string shown;  // "53 %", a portal count, or empty
  std::int64_t points = 0;

  bool operator==(const ScoreRow&) const = default;
};

struct ScoreBreakdown {
  std::vector<ScoreRow> rows;
  std::int64_t total = 0;
  int stars = 0;

  bool operator==(const ScoreBreakdown&) const = default;

  std::int64_t points(std::string_view key) const;
};

double time_fraction(double setup_seconds, const TimeBonusConfig& cfg = {});

ScoreBreakdown score_base(const RunResult& result, double setup_seconds, const TimeBonusConfig& cfg = {});
ScoreBreakdown score_loop(const RunResult& result);
ScoreBreakdown score(const RunResult& result, double setup_seconds);

int stars(std::int64_t total);

nlohmann::json to_json(const ScoreBreakdown& s);
// Scoreboard table, one row per line, then the total and stars.
std::string render(const ScoreBreakdown& s);

}  // namespace critters::engine
