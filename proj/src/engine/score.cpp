#include "critters/engine/score.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace critters::engine {

namespace {

std::string percent(const Fraction& f) { return std::to_string(f.scaled(100)) + " %"; }

}  // namespace

std::int64_t ScoreBreakdown::points(std::string_view key) const {
  for (const auto& r : rows) {
    if (r.key == key) return r.points;
  }
  return 0;
}

double time_fraction(double setup_seconds, const TimeBonusConfig& cfg) {
  const double f = (cfg.zero_seconds - setup_seconds) / (cfg.zero_seconds - cfg.full_seconds);
  return std::clamp(f, 0.0, 1.0);
}

ScoreBreakdown score_base(const RunResult& result, double setup_seconds, const TimeBonusConfig& cfg) {
  ScoreBreakdown s;
  const auto saved = result.saved.scaled(250);
  const auto detected = result.detected.scaled(750);
  const auto tf = time_fraction(setup_seconds, cfg);
  const auto bonus = static_cast<std::int64_t>(std::floor(static_cast<double>(saved + detected) * cfg.share * tf + 0.5));
  s.rows = {
      {"saved", "Saved Humans", percent(result.saved), saved},
      {"detected", "Detected Mutants", percent(result.detected), detected},
      {"portals", "Placed Portals", std::to_string(result.portal_count), 0},
      {"time_bonus", "Time Bonus", std::to_string(static_cast<std::int64_t>(std::floor(tf * 100 + 0.5))) + " %", bonus},
  };
  s.total = saved + detected + bonus;
  s.stars = stars(s.total);
  return s;
}

ScoreBreakdown score_loop(const RunResult& result) {
  ScoreBreakdown s;
  const auto successful = result.saved.scaled(400);
  const auto detected = result.detected.scaled(600);
  s.rows = {
      {"successful", "Successful collectors", percent(result.saved), successful},
      {"detected", "Detected wrong collectors", percent(result.detected), detected},
      {"penalty", "Penalty for late detection", "", -result.total_penalty},
  };
  s.total = std::max<std::int64_t>(0, successful + detected - result.total_penalty);
  s.stars = stars(s.total);
  return s;
}

ScoreBreakdown score(const RunResult& result, double setup_seconds) {
  return result.kind == blocklang::LevelKind::base ? score_base(result, setup_seconds) : score_loop(result);
}

int stars(std::int64_t total) {
  if (total >= 1000) return 3;
  if (total >= 800) return 2;
  if (total >= 500) return 1;
  return 0;
}

nlohmann::json to_json(const ScoreBreakdown& s) {
  auto rows = nlohmann::json::array();
  for (const auto& r : s.rows) {
    rows.push_back({{"key", r.key}, {"label", r.label}, {"shown", r.shown}, {"points", r.points}});
  }
  return {{"rows", rows}, {"total", s.total}, {"stars", s.stars}};
}

std::string render(const ScoreBreakdown& s) {
  std::ostringstream out;
  auto line = [&](const std::string& label, const std::string& shown, const std::string& points) {
    out << label << std::string(28 - std::min<std::size_t>(27, label.size()), ' ');
    out << std::string(7 - std::min<std::size_t>(7, shown.size()), ' ') << shown;
    out << std::string(8 - std::min<std::size_t>(7, points.size()), ' ') << points << '\n';
  };
  for (const auto& r : s.rows) line(r.label, r.shown, std::to_string(r.points));
  line("Total", "", std::to_string(s.total));
  line("Stars", "", std::to_string(s.stars));
  return out.str();
}

}  // namespace critters::engine
