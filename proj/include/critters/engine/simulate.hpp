#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "critters/engine/roster.hpp"
#include "critters/engine/setup.hpp"
#include "critters/engine/timeline.hpp"
#include "critters/levels/level.hpp"

namespace critters::engine {

inline constexpr std::int64_t kLatePenaltyPerRound = 25;

// num/den with 0/0 read as a full score.
struct Fraction {
  std::uint64_t num = 0;
  std::uint64_t den = 0;

  bool operator==(const Fraction&) const = default;

  double value() const { return den == 0 ? 1.0 : static_cast<double>(num) / static_cast<double>(den); }
  // round(weight * num / den), halves rounded up.
  std::int64_t scaled(std::int64_t weight) const;
};

enum class Fate { reached_tower, teleported, completed, sent_back };

std::string_view to_string(Fate f);

struct CritterOutcome {
  std::size_t critter = 0;
  std::optional<std::string> mutant;
  Fate fate = Fate::reached_tower;
  std::optional<Pos> tile;                 // base: teleport tile
  std::optional<std::size_t> path_index;   // base: teleport path index
  std::uint64_t round = 0;                 // loop: sent-back round
  std::uint64_t laps = 0;                  // loop: laps started
  std::optional<std::uint64_t> first_effect_round;  // loop mutants
  std::uint64_t late_rounds = 0;           // loop: max(0, round - first_effect_round) when detected

  bool operator==(const CritterOutcome&) const = default;

  bool detected() const { return fate == Fate::teleported || fate == Fate::sent_back; }
};

struct RunResult {
  blocklang::LevelKind kind = blocklang::LevelKind::base;
  std::vector<CritterOutcome> outcomes;  // by critter index
  Fraction saved;     // healthy critters / collectors that made it
  Fraction detected;  // mutant instances teleported / sent back
  std::size_t portal_count = 0;
  std::int64_t total_penalty = 0;  // non-negative points to deduct
  std::map<std::string, std::optional<std::uint64_t>> first_effect_round;  // loop levels, per mutant id
  Timeline timeline;

  std::size_t false_positives() const { return saved.den - saved.num; }
};

// Throws ValidationFailed when check_setup reports errors.
RunResult simulate(const levels::Level& level, const TestSetup& setup, std::uint64_t seed);
RunResult simulate_base(const levels::Level& level, const std::vector<PortalPlacement>& portals, std::uint64_t seed);
RunResult simulate_loop(const levels::Level& level, const std::vector<SignpostTest>& tests, std::uint64_t seed);

// Result without the timeline.
nlohmann::json to_json(const RunResult& r);

// Re-simulates and compares canonical timelines.
bool verify_timeline(const levels::Level& level, const TestSetup& setup, std::uint64_t seed,
                     const nlohmann::json& timeline);

}  // namespace critters::engine
