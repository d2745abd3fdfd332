#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "critters/engine/setup.hpp"
#include "critters/levels/level.hpp"
#include "critters/service/event_log.hpp"
#include "json.hpp"

namespace critters::service {

using nlohmann::json;

struct ApiRequest {
  std::string method;
  std::string path;
  std::map<std::string, std::string> query;
  std::map<std::string, std::string> headers;  // lower-case names
  std::string body;
};

struct ApiResponse {
  int status = 200;
  json body;
};

struct ServiceConfig {
  std::filesystem::path data_dir = "data";
  std::string admin_token;                   // empty: metrics export always 403
  std::function<std::int64_t()> clock;       // ms since epoch; system clock when unset
  std::optional<std::uint64_t> rng_seed;     // ids and session seeds; random_device when unset
  std::vector<levels::Level> levels;         // built-in catalog when empty
};

// DATA_DIR, ADMIN_TOKEN. PORT is read by the HTTP front end.
ServiceConfig config_from_env();

struct LevelProgress {
  std::int64_t best_total = 0;
  int best_stars = 0;
  std::size_t attempts = 0;
  std::uint64_t best_seq = 0;  // log position of the best result, for tiebreaks

  bool operator==(const LevelProgress&) const = default;
};

struct Progress {
  std::map<std::string, std::string> players;  // id -> display name
  std::map<std::string, std::map<std::string, LevelProgress>> levels;  // player -> level -> progress

  bool operator==(const Progress&) const = default;

  const LevelProgress* find(const std::string& player, const std::string& level) const;
};

// Applies one log record. Progress is the left fold of this over the log.
void apply_record(Progress& progress, const json& record);
Progress fold_progress(const std::vector<json>& records);

enum class Phase { setup, running, finished };
std::string_view to_string(Phase p);

class GameService {
 public:
  explicit GameService(ServiceConfig config);

  ApiResponse handle(const ApiRequest& request);

  ApiResponse create_player(const json& body);
  ApiResponse list_levels(const std::optional<std::string>& player) const;
  ApiResponse level_view(const std::string& level_id, const std::optional<std::string>& player) const;
  ApiResponse create_session(const json& body);
  ApiResponse put_tests(const std::string& session_id, const json& body);
  ApiResponse run(const std::string& session_id);
  ApiResponse session_view(const std::string& session_id) const;
  ApiResponse player_progress(const std::string& player_id) const;
  ApiResponse leaderboard(const std::string& level_id, std::size_t limit) const;
  ApiResponse metrics_export(std::optional<std::int64_t> from, std::optional<std::int64_t> to,
                             const std::optional<std::string>& token) const;

  Progress progress() const;
  const std::filesystem::path& log_file() const { return log_.file(); }

 private:
  struct Session {
    std::string id;
    std::string player;
    const levels::Level* level = nullptr;
    Phase phase = Phase::setup;
    engine::TestSetup setup;
    std::uint64_t seed = 0;
    std::int64_t setup_started_at = 0;
    std::int64_t run_requested_at = 0;
    json outcome;  // run response, once finished
  };

  const levels::Level* find_level(const std::string& id) const;
  bool unlocked(const levels::Level& level, const std::optional<std::string>& player) const;
  std::string fresh_token();
  std::int64_t now() const;
  json record(const std::string& player, const std::optional<std::string>& level, const std::string& event,
              json payload);

  ServiceConfig config_;
  std::vector<levels::Level> levels_;
  EventLog log_;

  mutable std::mutex mu_;  // guards everything below
  std::mt19937_64 rng_;
  Progress progress_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t next_seq_ = 0;
  std::map<std::string, std::int64_t> last_ts_;  // per player, keeps streams monotone
};

}  // namespace critters::service
