#include "critters/service/game_service.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "critters/blocklang/ast_json.hpp"
#include "critters/engine/score.hpp"
#include "critters/engine/simulate.hpp"
#include "critters/errors.hpp"
#include "critters/levels/catalog.hpp"
#include "critters/levels/level_json.hpp"
#include "critters/mutation/trace.hpp"

namespace critters::service {

namespace {

ApiResponse ok(json body, int status = 200) { return {status, std::move(body)}; }

ApiResponse fail(int status, const std::string& code, const std::string& message,
                 const std::vector<Diagnostic>& diagnostics = {}) {
  json body = {{"error", {{"code", code}, {"message", message}}}};
  if (!diagnostics.empty()) body["diagnostics"] = to_json(diagnostics);
  return {status, std::move(body)};
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < path.size()) {
    while (i < path.size() && path[i] == '/') ++i;
    const auto j = path.find('/', i);
    if (i < path.size()) out.push_back(path.substr(i, j == std::string::npos ? std::string::npos : j - i));
    if (j == std::string::npos) break;
    i = j;
  }
  return out;
}

std::optional<std::string> opt_param(const std::map<std::string, std::string>& m, const std::string& key) {
  auto it = m.find(key);
  if (it == m.end() || it->second.empty()) return std::nullopt;
  return it->second;
}

std::optional<std::int64_t> int_param(const std::map<std::string, std::string>& m, const std::string& key) {
  const auto v = opt_param(m, key);
  if (!v) return std::nullopt;
  std::size_t used = 0;
  const auto n = std::stoll(*v, &used);
  if (used != v->size()) throw std::invalid_argument(key);
  return n;
}

json palette(const levels::Level& level) {
  auto blocks = json::array({"assertEq", "if", "eq", "attr", "lit"});
  auto terrains = json::array();
  if (level.kind == blocklang::LevelKind::base) {
    blocks.push_back("tileIs");
    for (auto t : blocklang::kAllTerrains) {
      if (blocklang::walkable(t)) terrains.push_back(std::string(blocklang::to_string(t)));
    }
  }
  json colors = json::object();
  for (const auto& [name, c] : level.schema.colors) {
    auto p = json::array();
    for (auto col : c.palette) p.push_back(std::string(blocklang::to_string(col)));
    colors[name] = p;
  }
  auto counters = json::array();
  for (const auto& [name, c] : level.schema.counters) counters.push_back(name);
  return {{"blocks", blocks}, {"terrains", terrains}, {"colors", colors}, {"counters", counters}};
}

}  // namespace

ServiceConfig config_from_env() {
  ServiceConfig c;
  if (const char* d = std::getenv("DATA_DIR"); d && *d) c.data_dir = d;
  if (const char* t = std::getenv("ADMIN_TOKEN")) c.admin_token = t;
  return c;
}

const LevelProgress* Progress::find(const std::string& player, const std::string& level) const {
  auto p = levels.find(player);
  if (p == levels.end()) return nullptr;
  auto l = p->second.find(level);
  return l == p->second.end() ? nullptr : &l->second;
}

void apply_record(Progress& progress, const json& record) {
  const auto& event = record.at("event").get_ref<const std::string&>();
  const auto& player = record.at("player").get_ref<const std::string&>();
  if (event == "player_registered") {
    progress.players[player] = record.at("payload").at("display_name").get<std::string>();
    return;
  }
  if (event != "game_finished") return;
  auto& lp = progress.levels[player][record.at("level").get<std::string>()];
  const auto total = record.at("payload").at("total").get<std::int64_t>();
  if (lp.attempts == 0 || total > lp.best_total) {
    lp.best_total = total;
    lp.best_stars = record.at("payload").at("stars").get<int>();
    lp.best_seq = record.at("seq").get<std::uint64_t>();
  }
  ++lp.attempts;
}

Progress fold_progress(const std::vector<json>& records) {
  Progress p;
  for (const auto& r : records) apply_record(p, r);
  return p;
}

std::string_view to_string(Phase p) {
  switch (p) {
    case Phase::setup: return "setup";
    case Phase::running: return "running";
    case Phase::finished: return "finished";
  }
  return "?";
}

GameService::GameService(ServiceConfig config)
    : config_(std::move(config)),
      levels_(config_.levels.empty() ? levels::builtin_catalog() : config_.levels),
      log_(config_.data_dir / "events.jsonl"),
      rng_(config_.rng_seed ? *config_.rng_seed : std::random_device{}()) {
  for (const auto& r : log_.read_all()) {
    apply_record(progress_, r);
    next_seq_ = std::max(next_seq_, r.at("seq").get<std::uint64_t>() + 1);
    auto& last = last_ts_[r.at("player").get<std::string>()];
    last = std::max(last, r.at("timestamp").get<std::int64_t>());
  }
}

std::int64_t GameService::now() const {
  if (config_.clock) return config_.clock();
  using namespace std::chrono;
  return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

std::string GameService::fresh_token() {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(rng_()));
  return buf;
}

// Caller holds mu_.
json GameService::record(const std::string& player, const std::optional<std::string>& level,
                         const std::string& event, json payload) {
  auto& last = last_ts_[player];
  last = std::max(last, now());
  json r = {{"seq", next_seq_++},
            {"timestamp", last},
            {"player", player},
            {"level", level ? json(*level) : json(nullptr)},
            {"event", event},
            {"payload", std::move(payload)}};
  log_.append(r);
  apply_record(progress_, r);
  return r;
}

const levels::Level* GameService::find_level(const std::string& id) const {
  for (const auto& l : levels_) {
    if (l.id == id) return &l;
  }
  return nullptr;
}

// Caller holds mu_.
bool GameService::unlocked(const levels::Level& level, const std::optional<std::string>& player) const {
  if (!level.unlock.requires_level) return true;
  if (!player) return false;
  const auto* lp = progress_.find(*player, *level.unlock.requires_level);
  return lp && lp->best_total >= level.unlock.min_points.value_or(0);
}

ApiResponse GameService::handle(const ApiRequest& req) {
  try {
    const auto parts = split_path(req.path);
    if (parts.size() < 2 || parts[0] != "api") return fail(404, "NotFound", "no such route");
    const auto& m = req.method;
    auto body = [&] { return req.body.empty() ? json::object() : blocklang::parse_json(req.body); };

    if (parts[1] == "players") {
      if (parts.size() == 2 && m == "POST") return create_player(body());
      if (parts.size() == 4 && parts[3] == "progress" && m == "GET") return player_progress(parts[2]);
    } else if (parts[1] == "levels") {
      if (parts.size() == 2 && m == "GET") return list_levels(opt_param(req.query, "player"));
      if (parts.size() == 3 && m == "GET") return level_view(parts[2], opt_param(req.query, "player"));
    } else if (parts[1] == "sessions") {
      if (parts.size() == 2 && m == "POST") return create_session(body());
      if (parts.size() == 3 && m == "GET") return session_view(parts[2]);
      if (parts.size() == 4 && parts[3] == "tests" && m == "PUT") return put_tests(parts[2], body());
      if (parts.size() == 4 && parts[3] == "run" && m == "POST") return run(parts[2]);
    } else if (parts[1] == "leaderboard") {
      if (parts.size() == 3 && m == "GET") {
        const auto limit = int_param(req.query, "limit").value_or(10);
        if (limit < 0) return fail(400, "BadRequest", "limit must be non-negative");
        return leaderboard(parts[2], static_cast<std::size_t>(limit));
      }
    } else if (parts[1] == "metrics") {
      if (parts.size() == 3 && parts[2] == "export" && m == "GET") {
        auto token = opt_param(req.headers, "x-admin-token");
        if (!token) {
          if (auto auth = opt_param(req.headers, "authorization"); auth && auth->rfind("Bearer ", 0) == 0) {
            token = auth->substr(7);
          }
        }
        return metrics_export(int_param(req.query, "from"), int_param(req.query, "to"), token);
      }
    }
    return fail(404, "NotFound", "no such route");
  } catch (const SyntaxError& e) {
    return fail(400, e.code(), e.what());
  } catch (const SchemaError& e) {
    return fail(400, e.code(), e.what());
  } catch (const std::invalid_argument& e) {
    return fail(400, "BadRequest", std::string("malformed query parameter ") + e.what());
  } catch (const std::out_of_range& e) {
    return fail(400, "BadRequest", "query parameter out of range");
  }
}

ApiResponse GameService::create_player(const json& body) {
  if (!body.is_object() || !body.contains("display_name") || !body["display_name"].is_string() ||
      body["display_name"].get_ref<const std::string&>().empty()) {
    return fail(400, "BadRequest", "expected {\"display_name\": <non-empty string>}");
  }
  const auto name = body["display_name"].get<std::string>();
  std::lock_guard lock(mu_);
  auto id = fresh_token();
  while (progress_.players.count(id)) id = fresh_token();
  record(id, std::nullopt, "player_registered", {{"display_name", name}});
  return ok({{"player_id", id}, {"display_name", name}}, 201);
}

ApiResponse GameService::list_levels(const std::optional<std::string>& player) const {
  std::lock_guard lock(mu_);
  if (player && !progress_.players.count(*player)) return fail(404, "UnknownPlayer", "no such player");
  auto arr = json::array();
  for (const auto& l : levels_) {
    const auto* lp = player ? progress_.find(*player, l.id) : nullptr;
    json j = {{"id", l.id},
              {"kind", std::string(blocklang::to_string(l.kind))},
              {"title", l.title},
              {"locked", !unlocked(l, player)},
              {"best_total", lp ? json(lp->best_total) : json(nullptr)},
              {"stars", lp ? lp->best_stars : 0}};
    if (l.unlock.requires_level) {
      j["requires"] = {{"level", *l.unlock.requires_level}, {"min_points", l.unlock.min_points.value_or(0)}};
    }
    arr.push_back(std::move(j));
  }
  return ok(arr);
}

ApiResponse GameService::level_view(const std::string& level_id, const std::optional<std::string>& player) const {
  const auto* level = find_level(level_id);
  if (!level) return fail(404, "UnknownLevel", "no such level");
  std::lock_guard lock(mu_);
  if (player && !progress_.players.count(*player)) return fail(404, "UnknownPlayer", "no such player");
  if (!unlocked(*level, player)) return fail(403, "LevelLocked", "level is locked");
  const auto healthy = level->roster.healthy_count();
  std::size_t mutants = 0;
  for (const auto& m : level->mutants) {
    for (const auto& r : level->roster.mutants) {
      if (r.id == m.id) mutants += r.multiplicity;
    }
    if (std::none_of(level->roster.mutants.begin(), level->roster.mutants.end(),
                     [&](const levels::RosterMutant& r) { return r.id == m.id; })) {
      mutants += levels::healthy_appearances(level->roster).size();
    }
  }
  return ok({{"id", level->id},
             {"kind", std::string(blocklang::to_string(level->kind))},
             {"title", level->title},
             {"flavor", level->flavor},
             {"schema", blocklang::to_json(level->schema)},
             {"board", levels::to_json(*level)["board"]},
             {"program", blocklang::to_json(level->program)},
             {"palette", palette(*level)},
             {"critters", healthy + mutants}});
}

ApiResponse GameService::create_session(const json& body) {
  if (!body.is_object() || !body.contains("player") || !body["player"].is_string() || !body.contains("level") ||
      !body["level"].is_string()) {
    return fail(400, "BadRequest", "expected {\"player\": <id>, \"level\": <id>}");
  }
  const auto player = body["player"].get<std::string>();
  const auto* level = find_level(body["level"].get<std::string>());
  if (!level) return fail(404, "UnknownLevel", "no such level");
  std::lock_guard lock(mu_);
  if (!progress_.players.count(player)) return fail(404, "UnknownPlayer", "no such player");
  if (!unlocked(*level, player)) return fail(403, "LevelLocked", "level is locked");
  auto s = std::make_shared<Session>();
  do {
    s->id = fresh_token();
  } while (sessions_.count(s->id));
  s->player = player;
  s->level = level;
  s->seed = rng_() >> 11;  // keeps seeds exact in JSON doubles
  s->setup_started_at = now();
  sessions_.emplace(s->id, s);
  record(player, level->id, "session_created", {{"session_id", s->id}, {"seed", s->seed}});
  return ok({{"session_id", s->id}, {"seed", s->seed}}, 201);
}

ApiResponse GameService::put_tests(const std::string& session_id, const json& body) {
  std::shared_ptr<Session> s;
  {
    std::lock_guard lock(mu_);
    auto it = sessions_.find(session_id);
    if (it == sessions_.end()) return fail(404, "UnknownSession", "no such session");
    s = it->second;
    if (s->phase != Phase::setup) return fail(409, "WrongPhase", "tests can only change during setup");
  }
  if (!body.is_object() || !body.contains("placements")) {
    return fail(400, "BadRequest", "expected {\"placements\": <setup>}");
  }
  engine::TestSetup setup;
  try {
    setup = engine::setup_from_json(body["placements"], *s->level);
  } catch (const Error& e) {
    return fail(422, "InvalidTests", e.what(), {make_error(e.code(), e.what(), "placements")});
  }
  auto diags = engine::check_setup(*s->level, setup);
  if (has_errors(diags)) return fail(422, "InvalidTests", "placements or tests are invalid", diags);

  std::lock_guard lock(mu_);
  if (s->phase != Phase::setup) return fail(409, "WrongPhase", "tests can only change during setup");
  const auto before = engine::setup_block_count(s->setup);
  const auto after = engine::setup_block_count(setup);
  s->setup = std::move(setup);
  if (after > before) {
    record(s->player, s->level->id, "test_block_added", {{"session_id", s->id}, {"count", after - before}});
  } else if (before > after) {
    record(s->player, s->level->id, "test_block_removed", {{"session_id", s->id}, {"count", before - after}});
  }
  return ok({{"session_id", s->id},
             {"phase", std::string(to_string(s->phase))},
             {"placements", engine::to_json(s->setup, s->level->kind)},
             {"block_count", after}});
}

ApiResponse GameService::run(const std::string& session_id) {
  std::shared_ptr<Session> s;
  {
    std::lock_guard lock(mu_);
    auto it = sessions_.find(session_id);
    if (it == sessions_.end()) return fail(404, "UnknownSession", "no such session");
    s = it->second;
    if (s->phase != Phase::setup) return fail(409, "WrongPhase", "session has already run");
    s->phase = Phase::running;
    s->run_requested_at = now();
    record(s->player, s->level->id, "game_started", {{"session_id", s->id}});
  }

  // The session is exclusively ours while running; simulate without the lock.
  const auto& level = *s->level;
  const double setup_seconds = static_cast<double>(std::max<std::int64_t>(0, s->run_requested_at - s->setup_started_at)) / 1000.0;
  const auto result = engine::simulate(level, s->setup, s->seed);
  const auto score = engine::score(result, setup_seconds);

  auto reveal = json::array();
  for (const auto& m : level.mutants) {
    std::size_t instances = 0;
    std::size_t caught = 0;
    for (const auto& o : result.outcomes) {
      if (o.mutant != m.id) continue;
      ++instances;
      if (o.detected()) ++caught;
    }
    reveal.push_back({{"id", m.id},
                      {"hint", m.hint},
                      {"edits", mutation::to_json(m)["edits"]},
                      {"program", blocklang::to_json(mutation::apply_edits(level.program, m.edits, level.schema))},
                      {"first_divergence", mutation::to_json(mutation::first_divergence(level, m))},
                      {"instances", instances},
                      {"detected", caught}});
  }
  json response = {{"session_id", s->id},
                   {"seed", s->seed},
                   {"setup_seconds", setup_seconds},
                   {"placements", engine::to_json(s->setup, level.kind)},
                   {"result", engine::to_json(result)},
                   {"score", engine::to_json(score)},
                   {"timeline", engine::to_json(result.timeline)},
                   {"mutant_reveal", reveal}};

  std::lock_guard lock(mu_);
  s->outcome = response;
  s->phase = Phase::finished;
  record(s->player, level.id, "game_finished",
         {{"session_id", s->id},
          {"seed", s->seed},
          {"setup_seconds", setup_seconds},
          {"placements", engine::to_json(s->setup, level.kind)},
          {"block_count", engine::setup_block_count(s->setup)},
          {"total", score.total},
          {"stars", score.stars},
          {"score", engine::to_json(score)},
          {"detected", {{"num", result.detected.num}, {"den", result.detected.den}}},
          {"saved", {{"num", result.saved.num}, {"den", result.saved.den}}}});
  return ok(response);
}

ApiResponse GameService::session_view(const std::string& session_id) const {
  std::lock_guard lock(mu_);
  auto it = sessions_.find(session_id);
  if (it == sessions_.end()) return fail(404, "UnknownSession", "no such session");
  const auto& s = *it->second;
  json j = {{"session_id", s.id},
            {"player", s.player},
            {"level", s.level->id},
            {"phase", std::string(to_string(s.phase))},
            {"seed", s.seed},
            {"placements", engine::to_json(s.setup, s.level->kind)}};
  if (s.phase == Phase::finished) j["outcome"] = s.outcome;
  return ok(j);
}

ApiResponse GameService::player_progress(const std::string& player_id) const {
  std::lock_guard lock(mu_);
  auto p = progress_.players.find(player_id);
  if (p == progress_.players.end()) return fail(404, "UnknownPlayer", "no such player");
  json levels = json::object();
  if (auto it = progress_.levels.find(player_id); it != progress_.levels.end()) {
    for (const auto& [id, lp] : it->second) {
      levels[id] = {{"best_total", lp.best_total}, {"best_stars", lp.best_stars}, {"attempts", lp.attempts}};
    }
  }
  return ok({{"player_id", player_id}, {"display_name", p->second}, {"levels", levels}});
}

ApiResponse GameService::leaderboard(const std::string& level_id, std::size_t limit) const {
  if (!find_level(level_id)) return fail(404, "UnknownLevel", "no such level");
  std::lock_guard lock(mu_);
  struct Row {
    std::string player;
    const LevelProgress* lp;
  };
  std::vector<Row> rows;
  for (const auto& [player, levels] : progress_.levels) {
    if (auto it = levels.find(level_id); it != levels.end()) rows.push_back({player, &it->second});
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.lp->best_total != b.lp->best_total) return a.lp->best_total > b.lp->best_total;
    return a.lp->best_seq < b.lp->best_seq;
  });
  auto arr = json::array();
  for (std::size_t i = 0; i < rows.size() && i < limit; ++i) {
    const auto& r = rows[i];
    arr.push_back({{"rank", i + 1},
                   {"player_id", r.player},
                   {"display_name", progress_.players.at(r.player)},
                   {"best_total", r.lp->best_total},
                   {"best_stars", r.lp->best_stars}});
  }
  return ok(arr);
}

ApiResponse GameService::metrics_export(std::optional<std::int64_t> from, std::optional<std::int64_t> to,
                                        const std::optional<std::string>& token) const {
  if (config_.admin_token.empty() || !token || *token != config_.admin_token) {
    return fail(403, "Forbidden", "admin token required");
  }
  static const std::vector<std::string> kFields = {
      "games_played",   "test_blocks_added",     "test_blocks_removed",    "test_blocks_placed",
      "portals_placed", "signpost_tests",        "detected_mutants",       "saved_humans",
      "detected_wrong_recipes", "successful_collectors"};
  auto zero = [] {
    json j = json::object();
    for (const auto& f : kFields) j[f] = 0;
    return j;
  };
  json totals = zero();
  json players = json::object();
  auto games = json::array();
  auto bump = [&](const std::string& player, const std::string& level, const std::string& field, std::uint64_t n) {
    auto& row = players[player][level];
    if (row.is_null()) row = zero();
    row[field] = row[field].get<std::uint64_t>() + n;
    totals[field] = totals[field].get<std::uint64_t>() + n;
  };

  for (const auto& r : log_.read_all()) {
    const auto ts = r.at("timestamp").get<std::int64_t>();
    if ((from && ts < *from) || (to && ts >= *to) || r.at("level").is_null()) continue;
    const auto& event = r.at("event").get_ref<const std::string&>();
    const auto player = r.at("player").get<std::string>();
    const auto level = r.at("level").get<std::string>();
    const auto& p = r.at("payload");
    if (event == "test_block_added") {
      bump(player, level, "test_blocks_added", p.at("count").get<std::uint64_t>());
    } else if (event == "test_block_removed") {
      bump(player, level, "test_blocks_removed", p.at("count").get<std::uint64_t>());
    } else if (event == "game_finished") {
      const auto* l = find_level(level);
      const bool loop = l && l->kind == blocklang::LevelKind::loop;
      const auto& placements = p.at("placements");
      bump(player, level, "games_played", 1);
      bump(player, level, "test_blocks_placed", p.at("block_count").get<std::uint64_t>());
      bump(player, level, loop ? "signpost_tests" : "portals_placed",
           placements.at(loop ? "signposts" : "portals").size());
      bump(player, level, loop ? "detected_wrong_recipes" : "detected_mutants",
           p.at("detected").at("num").get<std::uint64_t>());
      bump(player, level, loop ? "successful_collectors" : "saved_humans", p.at("saved").at("num").get<std::uint64_t>());
      games.push_back({{"timestamp", ts}, {"player", player}, {"level", level}, {"total", p.at("total")}});
    }
  }
  return ok({{"from", from ? json(*from) : json(nullptr)},
             {"to", to ? json(*to) : json(nullptr)},
             {"totals", totals},
             {"players", players},
             {"games", games}});
}

Progress GameService::progress() const {
  std::lock_guard lock(mu_);
  return progress_;
}

}  // namespace critters::service
