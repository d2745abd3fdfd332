#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "critters/blocklang/ast_json.hpp"
#include "critters/engine/score.hpp"
#include "critters/engine/simulate.hpp"
#include "critters/errors.hpp"
#include "critters/levels/catalog.hpp"
#include "critters/levels/level_json.hpp"
#include "critters/levels/validate.hpp"
#include "critters/mutation/analysis.hpp"
#include "critters/mutation/generate.hpp"
#include "critters/mutation/solver.hpp"
#include "critters/mutation/trace.hpp"
#include "critters/service/game_service.hpp"
#include "critters/service/http_server.hpp"

namespace {

using namespace critters;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

// Failures that map to exit status 1 after the diagnostics are printed.
struct Failure {
  std::string message;
  std::vector<Diagnostic> diagnostics;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{"cannot read " + path, {}};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{"cannot write " + path, {}};
  out << text;
}

levels::Level resolve_level(const std::string& ref) {
  if (const auto* l = levels::find_builtin(ref)) return *l;
  auto level = levels::parse_level(read_file(ref));
  levels::ValidateOptions options;
  options.check_killability = false;
  auto diags = levels::validate_level(level, options);
  if (has_errors(diags)) throw Failure{"level '" + level.id + "' is invalid", std::move(diags)};
  return level;
}

engine::TestSetup read_setup(const std::string& path, const levels::Level& level) {
  return engine::setup_from_json(blocklang::parse_json(read_file(path)), level);
}

void print_diagnostics(const std::vector<Diagnostic>& diags, std::ostream& out) {
  for (const auto& d : diags) out << to_string(d) << '\n';
}

struct RunOptions {
  std::string level;
  std::string tests;
  std::uint64_t seed = 0;
  double setup_seconds = 0;
  std::string out;
};

struct SolveOptions {
  std::string level;
  std::size_t max_assertions = 2;
  std::size_t max_depth = 1;
  std::uint64_t budget = mutation::SolverBounds{}.node_budget;
};

struct ReplayOptions {
  std::string level;
  std::string tests;
  std::uint64_t seed = 0;
  std::string timeline;
};

struct MutantsOptions {
  std::string level;
  bool generate = false;
  std::vector<std::string> operators;
  std::size_t limit = 100;
};

int cmd_run(const RunOptions& o, bool as_json) {
  const auto level = resolve_level(o.level);
  const auto setup = read_setup(o.tests, level);
  const auto result = engine::simulate(level, setup, o.seed);
  const auto score = engine::score(result, o.setup_seconds);
  if (!o.out.empty()) write_file(o.out, engine::canonical_timeline(result.timeline) + "\n");
  if (as_json) {
    std::cout << json{{"level", level.id}, {"seed", o.seed}, {"result", engine::to_json(result)},
                      {"score", engine::to_json(score)}}.dump()
              << '\n';
  } else {
    std::cout << level.id << " (" << level.title << "), seed " << o.seed << '\n' << engine::render(score);
  }
  return kOk;
}

int cmd_validate(const std::string& file, bool as_json) {
  auto level = levels::parse_level(read_file(file));
  const auto diags = levels::validate_level(level);
  const bool valid = !has_errors(diags);
  if (as_json) {
    std::cout << json{{"level", level.id}, {"valid", valid}, {"diagnostics", to_json(diags)}}.dump() << '\n';
  } else {
    print_diagnostics(diags, std::cout);
    std::cout << level.id << ": " << (valid ? "ok" : "invalid") << '\n';
  }
  return valid ? kOk : kFailed;
}

int cmd_mutants(const MutantsOptions& o, bool as_json) {
  const auto level = resolve_level(o.level);
  mutation::MutantCatalog catalog;
  if (o.generate) {
    std::set<mutation::Operator> ops;
    for (const auto& name : o.operators) {
      auto op = mutation::parse_operator(name);
      if (!op) throw Failure{"unknown operator '" + name + "'", {}};
      ops.insert(*op);
    }
    if (ops.empty()) ops = mutation::all_operators();
    catalog = mutation::generate_mutants(level.program, level.schema, ops, o.limit);
  } else {
    catalog.mutants = level.mutants;
  }
  auto arr = json::array();
  for (const auto& m : catalog.mutants) {
    auto probe = level;
    probe.mutants = {m};
    auto j = mutation::to_json(m);
    j["first_divergence"] = mutation::to_json(mutation::first_divergence(probe, m));
    arr.push_back(std::move(j));
  }
  if (as_json) {
    std::cout << json{{"level", level.id}, {"mutants", arr}}.dump() << '\n';
    return kOk;
  }
  for (const auto& j : arr) {
    std::string where = "equivalent";
    const auto& d = j["first_divergence"];
    if (d.contains("round")) where = "round " + std::to_string(d["round"].get<std::uint64_t>());
    if (d.contains("tile_index")) where = "tile " + std::to_string(d["tile_index"].get<std::uint64_t>());
    std::cout << j["id"].get<std::string>() << "  " << where << "  " << j["hint"].get<std::string>() << '\n';
  }
  return kOk;
}

int cmd_solve(const SolveOptions& o, bool as_json) {
  const auto level = resolve_level(o.level);
  const mutation::SolverBounds bounds{o.max_assertions, o.max_depth, o.budget};
  std::optional<engine::TestSetup> found;
  try {
    found = mutation::solve_min_test(level, bounds);
  } catch (const BudgetExceeded& e) {
    std::cerr << "search budget exhausted: " << e.what() << '\n';
    return kFailed;
  }
  if (!found) {
    std::cerr << "no adequate test within " << o.max_assertions << " assertions and if-depth " << o.max_depth << '\n';
    return kFailed;
  }
  const auto setup_json = engine::to_json(*found, level.kind);
  if (as_json) {
    const auto report = mutation::adequacy(level, *found, level.mutants);
    std::cout << json{{"level", level.id}, {"setup", setup_json}, {"adequacy", mutation::to_json(report)}}.dump()
              << '\n';
  } else {
    std::cout << setup_json.dump() << '\n';
  }
  return kOk;
}

int cmd_replay(const ReplayOptions& o, bool as_json) {
  const auto level = resolve_level(o.level);
  const auto setup = read_setup(o.tests, level);
  const auto timeline = blocklang::parse_json(read_file(o.timeline));
  const bool match = engine::verify_timeline(level, setup, o.seed, timeline);
  if (as_json) {
    std::cout << json{{"level", level.id}, {"seed", o.seed}, {"verified", match}}.dump() << '\n';
  } else {
    std::cout << (match ? "timeline verified" : "timeline does not match the simulation") << '\n';
  }
  return match ? kOk : kFailed;
}

int cmd_levels(bool as_json) {
  auto arr = json::array();
  for (const auto& l : levels::builtin_catalog()) {
    arr.push_back({{"id", l.id}, {"kind", std::string(blocklang::to_string(l.kind))}, {"title", l.title}});
  }
  if (as_json) {
    std::cout << arr.dump() << '\n';
  } else {
    for (const auto& j : arr) {
      std::cout << j["id"].get<std::string>() << "  " << j["kind"].get<std::string>() << "  "
                << j["title"].get<std::string>() << '\n';
    }
  }
  return kOk;
}

int cmd_serve(const std::string& host, int port, const std::string& data) {
  auto config = service::config_from_env();
  if (!data.empty()) config.data_dir = data;
  service::GameService svc(std::move(config));
  std::cerr << "listening on " << host << ":" << port << '\n';
  if (!service::serve(svc, host, port)) {
    std::cerr << "cannot listen on " << host << ":" << port << '\n';
    return kFailed;
  }
  return kOk;
}

int env_port() {
  if (const char* p = std::getenv("PORT"); p && *p) return std::atoi(p);
  return 8080;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Code Critters: mutation-testing game engine"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "Simulate a level with tests and print the score");
  run_cmd->add_option("--level", run.level, "Built-in level id or level file")->required();
  run_cmd->add_option("--tests", run.tests, "Test setup file")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--seed", run.seed, "Spawn-order seed");
  run_cmd->add_option("--setup-seconds", run.setup_seconds, "Seconds spent placing tests")->check(CLI::NonNegativeNumber);
  run_cmd->add_option("--out", run.out, "Write the canonical timeline here");

  std::string validate_file;
  auto* validate_cmd = app.add_subcommand("validate", "Check a level file");
  validate_cmd->add_option("file", validate_file, "Level file")->required()->check(CLI::ExistingFile);

  MutantsOptions mutants;
  auto* mutants_cmd = app.add_subcommand("mutants", "List catalog mutants or generate new ones");
  mutants_cmd->add_option("--level", mutants.level, "Built-in level id or level file")->required();
  mutants_cmd->add_flag("--generate", mutants.generate, "Generate single-edit mutants from the program");
  mutants_cmd->add_option("--operators", mutants.operators, "color, count, branch-swap, loop-bound, delete")
      ->delimiter(',');
  mutants_cmd->add_option("--limit", mutants.limit, "Maximum number of generated mutants");

  SolveOptions solve;
  auto* solve_cmd = app.add_subcommand("solve", "Search for the smallest adequate test");
  solve_cmd->add_option("--level", solve.level, "Built-in level id or level file")->required();
  solve_cmd->add_option("--max-assertions", solve.max_assertions, "Assertion budget");
  solve_cmd->add_option("--max-depth", solve.max_depth, "Maximum if nesting");
  solve_cmd->add_option("--budget", solve.budget, "Candidate tests to try before giving up");

  ReplayOptions replay;
  auto* replay_cmd = app.add_subcommand("replay", "Check a timeline against a fresh simulation");
  replay_cmd->add_option("--level", replay.level, "Built-in level id or level file")->required();
  replay_cmd->add_option("--tests", replay.tests, "Test setup file")->required()->check(CLI::ExistingFile);
  replay_cmd->add_option("--seed", replay.seed, "Spawn-order seed");
  replay_cmd->add_option("--timeline", replay.timeline, "Timeline file")->required()->check(CLI::ExistingFile);

  auto* levels_cmd = app.add_subcommand("levels", "List the built-in levels");

  std::string host = "0.0.0.0";
  int port = env_port();
  std::string data;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP game server");
  serve_cmd->add_option("--host", host, "Bind address");
  serve_cmd->add_option("--port", port, "Port (default $PORT or 8080)")->check(CLI::Range(1, 65535));
  serve_cmd->add_option("--data", data, "Data directory (default $DATA_DIR or ./data)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  const bool as_json = format == "json";
  try {
    if (*run_cmd) return cmd_run(run, as_json);
    if (*validate_cmd) return cmd_validate(validate_file, as_json);
    if (*mutants_cmd) return cmd_mutants(mutants, as_json);
    if (*solve_cmd) return cmd_solve(solve, as_json);
    if (*replay_cmd) return cmd_replay(replay, as_json);
    if (*levels_cmd) return cmd_levels(as_json);
    if (*serve_cmd) return cmd_serve(host, port, data);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    print_diagnostics(f.diagnostics, std::cerr);
    return kFailed;
  } catch (const ValidationFailed& e) {
    std::cerr << "error: " << e.what() << '\n';
    print_diagnostics(e.diagnostics(), std::cerr);
    return kFailed;
  } catch (const Error& e) {
    std::cerr << "error " << e.code() << ": " << e.what() << '\n';
    return kFailed;
  }
  return kUsage;
}
