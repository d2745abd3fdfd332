#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "critters/blocklang/ast.hpp"
#include "critters/diagnostic.hpp"
#include "critters/levels/level.hpp"

namespace critters::engine {

using blocklang::TestBlock;

struct PortalPlacement {
  Pos tile;
  TestBlock test;

  bool operator==(const PortalPlacement&) const = default;
};

struct SignpostTest {
  std::string signpost_id;
  TestBlock test;

  bool operator==(const SignpostTest&) const = default;
};

// Portals for base levels, signpost tests for loop levels.
struct TestSetup {
  std::vector<PortalPlacement> portals;
  std::vector<SignpostTest> signposts;

  bool operator==(const TestSetup&) const = default;
};

// Placement rules and test typechecking. Codes: UnwalkablePortal,
// PortalOffPath, PortalOnEndpoint, DuplicatePortal, UnknownSignpost,
// DuplicateSignpostTest, WrongSetupKind, plus typecheck codes.
std::vector<Diagnostic> check_setup(const levels::Level& level, const TestSetup& setup);

// Same test on every signpost of the level.
TestSetup all_signposts(const levels::Level& level, const TestBlock& test);

// Accepts {"portals":[{"tile":[x,y],"test":[...]}]},
// {"signposts":[{"id":"s1","test":[...]}]}, or, for loop levels, a bare test
// array that goes on every signpost.
TestSetup setup_from_json(const nlohmann::json& j, const levels::Level& level);
nlohmann::json to_json(const TestSetup& setup, blocklang::LevelKind kind);

// Number of code blocks in all placed tests.
std::size_t setup_block_count(const TestSetup& setup);

}  // namespace critters::engine
