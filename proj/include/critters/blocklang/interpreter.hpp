#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "critters/blocklang/ast.hpp"
#include "critters/blocklang/schema.hpp"
#include "critters/diagnostic.hpp"

namespace critters::blocklang {

inline constexpr std::uint64_t kDefaultCounterCap = 1'000'000;

struct AttrChange {
  std::string name;
  AttrValue value;

  bool operator==(const AttrChange&) const = default;
};

struct CollectEffect {
  std::string berry;
  std::string counter;
  std::uint64_t count = 0;
  std::uint64_t total = 0;  // counter value after the collect

  bool operator==(const CollectEffect&) const = default;
};

using Effect = std::variant<AttrChange, CollectEffect>;

struct ExecResult {
  CritterState state;
  std::vector<Effect> effects;
};

struct TestOutcome {
  bool passed = true;
  std::optional<AstPath> failed_assertion;  // present iff !passed

  bool operator==(const TestOutcome&) const = default;
};

// Tree-walking evaluator for behavior and test code. Stateless apart from its
// configuration; every call is a pure function of its arguments.
class Interpreter {
 public:
  explicit Interpreter(AttributeSchema schema, std::uint64_t counter_cap = kDefaultCounterCap);

  const AttributeSchema& schema() const { return schema_; }
  std::uint64_t counter_cap() const { return counter_cap_; }

  Value eval(const Expr& e, const CritterState& s, std::optional<Terrain> tile) const;

  // Effects list only the attributes whose value actually changed, plus every
  // collect, in execution order.
  ExecResult exec(const BehaviorBlock& stmts, CritterState s, std::optional<Terrain> tile) const;

  // Assertions run in order; the first failing one ends the test.
  TestOutcome run_test(const TestBlock& test, const CritterState& s, std::optional<Terrain> tile) const;

  // Sets `name` to `count`, checking the cap. Used by the engine for the lap counter.
  void set_counter(CritterState& s, const std::string& name, std::uint64_t count) const;

 private:
  bool eval_cond(const Expr& cond, const CritterState& s, std::optional<Terrain> tile) const;
  void exec_block(const BehaviorBlock& block, CritterState& s, std::optional<Terrain> tile,
                  std::vector<Effect>& effects) const;
  bool run_block(const TestBlock& block, const CritterState& s, std::optional<Terrain> tile, AstPath& path,
                 TestOutcome& out) const;

  AttributeSchema schema_;
  std::uint64_t counter_cap_;
};

}  // namespace critters::blocklang
