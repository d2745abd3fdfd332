#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "critters/blocklang/value.hpp"

namespace critters::blocklang {

enum class LevelKind { base, loop };

std::string_view to_string(LevelKind k);

// Immutable, shareable owning pointer with value semantics: copies share the
// pointee and equality compares the pointees.
template <typename T>
class Box {
 public:
  Box(T value) : ptr_(std::make_shared<const T>(std::move(value))) {}  // NOLINT(google-explicit-constructor)

  const T& operator*() const { return *ptr_; }
  const T* operator->() const { return ptr_.get(); }

  friend bool operator==(const Box& a, const Box& b) { return a.ptr_ == b.ptr_ || *a.ptr_ == *b.ptr_; }

 private:
  std::shared_ptr<const T> ptr_;
};

// ---------------------------------------------------------------------------
// Expressions

struct Expr;

struct Lit {
  AttrValue value;

  bool operator==(const Lit&) const = default;
};

struct Attr {
  std::string name;

  bool operator==(const Attr&) const = default;
};

struct TileIs {
  Terrain terrain = Terrain::grass;

  bool operator==(const TileIs&) const = default;
};

struct Eq {
  Box<Expr> lhs;
  Box<Expr> rhs;

  bool operator==(const Eq&) const = default;
};

struct Expr {
  std::variant<Lit, Attr, TileIs, Eq> node;

  bool operator==(const Expr&) const = default;
};

// ---------------------------------------------------------------------------
// Behavior statements (critter and recipe code)

struct BehaviorStmt;
using BehaviorBlock = std::vector<BehaviorStmt>;

struct SetAttr {
  std::string name;
  Expr value;

  bool operator==(const SetAttr&) const = default;
};

struct Collect {
  std::string berry;
  std::uint64_t count = 1;

  bool operator==(const Collect&) const = default;
};

struct IfBehavior {
  Expr cond;
  BehaviorBlock then_branch;
  BehaviorBlock else_branch;

  bool operator==(const IfBehavior&) const;
};

struct Repeat {
  std::uint64_t times = 1;
  BehaviorBlock body;

  bool operator==(const Repeat&) const;
};

struct BehaviorStmt {
  std::variant<SetAttr, Collect, IfBehavior, Repeat> node;

  bool operator==(const BehaviorStmt&) const = default;
};

inline bool IfBehavior::operator==(const IfBehavior& o) const {
  return cond == o.cond && then_branch == o.then_branch && else_branch == o.else_branch;
}
inline bool Repeat::operator==(const Repeat& o) const { return times == o.times && body == o.body; }

// ---------------------------------------------------------------------------
// Test statements (portal and signpost code)

struct TestStmt;
using TestBlock = std::vector<TestStmt>;

// The "only critters with <lhs> equals <rhs> can pass" block.
struct AssertEq {
  Expr lhs;
  Expr rhs;

  bool operator==(const AssertEq&) const = default;
};

struct IfTest {
  Expr cond;
  TestBlock then_branch;
  TestBlock else_branch;

  bool operator==(const IfTest&) const;
};

struct TestStmt {
  std::variant<AssertEq, IfTest> node;

  bool operator==(const TestStmt&) const = default;
};

inline bool IfTest::operator==(const IfTest& o) const {
  return cond == o.cond && then_branch == o.then_branch && else_branch == o.else_branch;
}

// ---------------------------------------------------------------------------
// Programs under test

// Critter Under Test: runs `init` once at the village and `on_tile` on every
// tile the critter enters.
struct CritterProgram {
  BehaviorBlock init;
  BehaviorBlock on_tile;

  bool operator==(const CritterProgram&) const = default;
};

// Recipe Under Test: a single top-level Repeat whose iterations are laps.
struct Recipe {
  BehaviorBlock stmts;

  bool operator==(const Recipe&) const = default;

  // nullptr unless `stmts` is exactly one Repeat.
  const Repeat* loop() const;
};

using Program = std::variant<CritterProgram, Recipe>;

LevelKind kind_of(const Program& p);

// Number of AST nodes (blocks), used for telemetry block counts.
std::size_t block_count(const Expr& e);
std::size_t block_count(const TestBlock& t);
std::size_t block_count(const BehaviorBlock& b);

namespace dsl {

Expr lit(Color c);
Expr lit(std::uint64_t n);
Expr attr(std::string name);
Expr tile_is(Terrain t);
Expr eq(Expr lhs, Expr rhs);

BehaviorStmt set_attr(std::string name, Expr value);
BehaviorStmt collect(std::string berry, std::uint64_t count);
BehaviorStmt if_(Expr cond, BehaviorBlock then_branch, BehaviorBlock else_branch = {});
BehaviorStmt repeat(std::uint64_t times, BehaviorBlock body);

TestStmt assert_eq(Expr lhs, Expr rhs);
TestStmt if_test(Expr cond, TestBlock then_branch, TestBlock else_branch = {});

}  // namespace dsl

}  // namespace critters::blocklang
