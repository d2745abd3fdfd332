#include "critters/blocklang/ast.hpp"

namespace critters::blocklang {

std::string_view to_string(LevelKind k) { return k == LevelKind::base ? "base" : "loop"; }

const Repeat* Recipe::loop() const {
  if (stmts.size() != 1) return nullptr;
  return std::get_if<Repeat>(&stmts.front().node);
}

LevelKind kind_of(const Program& p) {
  return std::holds_alternative<CritterProgram>(p) ? LevelKind::base : LevelKind::loop;
}

std::size_t block_count(const Expr& e) {
  if (const auto* q = std::get_if<Eq>(&e.node)) return 1 + block_count(*q->lhs) + block_count(*q->rhs);
  return 1;
}

std::size_t block_count(const TestBlock& t) {
  std::size_t n = 0;
  for (const auto& stmt : t) {
    if (const auto* a = std::get_if<AssertEq>(&stmt.node)) {
      n += 1 + block_count(a->lhs) + block_count(a->rhs);
    } else {
      const auto& i = std::get<IfTest>(stmt.node);
      n += 1 + block_count(i.cond) + block_count(i.then_branch) + block_count(i.else_branch);
    }
  }
  return n;
}

std::size_t block_count(const BehaviorBlock& b) {
  std::size_t n = 0;
  for (const auto& stmt : b) {
    std::visit(
        [&](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, SetAttr>) {
            n += 1 + block_count(s.value);
          } else if constexpr (std::is_same_v<T, Collect>) {
            n += 1;
          } else if constexpr (std::is_same_v<T, IfBehavior>) {
            n += 1 + block_count(s.cond) + block_count(s.then_branch) + block_count(s.else_branch);
          } else {
            n += 1 + block_count(s.body);
          }
        },
        stmt.node);
  }
  return n;
}

namespace dsl {

Expr lit(Color c) { return Expr{Lit{c}}; }
Expr lit(std::uint64_t n) { return Expr{Lit{Count{n}}}; }
Expr attr(std::string name) { return Expr{Attr{std::move(name)}}; }
Expr tile_is(Terrain t) { return Expr{TileIs{t}}; }
Expr eq(Expr lhs, Expr rhs) { return Expr{Eq{std::move(lhs), std::move(rhs)}}; }

BehaviorStmt set_attr(std::string name, Expr value) { return BehaviorStmt{SetAttr{std::move(name), std::move(value)}}; }
BehaviorStmt collect(std::string berry, std::uint64_t count) { return BehaviorStmt{Collect{std::move(berry), count}}; }
BehaviorStmt if_(Expr cond, BehaviorBlock then_branch, BehaviorBlock else_branch) {
  return BehaviorStmt{IfBehavior{std::move(cond), std::move(then_branch), std::move(else_branch)}};
}
BehaviorStmt repeat(std::uint64_t times, BehaviorBlock body) { return BehaviorStmt{Repeat{times, std::move(body)}}; }

TestStmt assert_eq(Expr lhs, Expr rhs) { return TestStmt{AssertEq{std::move(lhs), std::move(rhs)}}; }
TestStmt if_test(Expr cond, TestBlock then_branch, TestBlock else_branch) {
  return TestStmt{IfTest{std::move(cond), std::move(then_branch), std::move(else_branch)}};
}

}  // namespace dsl

}  // namespace critters::blocklang
