#include "critters/blocklang/ast_path.hpp"

#include "critters/errors.hpp"

namespace critters::blocklang {
namespace {

std::string path_string(const AstPath& path) {
  std::string s = "[";
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(path[i]);
  }
  return s + "]";
}

std::optional<BehaviorNode> expr_at(const Expr& e, const AstPath& path, std::size_t i) {
  if (i == path.size()) return BehaviorNode{e};
  const auto* q = std::get_if<Eq>(&e.node);
  if (!q || path[i] > 1) return std::nullopt;
  return expr_at(path[i] == 0 ? *q->lhs : *q->rhs, path, i + 1);
}

std::optional<BehaviorNode> block_at(const BehaviorBlock& b, const AstPath& path, std::size_t i);

std::optional<BehaviorNode> stmt_at(const BehaviorStmt& s, const AstPath& path, std::size_t i) {
  if (i == path.size()) return BehaviorNode{s};
  const auto child = path[i];
  if (const auto* set = std::get_if<SetAttr>(&s.node)) {
    if (child == 0) return expr_at(set->value, path, i + 1);
  } else if (const auto* branch = std::get_if<IfBehavior>(&s.node)) {
    if (child == 0) return expr_at(branch->cond, path, i + 1);
    if (child == 1) return block_at(branch->then_branch, path, i + 1);
    if (child == 2) return block_at(branch->else_branch, path, i + 1);
  } else if (const auto* rep = std::get_if<Repeat>(&s.node)) {
    if (child == 0) return block_at(rep->body, path, i + 1);
  }
  return std::nullopt;
}

std::optional<BehaviorNode> block_at(const BehaviorBlock& b, const AstPath& path, std::size_t i) {
  if (i == path.size()) return BehaviorNode{b};
  if (path[i] >= b.size()) return std::nullopt;
  return stmt_at(b[path[i]], path, i + 1);
}

template <typename T>
const T& expect_category(const BehaviorNode& replacement, const AstPath& path) {
  const auto* node = std::get_if<T>(&replacement);
  if (!node) {
    throw IllTypedReplacement("replacement at " + path_string(path) + " is a " +
                              std::string(category_name(replacement)) + ", expected a " +
                              std::string(category_name(BehaviorNode{T{}})));
  }
  return *node;
}

[[noreturn]] void bad_path(const AstPath& path) { throw BadPath("no node at " + path_string(path)); }

Expr replace_expr(const Expr& e, const AstPath& path, std::size_t i, const BehaviorNode& repl) {
  if (i == path.size()) return expect_category<Expr>(repl, path);
  const auto* q = std::get_if<Eq>(&e.node);
  if (!q || path[i] > 1) bad_path(path);
  if (path[i] == 0) return Expr{Eq{replace_expr(*q->lhs, path, i + 1, repl), q->rhs}};
  return Expr{Eq{q->lhs, replace_expr(*q->rhs, path, i + 1, repl)}};
}

BehaviorBlock replace_block(const BehaviorBlock& b, const AstPath& path, std::size_t i, const BehaviorNode& repl);

BehaviorStmt replace_stmt(const BehaviorStmt& s, const AstPath& path, std::size_t i, const BehaviorNode& repl) {
  if (i == path.size()) return expect_category<BehaviorStmt>(repl, path);
  const auto child = path[i];
  if (const auto* set = std::get_if<SetAttr>(&s.node)) {
    if (child == 0) return BehaviorStmt{SetAttr{set->name, replace_expr(set->value, path, i + 1, repl)}};
  } else if (const auto* branch = std::get_if<IfBehavior>(&s.node)) {
    IfBehavior next = *branch;
    if (child == 0) {
      next.cond = replace_expr(branch->cond, path, i + 1, repl);
      return BehaviorStmt{std::move(next)};
    }
    if (child == 1) {
      next.then_branch = replace_block(branch->then_branch, path, i + 1, repl);
      return BehaviorStmt{std::move(next)};
    }
    if (child == 2) {
      next.else_branch = replace_block(branch->else_branch, path, i + 1, repl);
      return BehaviorStmt{std::move(next)};
    }
  } else if (const auto* rep = std::get_if<Repeat>(&s.node)) {
    if (child == 0) return BehaviorStmt{Repeat{rep->times, replace_block(rep->body, path, i + 1, repl)}};
  }
  bad_path(path);
}

BehaviorBlock replace_block(const BehaviorBlock& b, const AstPath& path, std::size_t i, const BehaviorNode& repl) {
  if (i == path.size()) return expect_category<BehaviorBlock>(repl, path);
  if (path[i] >= b.size()) bad_path(path);
  BehaviorBlock next = b;
  next[path[i]] = replace_stmt(b[path[i]], path, i + 1, repl);
  return next;
}

using Visitor = std::function<void(const AstPath&, const BehaviorNode&)>;

void walk_expr(const Expr& e, AstPath& path, const Visitor& visit) {
  visit(path, BehaviorNode{e});
  if (const auto* q = std::get_if<Eq>(&e.node)) {
    path.push_back(0);
    walk_expr(*q->lhs, path, visit);
    path.back() = 1;
    walk_expr(*q->rhs, path, visit);
    path.pop_back();
  }
}

void walk_block(const BehaviorBlock& b, AstPath& path, const Visitor& visit);

void walk_stmt(const BehaviorStmt& s, AstPath& path, const Visitor& visit) {
  visit(path, BehaviorNode{s});
  if (const auto* set = std::get_if<SetAttr>(&s.node)) {
    path.push_back(0);
    walk_expr(set->value, path, visit);
    path.pop_back();
  } else if (const auto* branch = std::get_if<IfBehavior>(&s.node)) {
    path.push_back(0);
    walk_expr(branch->cond, path, visit);
    path.back() = 1;
    walk_block(branch->then_branch, path, visit);
    path.back() = 2;
    walk_block(branch->else_branch, path, visit);
    path.pop_back();
  } else if (const auto* rep = std::get_if<Repeat>(&s.node)) {
    path.push_back(0);
    walk_block(rep->body, path, visit);
    path.pop_back();
  }
}

void walk_block(const BehaviorBlock& b, AstPath& path, const Visitor& visit) {
  visit(path, BehaviorNode{b});
  for (std::size_t i = 0; i < b.size(); ++i) {
    path.push_back(i);
    walk_stmt(b[i], path, visit);
    path.pop_back();
  }
}

}  // namespace

std::string_view category_name(const BehaviorNode& n) {
  switch (n.index()) {
    case 0: return "expression";
    case 1: return "statement";
    default: return "block";
  }
}

std::optional<BehaviorNode> node_at(const Program& program, const AstPath& path) {
  if (const auto* cut = std::get_if<CritterProgram>(&program)) {
    if (path.empty() || path[0] > 1) return std::nullopt;
    return block_at(path[0] == 0 ? cut->init : cut->on_tile, path, 1);
  }
  return block_at(std::get<Recipe>(program).stmts, path, 0);
}

Program replace_at(const Program& program, const AstPath& path, const BehaviorNode& replacement) {
  if (const auto* cut = std::get_if<CritterProgram>(&program)) {
    if (path.empty() || path[0] > 1) bad_path(path);
    CritterProgram next = *cut;
    if (path[0] == 0) {
      next.init = replace_block(cut->init, path, 1, replacement);
    } else {
      next.on_tile = replace_block(cut->on_tile, path, 1, replacement);
    }
    return next;
  }
  return Recipe{replace_block(std::get<Recipe>(program).stmts, path, 0, replacement)};
}

void for_each_node(const Program& program, const Visitor& visit) {
  AstPath path;
  if (const auto* cut = std::get_if<CritterProgram>(&program)) {
    path = {0};
    walk_block(cut->init, path, visit);
    path = {1};
    walk_block(cut->on_tile, path, visit);
    return;
  }
  walk_block(std::get<Recipe>(program).stmts, path, visit);
}

const AssertEq* assertion_at(const TestBlock& test, const AstPath& path) {
  const TestBlock* block = &test;
  std::size_t i = 0;
  while (i < path.size()) {
    if (path[i] >= block->size()) return nullptr;
    const auto& stmt = (*block)[path[i]];
    ++i;
    if (const auto* a = std::get_if<AssertEq>(&stmt.node)) return i == path.size() ? a : nullptr;
    const auto& branch = std::get<IfTest>(stmt.node);
    if (i == path.size()) return nullptr;
    if (path[i] == 1) {
      block = &branch.then_branch;
    } else if (path[i] == 2) {
      block = &branch.else_branch;
    } else {
      return nullptr;
    }
    ++i;
  }
  return nullptr;
}

}  // namespace critters::blocklang
