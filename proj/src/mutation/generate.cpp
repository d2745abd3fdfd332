#include "critters/mutation/generate.hpp"

#include <algorithm>
#include <unordered_set>

#include "critters/blocklang/ast_json.hpp"
#include "critters/blocklang/typecheck.hpp"

namespace critters::mutation {

using namespace blocklang;

namespace {

struct Candidate {
  Edit edit;
  std::string hint;
};

std::string path_text(const AstPath& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "." : "") + std::to_string(p[i]);
  return s.empty() ? "root" : s;
}

std::vector<Color> union_palette(const AttributeSchema& schema) {
  std::vector<Color> out;
  for (const auto& [name, c] : schema.colors) {
    for (auto col : c.palette) {
      if (std::find(out.begin(), out.end(), col) == out.end()) out.push_back(col);
    }
  }
  if (out.empty()) out.assign(kAllColors.begin(), kAllColors.end());
  return out;
}

// Palette of the attribute a color literal is assigned to or compared with.
std::vector<Color> palette_for(const Program& program, const AstPath& path, const AttributeSchema& schema) {
  if (path.empty()) return union_palette(schema);
  const AstPath parent_path(path.begin(), path.end() - 1);
  const auto parent = node_at(program, parent_path);
  if (!parent) return union_palette(schema);
  if (const auto* stmt = std::get_if<BehaviorStmt>(&*parent)) {
    if (const auto* set = std::get_if<SetAttr>(&stmt->node)) {
      if (const auto* c = schema.color(set->name)) return c->palette;
    }
  } else if (const auto* e = std::get_if<Expr>(&*parent)) {
    if (const auto* q = std::get_if<Eq>(&e->node)) {
      const Expr& sibling = path.back() == 0 ? *q->rhs : *q->lhs;
      if (const auto* a = std::get_if<Attr>(&sibling.node)) {
        if (const auto* c = schema.color(a->name)) return c->palette;
      }
    }
  }
  return union_palette(schema);
}

std::vector<std::uint64_t> count_values(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  if (n > 0) out.push_back(n - 1);
  out.push_back(n + 1);
  out.push_back(0);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  out.erase(std::remove(out.begin(), out.end(), n), out.end());
  return out;
}

void candidates_at(const Program& program, const AttributeSchema& schema, const std::set<Operator>& ops,
                   const AstPath& path, const BehaviorNode& node, std::vector<Candidate>& out) {
  const auto on = [&](Operator op) { return ops.count(op) > 0; };
  const auto where = path_text(path);

  if (const auto* e = std::get_if<Expr>(&node)) {
    const auto* lit = std::get_if<Lit>(&e->node);
    if (!lit) return;
    if (const auto* c = std::get_if<Color>(&lit->value)) {
      if (!on(Operator::color_constant)) return;
      for (auto v : palette_for(program, path, schema)) {
        if (v == *c) continue;
        out.push_back({Edit{path, dsl::lit(v)}, "color " + std::string(to_string(*c)) + " -> " +
                                                     std::string(to_string(v)) + " at " + where});
      }
    } else if (on(Operator::count_constant)) {
      const auto n = std::get<Count>(lit->value).n;
      for (auto v : count_values(n)) {
        out.push_back({Edit{path, dsl::lit(v)},
                       "count " + std::to_string(n) + " -> " + std::to_string(v) + " at " + where});
      }
    }
    return;
  }

  const auto* stmt = std::get_if<BehaviorStmt>(&node);
  if (!stmt) return;
  if (const auto* col = std::get_if<Collect>(&stmt->node); col && on(Operator::count_constant)) {
    for (auto v : count_values(col->count)) {
      out.push_back({Edit{path, dsl::collect(col->berry, v)}, "collect " + std::to_string(col->count) + " -> " +
                                                                  std::to_string(v) + " " + col->berry + " at " +
                                                                  where});
    }
  }
  if (const auto* branch = std::get_if<IfBehavior>(&stmt->node); branch && on(Operator::branch_swap)) {
    out.push_back({Edit{path, dsl::if_(branch->cond, branch->else_branch, branch->then_branch)},
                   "branches swapped at " + where});
  }
  if (const auto* rep = std::get_if<Repeat>(&stmt->node); rep && on(Operator::loop_bound)) {
    for (auto v : {rep->times - 1, rep->times + 1}) {
      if (v < 1) continue;
      out.push_back({Edit{path, dsl::repeat(v, rep->body)},
                     "repeat " + std::to_string(rep->times) + " -> " + std::to_string(v) + " at " + where});
    }
  }
  if (on(Operator::statement_deletion) && !path.empty()) {
    const AstPath block_path(path.begin(), path.end() - 1);
    const auto block = node_at(program, block_path);
    if (block && std::holds_alternative<BehaviorBlock>(*block)) {
      auto next = std::get<BehaviorBlock>(*block);
      next.erase(next.begin() + static_cast<std::ptrdiff_t>(path.back()));
      out.push_back({Edit{block_path, next}, "statement deleted at " + where});
    }
  }
}

}  // namespace

std::string_view to_string(Operator op) {
  switch (op) {
    case Operator::color_constant: return "color";
    case Operator::count_constant: return "count";
    case Operator::branch_swap: return "branch-swap";
    case Operator::loop_bound: return "loop-bound";
    case Operator::statement_deletion: return "delete";
  }
  return "?";
}

std::optional<Operator> parse_operator(std::string_view s) {
  for (auto op : all_operators()) {
    if (to_string(op) == s) return op;
  }
  return std::nullopt;
}

std::set<Operator> all_operators() {
  return {Operator::color_constant, Operator::count_constant, Operator::branch_swap, Operator::loop_bound,
          Operator::statement_deletion};
}

MutantCatalog generate_mutants(const Program& program, const AttributeSchema& schema,
                               const std::set<Operator>& operators, std::size_t limit) {
  MutantCatalog catalog;
  if (limit == 0) return catalog;

  std::vector<Candidate> candidates;
  for_each_node(program, [&](const AstPath& path, const BehaviorNode& node) {
    candidates_at(program, schema, operators, path, node, candidates);
  });

  std::unordered_set<std::string> seen{emit(program)};
  for (auto& c : candidates) {
    Program mutated = replace_at(program, c.edit.path, c.edit.replacement);
    if (has_errors(typecheck(mutated, schema))) continue;
    if (!seen.insert(emit(mutated)).second) continue;
    catalog.mutants.push_back(
        MutantSpec{"g" + std::to_string(catalog.mutants.size() + 1), {std::move(c.edit)}, std::move(c.hint)});
    if (catalog.mutants.size() == limit) break;
  }
  return catalog;
}

}  // namespace critters::mutation
