#include "critters/blocklang/typecheck.hpp"

#include <algorithm>

namespace critters::blocklang {
namespace {

enum class Site { cut_init, cut_tile, recipe, base_test, loop_test };

std::string_view site_name(Site s) {
  switch (s) {
    case Site::cut_init: return "critter initialization";
    case Site::cut_tile: return "per-tile critter code";
    case Site::recipe: return "recipe";
    case Site::base_test: return "portal test";
    case Site::loop_test: return "signpost test";
  }
  return "?";
}

class Checker {
 public:
  Checker(const AttributeSchema& schema, std::string subject) : schema_(schema), subject_(std::move(subject)) {}

  std::vector<Diagnostic> take() { return std::move(out_); }

  std::optional<StaticType> expr(const Expr& e, AstPath& path, Site site) {
    return std::visit(
        [&](const auto& n) -> std::optional<StaticType> {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Lit>) {
            return type_of(n.value);
          } else if constexpr (std::is_same_v<T, Attr>) {
            auto t = schema_.type_of(n.name);
            if (!t) report("UnknownAttribute", "unknown attribute '" + n.name + "'", path);
            return t;
          } else if constexpr (std::is_same_v<T, TileIs>) {
            if (site != Site::cut_tile && site != Site::base_test) {
              report("ContextViolation", "tile conditions are not allowed in " + std::string(site_name(site)), path);
            }
            return StaticType::truth;
          } else {
            path.push_back(0);
            const auto lhs = expr(*n.lhs, path, site);
            path.back() = 1;
            const auto rhs = expr(*n.rhs, path, site);
            path.pop_back();
            if (lhs && rhs) comparable(*lhs, *rhs, path);
            return StaticType::truth;
          }
        },
        e.node);
  }

  void cond(const Expr& e, AstPath& path, Site site) {
    path.push_back(0);
    const auto t = expr(e, path, site);
    if (t && *t != StaticType::truth) {
      report("ConditionNotTruth", "condition is a " + std::string(to_string(*t)) + ", not a comparison", path);
    }
    path.pop_back();
  }

  void behavior(const BehaviorBlock& block, AstPath& path, Site site) {
    for (std::size_t i = 0; i < block.size(); ++i) {
      path.push_back(i);
      behavior_stmt(block[i], path, site);
      path.pop_back();
    }
  }

  void test(const TestBlock& block, AstPath& path, Site site) {
    for (std::size_t i = 0; i < block.size(); ++i) {
      path.push_back(i);
      if (const auto* a = std::get_if<AssertEq>(&block[i].node)) {
        path.push_back(0);
        const auto lhs = expr(a->lhs, path, site);
        path.back() = 1;
        const auto rhs = expr(a->rhs, path, site);
        path.pop_back();
        if (lhs && rhs) comparable(*lhs, *rhs, path);
      } else {
        const auto& branch = std::get<IfTest>(block[i].node);
        cond(branch.cond, path, site);
        path.push_back(1);
        test(branch.then_branch, path, site);
        path.back() = 2;
        test(branch.else_branch, path, site);
        path.pop_back();
      }
      path.pop_back();
    }
  }

  void report(std::string code, std::string message, const AstPath& path) {
    Diagnostic d = make_error(std::move(code), std::move(message), subject_);
    d.path = path;
    out_.push_back(std::move(d));
  }

 private:
  void comparable(StaticType lhs, StaticType rhs, const AstPath& path) {
    if (lhs != rhs) {
      report("TypeMismatch",
             "cannot compare a " + std::string(to_string(lhs)) + " with a " + std::string(to_string(rhs)), path);
    } else if (lhs == StaticType::truth) {
      report("TypeMismatch", "comparisons cannot be compared", path);
    }
  }

  void behavior_stmt(const BehaviorStmt& stmt, AstPath& path, Site site) {
    std::visit(
        [&](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, SetAttr>) {
            set_attr(s, path, site);
          } else if constexpr (std::is_same_v<T, Collect>) {
            if (site != Site::recipe) {
              report("ContextViolation", "collect blocks are only allowed in recipes", path);
            }
            if (!schema_.counter_for_berry(s.berry)) {
              report("UnknownBerry", "no counter collects '" + s.berry + "' berries", path);
            }
          } else if constexpr (std::is_same_v<T, IfBehavior>) {
            cond(s.cond, path, site);
            path.push_back(1);
            behavior(s.then_branch, path, site);
            path.back() = 2;
            behavior(s.else_branch, path, site);
            path.pop_back();
          } else {
            if (site != Site::recipe) {
              report("ContextViolation", "repeat blocks are only allowed in recipes", path);
            }
            if (s.times == 0) report("NonPositiveCount", "repeat count must be at least 1", path);
            path.push_back(0);
            behavior(s.body, path, site);
            path.pop_back();
          }
        },
        stmt.node);
  }

  void set_attr(const SetAttr& s, AstPath& path, Site site) {
    path.push_back(0);
    const auto value_type = expr(s.value, path, site);
    path.pop_back();
    const auto target = schema_.type_of(s.name);
    if (!target) {
      report("UnknownAttribute", "unknown attribute '" + s.name + "'", path);
      return;
    }
    if (schema_.rounds_attr() == s.name) {
      report("EngineAttributeWrite", "'" + s.name + "' is managed by the engine", path);
      return;
    }
    if (!value_type) return;
    if (*value_type != *target) {
      report("TypeMismatch",
             "cannot assign a " + std::string(to_string(*value_type)) + " to " + std::string(to_string(*target)) +
                 " attribute '" + s.name + "'",
             path);
      return;
    }
    if (*target != StaticType::color) return;
    const auto& palette = schema_.color(s.name)->palette;
    auto in_palette = [&](Color c) { return std::find(palette.begin(), palette.end(), c) != palette.end(); };
    if (const auto* lit = std::get_if<Lit>(&s.value.node)) {
      const auto c = std::get<Color>(lit->value);
      if (!in_palette(c)) {
        report("PaletteViolation", std::string(to_string(c)) + " is not in the palette of '" + s.name + "'", path);
      }
    } else if (const auto* src = std::get_if<Attr>(&s.value.node)) {
      const auto& other = schema_.color(src->name)->palette;
      if (!std::all_of(other.begin(), other.end(), in_palette)) {
        report("PaletteViolation", "palette of '" + src->name + "' is not contained in '" + s.name + "'", path);
      }
    }
  }

  const AttributeSchema& schema_;
  std::string subject_;
  std::vector<Diagnostic> out_;
};

}  // namespace

std::vector<Diagnostic> typecheck(const CritterProgram& program, const AttributeSchema& schema) {
  Checker c(schema, "program");
  AstPath path{0};
  c.behavior(program.init, path, Site::cut_init);
  path = {1};
  c.behavior(program.on_tile, path, Site::cut_tile);
  return c.take();
}

std::vector<Diagnostic> typecheck(const Recipe& recipe, const AttributeSchema& schema) {
  Checker c(schema, "program");
  if (!recipe.loop()) {
    c.report("RecipeShape", "a recipe must consist of exactly one top-level repeat block", {});
  }
  AstPath path;
  c.behavior(recipe.stmts, path, Site::recipe);
  return c.take();
}

std::vector<Diagnostic> typecheck(const Program& program, const AttributeSchema& schema) {
  return std::visit([&](const auto& p) { return typecheck(p, schema); }, program);
}

std::vector<Diagnostic> typecheck(const TestBlock& test, const AttributeSchema& schema, LevelKind context) {
  Checker c(schema, "test");
  AstPath path;
  c.test(test, path, context == LevelKind::base ? Site::base_test : Site::loop_test);
  return c.take();
}

std::optional<StaticType> static_type(const Expr& e, const AttributeSchema& schema) {
  Checker c(schema, "expr");
  AstPath path;
  auto t = c.expr(e, path, Site::base_test);
  if (!c.take().empty()) return std::nullopt;
  return t;
}

}  // namespace critters::blocklang
