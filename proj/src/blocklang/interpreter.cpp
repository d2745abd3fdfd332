#include "critters/blocklang/interpreter.hpp"

#include <algorithm>

#include "critters/errors.hpp"

namespace critters::blocklang {
namespace {

const AttrValue& lookup(const CritterState& s, const std::string& name) {
  auto it = s.attrs.find(name);
  if (it == s.attrs.end()) throw EvalError("UnknownAttribute", "unknown attribute '" + name + "'");
  return it->second;
}

}  // namespace

Interpreter::Interpreter(AttributeSchema schema, std::uint64_t counter_cap)
    : schema_(std::move(schema)), counter_cap_(counter_cap) {}

Value Interpreter::eval(const Expr& e, const CritterState& s, std::optional<Terrain> tile) const {
  return std::visit(
      [&](const auto& n) -> Value {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Lit>) {
          return widen(n.value);
        } else if constexpr (std::is_same_v<T, Attr>) {
          return widen(lookup(s, n.name));
        } else if constexpr (std::is_same_v<T, TileIs>) {
          if (!tile) throw EvalError("TileContextMissing", "tile condition evaluated without a tile");
          return Truth{*tile == n.terrain};
        } else {
          const Value lhs = eval(*n.lhs, s, tile);
          const Value rhs = eval(*n.rhs, s, tile);
          if (type_of(lhs) != type_of(rhs) || type_of(lhs) == StaticType::truth) {
            throw EvalError("TypeMismatch", "cannot compare " + std::string(to_string(type_of(lhs))) + " with " +
                                                std::string(to_string(type_of(rhs))));
          }
          return Truth{lhs == rhs};
        }
      },
      e.node);
}

bool Interpreter::eval_cond(const Expr& cond, const CritterState& s, std::optional<Terrain> tile) const {
  const Value v = eval(cond, s, tile);
  const auto* t = std::get_if<Truth>(&v);
  if (!t) throw EvalError("TypeMismatch", "condition is a " + std::string(to_string(type_of(v))) + ", not a truth");
  return t->b;
}

void Interpreter::set_counter(CritterState& s, const std::string& name, std::uint64_t count) const {
  if (count > counter_cap_) {
    throw EvalError("CounterOverflow", "counter '" + name + "' exceeds cap " + std::to_string(counter_cap_));
  }
  s.attrs.insert_or_assign(name, Count{count});
}

ExecResult Interpreter::exec(const BehaviorBlock& stmts, CritterState s, std::optional<Terrain> tile) const {
  ExecResult out;
  exec_block(stmts, s, tile, out.effects);
  out.state = std::move(s);
  return out;
}

void Interpreter::exec_block(const BehaviorBlock& block, CritterState& s, std::optional<Terrain> tile,
                             std::vector<Effect>& effects) const {
  for (const auto& stmt : block) {
    if (const auto* set = std::get_if<SetAttr>(&stmt.node)) {
      const auto declared = schema_.type_of(set->name);
      if (!declared) throw EvalError("UnknownAttribute", "unknown attribute '" + set->name + "'");
      if (schema_.rounds_attr() == set->name) {
        throw EvalError("EngineAttributeWrite", "'" + set->name + "' is managed by the engine");
      }
      const Value v = eval(set->value, s, tile);
      if (type_of(v) != *declared) {
        throw EvalError("TypeMismatch", "cannot assign a " + std::string(to_string(type_of(v))) + " to '" +
                                            set->name + "'");
      }
      AttrValue next;
      if (const auto* c = std::get_if<Color>(&v)) {
        const auto& palette = schema_.color(set->name)->palette;
        if (std::find(palette.begin(), palette.end(), *c) == palette.end()) {
          throw EvalError("PaletteViolation",
                          std::string(to_string(*c)) + " is not in the palette of '" + set->name + "'");
        }
        next = *c;
      } else {
        const auto n = std::get<Count>(v).n;
        if (n > counter_cap_) throw EvalError("CounterOverflow", "counter '" + set->name + "' exceeds cap");
        next = Count{n};
      }
      auto& slot = s.attrs[set->name];
      if (slot != next) {
        slot = next;
        effects.push_back(AttrChange{set->name, next});
      }
    } else if (const auto* col = std::get_if<Collect>(&stmt.node)) {
      const auto counter = schema_.counter_for_berry(col->berry);
      if (!counter) throw EvalError("UnknownBerry", "no counter collects '" + col->berry + "' berries");
      if (col->count == 0) continue;
      const auto before = std::get<Count>(lookup(s, *counter)).n;
      if (col->count > counter_cap_ || before > counter_cap_ - col->count) {
        throw EvalError("CounterOverflow", "counter '" + *counter + "' exceeds cap " + std::to_string(counter_cap_));
      }
      const auto total = before + col->count;
      s.attrs.insert_or_assign(*counter, Count{total});
      effects.push_back(CollectEffect{col->berry, *counter, col->count, total});
    } else if (const auto* branch = std::get_if<IfBehavior>(&stmt.node)) {
      exec_block(eval_cond(branch->cond, s, tile) ? branch->then_branch : branch->else_branch, s, tile, effects);
    } else {
      const auto& rep = std::get<Repeat>(stmt.node);
      for (std::uint64_t i = 0; i < rep.times; ++i) exec_block(rep.body, s, tile, effects);
    }
  }
}

TestOutcome Interpreter::run_test(const TestBlock& test, const CritterState& s, std::optional<Terrain> tile) const {
  TestOutcome out;
  AstPath path;
  run_block(test, s, tile, path, out);
  return out;
}

bool Interpreter::run_block(const TestBlock& block, const CritterState& s, std::optional<Terrain> tile, AstPath& path,
                            TestOutcome& out) const {
  for (std::size_t i = 0; i < block.size(); ++i) {
    path.push_back(i);
    if (const auto* a = std::get_if<AssertEq>(&block[i].node)) {
      const Value lhs = eval(a->lhs, s, tile);
      const Value rhs = eval(a->rhs, s, tile);
      if (type_of(lhs) != type_of(rhs) || type_of(lhs) == StaticType::truth) {
        throw EvalError("TypeMismatch", "assertion compares " + std::string(to_string(type_of(lhs))) + " with " +
                                            std::string(to_string(type_of(rhs))));
      }
      if (lhs != rhs) {
        out.passed = false;
        out.failed_assertion = path;
        return false;
      }
    } else {
      const auto& branch = std::get<IfTest>(block[i].node);
      const bool taken = eval_cond(branch.cond, s, tile);
      path.push_back(taken ? 1 : 2);
      if (!run_block(taken ? branch.then_branch : branch.else_branch, s, tile, path, out)) return false;
      path.pop_back();
    }
    path.pop_back();
  }
  return true;
}

}  // namespace critters::blocklang
