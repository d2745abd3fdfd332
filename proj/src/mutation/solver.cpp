#include "critters/mutation/solver.hpp"

#include <algorithm>

#include "critters/blocklang/interpreter.hpp"
#include "critters/errors.hpp"
#include "critters/mutation/trace.hpp"

namespace critters::mutation {

using namespace blocklang;

namespace {

using Bits = std::vector<std::uint64_t>;

Bits operator&(const Bits& a, const Bits& b) {
  Bits r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] & b[i];
  return r;
}

Bits and_not(const Bits& a, const Bits& b) {
  Bits r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] & ~b[i];
  return r;
}

void or_into(Bits& a, const Bits& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] |= b[i];
}

bool intersects(const Bits& a, const Bits& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] & b[i]) return true;
  }
  return false;
}

struct Item {
  bool is_if = false;
  std::vector<Item> then_items;
  std::vector<Item> else_items;
};

using Shape = std::vector<Item>;

std::vector<Shape> shapes_upto(std::size_t n, std::size_t depth);

std::vector<Item> items(std::size_t size, std::size_t depth) {
  std::vector<Item> out;
  if (size == 1) out.push_back(Item{});
  if (depth == 0) return out;
  for (std::size_t a = size + 1; a-- > 0;) {
    for (const auto& t : shapes_upto(a, depth - 1)) {
      for (const auto& e : shapes_upto(size - a, depth - 1)) out.push_back(Item{true, t, e});
    }
  }
  return out;
}

std::vector<Shape> shapes_upto(std::size_t n, std::size_t depth) {
  if (n == 0) return {Shape{}};
  std::vector<Shape> out;
  for (std::size_t s = 1; s <= n; ++s) {
    for (const auto& first : items(s, depth)) {
      for (const auto& rest : shapes_upto(n - s, depth)) {
        Shape sh{first};
        sh.insert(sh.end(), rest.begin(), rest.end());
        out.push_back(std::move(sh));
      }
    }
  }
  return out;
}

std::size_t depth_of(const Shape& s) {
  std::size_t d = 0;
  for (const auto& it : s) {
    if (it.is_if) d = std::max(d, 1 + std::max(depth_of(it.then_items), depth_of(it.else_items)));
  }
  return d;
}

// Slot kinds in preorder: true for a condition, false for an assertion.
void slots_of(const Shape& s, std::vector<bool>& out) {
  for (const auto& it : s) {
    out.push_back(it.is_if);
    if (it.is_if) {
      slots_of(it.then_items, out);
      slots_of(it.else_items, out);
    }
  }
}

struct Atom {
  Expr lhs;
  Expr rhs;
  bool tile = false;  // condition atom TileIs(lhs); rhs unused
  Bits truth;
};

struct Class {
  bool healthy = false;
  std::string mutant;
  Bits mask;
};

class Search {
 public:
  Search(const levels::Level& level, const std::vector<const MutantSpec*>& targets, const SolverBounds& bounds)
      : level_(level), bounds_(bounds) {
    for (const auto& look : levels::healthy_appearances(level.roster)) add_class(level.program, look, true, "");
    for (const auto* m : targets) {
      const auto program = apply_edits(level.program, m->edits, level.schema);
      for (const auto& look : levels::mutant_appearances(level.roster, m->id)) add_class(program, look, false, m->id);
    }
    const std::size_t words = (checkpoints_.size() + 63) / 64;
    for (auto& c : classes_) c.mask.resize(words);
    for (std::size_t i = 0; i < checkpoints_.size(); ++i) {
      classes_[checkpoints_[i].cls].mask[i / 64] |= std::uint64_t{1} << (i % 64);
    }
    all_ = Bits(words);
    for (std::size_t i = 0; i < checkpoints_.size(); ++i) all_[i / 64] |= std::uint64_t{1} << (i % 64);
    build_atoms();
    if (level.kind == LevelKind::base) {
      for (std::size_t i = 1; i + 1 < level.board.path.size(); ++i) {
        Bits m(words);
        for (std::size_t k = 0; k < checkpoints_.size(); ++k) {
          if (checkpoints_[k].position == i) m[k / 64] |= std::uint64_t{1} << (k % 64);
        }
        tiles_.push_back(i);
        tile_masks_.push_back(std::move(m));
      }
    }
  }

  std::optional<engine::TestSetup> run() {
    for (std::size_t n = 0; n <= bounds_.max_assertions; ++n) {
      for (std::size_t d = 0; d <= bounds_.max_if_depth; ++d) {
        if (n == 0 && d > 0) continue;
        auto found = level_.kind == LevelKind::loop ? run_loop(n, d) : run_base(n, d);
        if (found) return found;
      }
    }
    return std::nullopt;
  }

 private:
  struct Point {
    std::size_t cls;
    std::size_t position;
    CritterState state;
    std::optional<Terrain> tile;
  };

  void add_class(const Program& program, const levels::AttrMap& look, bool healthy, const std::string& id) {
    const auto trace = trace_critter(level_, program, levels::appearance_state(level_.schema, look));
    const std::size_t cls = classes_.size();
    classes_.push_back(Class{healthy, id, {}});
    if (healthy) healthy_laps_ = std::max(healthy_laps_, trace.laps);
    for (const auto& cp : trace.checkpoints) {
      checkpoints_.push_back(Point{cls, cp.position, cp.state, cp.tile});
      if (!healthy) continue;
      for (const auto& [name, v] : cp.state.attrs) {
        if (const auto* c = std::get_if<Count>(&v)) max_count_ = std::max(max_count_, c->n);
      }
    }
  }

  Bits truth_of(const Expr& e) const {
    const Interpreter interp(level_.schema);
    Bits out(all_.size());
    for (std::size_t i = 0; i < checkpoints_.size(); ++i) {
      bool t = false;
      try {
        t = std::get<Truth>(interp.eval(e, checkpoints_[i].state, checkpoints_[i].tile)).b;
      } catch (const EvalError&) {
        t = false;
      }
      if (t) out[i / 64] |= std::uint64_t{1} << (i % 64);
    }
    return out;
  }

  void build_atoms() {
    std::uint64_t m = std::max(max_count_, healthy_laps_);
    for_each_node(level_.program, [&](const AstPath&, const BehaviorNode& n) {
      if (const auto* e = std::get_if<Expr>(&n)) {
        if (const auto* lit = std::get_if<Lit>(&e->node)) {
          if (const auto* c = std::get_if<Count>(&lit->value)) m = std::max(m, c->n);
        }
      }
    });
    const auto& schema = level_.schema;
    const auto names = schema.ordered_attrs();
    for (const auto& lhs : names) {
      const auto type = *schema.type_of(lhs);
      std::vector<Expr> rhs;
      for (const auto& other : names) {
        if (other != lhs && schema.type_of(other) == type) rhs.push_back(dsl::attr(other));
      }
      if (type == StaticType::color) {
        for (auto c : schema.color(lhs)->palette) rhs.push_back(dsl::lit(c));
      } else {
        for (std::uint64_t v = 0; v <= m + 1; ++v) rhs.push_back(dsl::lit(v));  // m + 1 witnesses an extra lap
      }
      for (auto& r : rhs) {
        Atom a{dsl::attr(lhs), r, false, {}};
        a.truth = truth_of(dsl::eq(a.lhs, a.rhs));
        asserts_.push_back(std::move(a));
      }
    }
    if (level_.kind == LevelKind::base) {
      for (auto t : kAllTerrains) {
        if (!walkable(t)) continue;
        Atom a{dsl::tile_is(t), dsl::tile_is(t), true, {}};
        a.truth = truth_of(a.lhs);
        conds_.push_back(std::move(a));
      }
    }
    conds_.insert(conds_.end(), asserts_.begin(), asserts_.end());
  }

  Bits fails(const Shape& s, Bits active, const std::vector<std::size_t>& assign, std::size_t& cursor) const {
    Bits out(all_.size());
    for (const auto& it : s) {
      Bits f;
      if (!it.is_if) {
        f = and_not(active, asserts_[assign[cursor++]].truth);
      } else {
        const auto& c = conds_[assign[cursor++]].truth;
        f = fails(it.then_items, active & c, assign, cursor);
        or_into(f, fails(it.else_items, and_not(active, c), assign, cursor));
      }
      or_into(out, f);
      active = and_not(active, f);
    }
    return out;
  }

  bool adequate(const Bits& failed) const {
    for (const auto& c : classes_) {
      if (c.healthy == intersects(failed, c.mask)) return false;
    }
    return true;
  }

  void charge() {
    if (++evaluated_ > bounds_.node_budget) {
      throw BudgetExceeded("solver evaluated more than " + std::to_string(bounds_.node_budget) + " candidate tests");
    }
  }

  // Advances an odometer over `kinds`; false once exhausted.
  bool advance(std::vector<std::size_t>& assign, const std::vector<bool>& kinds) const {
    for (std::size_t i = assign.size(); i-- > 0;) {
      const auto limit = kinds[i] ? conds_.size() : asserts_.size();
      if (++assign[i] < limit) return true;
      assign[i] = 0;
    }
    return false;
  }

  TestBlock build(const Shape& s, const std::vector<std::size_t>& assign, std::size_t& cursor) const {
    TestBlock out;
    for (const auto& it : s) {
      if (!it.is_if) {
        const auto& a = asserts_[assign[cursor++]];
        out.push_back(dsl::assert_eq(a.lhs, a.rhs));
        continue;
      }
      const auto& c = conds_[assign[cursor++]];
      Expr cond = c.tile ? c.lhs : dsl::eq(c.lhs, c.rhs);
      auto then_block = build(it.then_items, assign, cursor);
      auto else_block = build(it.else_items, assign, cursor);
      out.push_back(dsl::if_test(std::move(cond), std::move(then_block), std::move(else_block)));
    }
    return out;
  }

  std::optional<engine::TestSetup> run_loop(std::size_t n, std::size_t d) {
    if (level_.board.landmarks.signposts.empty()) return std::nullopt;
    for (const auto& shape : shapes_upto(n, d)) {
      if (depth_of(shape) != d) continue;
      std::vector<bool> kinds;
      slots_of(shape, kinds);
      if ((!kinds.empty() && asserts_.empty())) continue;
      std::vector<std::size_t> assign(kinds.size(), 0);
      do {
        charge();
        std::size_t cursor = 0;
        if (adequate(fails(shape, all_, assign, cursor))) {
          cursor = 0;
          engine::TestSetup setup;
          setup.signposts.push_back({level_.board.landmarks.signposts.front().id, build(shape, assign, cursor)});
          return setup;
        }
      } while (advance(assign, kinds));
    }
    return std::nullopt;
  }

  std::optional<engine::TestSetup> run_base(std::size_t n, std::size_t d) {
    if (n == 0) {
      charge();
      if (adequate(Bits(all_.size()))) return engine::TestSetup{};
      return std::nullopt;
    }
    for (std::size_t p = 1; p <= std::min(n, tiles_.size()); ++p) {
      for (const auto& comp : compositions(n, p)) {
        if (auto found = try_composition(comp, d)) return found;
      }
    }
    return std::nullopt;
  }

  // Ordered splits of n into p positive parts, lexicographic.
  static std::vector<std::vector<std::size_t>> compositions(std::size_t n, std::size_t p) {
    if (p == 1) return {{n}};
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t first = 1; first + (p - 1) <= n; ++first) {
      for (auto rest : compositions(n - first, p - 1)) {
        rest.insert(rest.begin(), first);
        out.push_back(std::move(rest));
      }
    }
    return out;
  }

  std::optional<engine::TestSetup> try_composition(const std::vector<std::size_t>& comp, std::size_t d) {
    const auto p = comp.size();
    std::vector<std::vector<Shape>> options(p);
    for (std::size_t i = 0; i < p; ++i) options[i] = shapes_upto(comp[i], d);
    std::vector<std::size_t> pick(p, 0);
    while (true) {
      std::size_t depth = 0;
      for (std::size_t i = 0; i < p; ++i) depth = std::max(depth, depth_of(options[i][pick[i]]));
      if (depth == d) {
        if (auto found = try_shapes(options, pick)) return found;
      }
      std::size_t i = p;
      while (i-- > 0) {
        if (++pick[i] < options[i].size()) break;
        pick[i] = 0;
      }
      if (i == static_cast<std::size_t>(-1)) break;
    }
    return std::nullopt;
  }

  std::optional<engine::TestSetup> try_shapes(const std::vector<std::vector<Shape>>& options,
                                              const std::vector<std::size_t>& pick) {
    const auto p = pick.size();
    std::vector<const Shape*> shapes(p);
    std::vector<bool> kinds;
    for (std::size_t i = 0; i < p; ++i) {
      shapes[i] = &options[i][pick[i]];
      slots_of(*shapes[i], kinds);
    }
    if (tiles_.size() < p) return std::nullopt;
    std::vector<std::size_t> at(p);
    for (std::size_t i = 0; i < p; ++i) at[i] = i;
    while (true) {
      std::vector<std::size_t> assign(kinds.size(), 0);
      do {
        charge();
        Bits failed(all_.size());
        std::size_t cursor = 0;
        for (std::size_t i = 0; i < p; ++i) or_into(failed, fails(*shapes[i], tile_masks_[at[i]], assign, cursor));
        if (adequate(failed)) {
          engine::TestSetup setup;
          cursor = 0;
          for (std::size_t i = 0; i < p; ++i) {
            setup.portals.push_back({level_.board.path[tiles_[at[i]]], build(*shapes[i], assign, cursor)});
          }
          return setup;
        }
      } while (advance(assign, kinds));
      // next combination of tile positions
      std::size_t i = p;
      while (i-- > 0) {
        if (at[i] < tiles_.size() - p + i) break;
      }
      if (i == static_cast<std::size_t>(-1)) break;
      ++at[i];
      for (std::size_t k = i + 1; k < p; ++k) at[k] = at[k - 1] + 1;
    }
    return std::nullopt;
  }

  const levels::Level& level_;
  SolverBounds bounds_;
  std::vector<Class> classes_;
  std::vector<Point> checkpoints_;
  std::vector<Atom> asserts_;
  std::vector<Atom> conds_;
  std::vector<std::size_t> tiles_;
  std::vector<Bits> tile_masks_;
  Bits all_;
  std::uint64_t max_count_ = 0;
  std::uint64_t healthy_laps_ = 0;
  std::uint64_t evaluated_ = 0;
};

}  // namespace

std::optional<engine::TestSetup> solve_min_test(const levels::Level& level, const SolverBounds& bounds) {
  std::vector<const MutantSpec*> targets;
  for (const auto& m : level.mutants) targets.push_back(&m);
  return Search(level, targets, bounds).run();
}

std::optional<engine::TestSetup> find_killing_test(const levels::Level& level, const MutantSpec& mutant,
                                                   const SolverBounds& bounds) {
  return Search(level, {&mutant}, bounds).run();
}

}  // namespace critters::mutation
