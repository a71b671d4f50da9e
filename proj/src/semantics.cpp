#include "fmcorr/semantics.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

namespace fmcorr {

namespace {

WorldSet prop_value(const Valuation& v, const Identifier& p) {
  auto it = v.props.find(p);
  if (it == v.props.end()) throw UnboundSymbol("no value for propositional variable '" + p + "'");
  return it->second;
}

World nominal_world(const Valuation& v, const Identifier& i) {
  auto it = v.noms.find(i);
  if (it == v.noms.end()) throw UnboundSymbol("no world for nominal '" + i + "'");
  return it->second;
}

}  // namespace

bool satisfies(const FMFrame& f, const Valuation& v, World w, const Formula& phi) {
  auto forall_up1 = [&](World from, auto&& pred) {
    bool ok = true;
    f.up1(from).for_each([&](World x) { ok = ok && pred(x); });
    return ok;
  };
  auto exists_in = [&](WorldSet s, auto&& pred) {
    bool found = false;
    s.for_each([&](World x) { found = found || pred(x); });
    return found;
  };
  switch (phi.kind()) {
    case Kind::Var:
      return prop_value(v, phi.name()).contains(w);
    case Kind::Bot:
      return false;
    case Kind::Top:
      return true;
    case Kind::And:
      return satisfies(f, v, w, phi.left()) && satisfies(f, v, w, phi.right());
    case Kind::Or:
      return forall_up1(w, [&](World a) {
        return exists_in(f.up2(a), [&](World u) {
          return satisfies(f, v, u, phi.left()) || satisfies(f, v, u, phi.right());
        });
      });
    case Kind::Implies:
      return forall_up1(w, [&](World a) {
        return !satisfies(f, v, a, phi.left()) || satisfies(f, v, a, phi.right());
      });
    case Kind::Box: {
      bool ok = true;
      f.image(w).for_each([&](World a) { ok = ok && satisfies(f, v, a, phi.child()); });
      return ok;
    }
    case Kind::Nominal: {
      const World i = nominal_world(v, phi.name());
      return forall_up1(w, [&](World a) {
        return exists_in(f.up2(a), [&](World u) { return f.leq1().holds(i, u); });
      });
    }
    case Kind::BlackDiamond:
      return forall_up1(w, [&](World a) {
        return exists_in(f.up2(a), [&](World u) {
          return exists_in(f.down1(u), [&](World t) {
            return exists_in(f.preimage(t), [&](World s) { return satisfies(f, v, s, phi.child()); });
          });
        });
      });
  }
  return false;
}

WorldSet truth_set(const FMFrame& f, const Valuation& v, const Formula& phi) {
  WorldSet out;
  for (World w = 0; w < f.size(); ++w)
    if (satisfies(f, v, w, phi)) out = out.with(w);
  return out;
}

WorldSet denotation(const ROAlgebra& alg, const Valuation& v, const Formula& phi) {
  switch (phi.kind()) {
    case Kind::Var: return prop_value(v, phi.name());
    case Kind::Nominal: return alg.nominal(nominal_world(v, phi.name()));
    case Kind::Bot: return alg.bottom();
    case Kind::Top: return alg.top();
    case Kind::And: return alg.meet(denotation(alg, v, phi.left()), denotation(alg, v, phi.right()));
    case Kind::Or: return alg.join(denotation(alg, v, phi.left()), denotation(alg, v, phi.right()));
    case Kind::Implies:
      return alg.implies(denotation(alg, v, phi.left()), denotation(alg, v, phi.right()));
    case Kind::Box: return alg.box(denotation(alg, v, phi.child()));
    case Kind::BlackDiamond: return alg.diamond(denotation(alg, v, phi.child()));
  }
  return {};
}

bool holds(const ROAlgebra& alg, const Valuation& v, const Inequality& ineq) {
  return denotation(alg, v, ineq.lhs).subset_of(denotation(alg, v, ineq.rhs));
}

bool holds(const ROAlgebra& alg, const Valuation& v, const QuasiInequality& q) {
  for (const auto& a : q.antecedents)
    if (!holds(alg, v, a)) return true;
  return holds(alg, v, q.consequent);
}

// ---------------------------------------------------------------------------
// Signatures and compiled evaluation

namespace {

Signature from_sets(const IdentifierSet& vars, const IdentifierSet& noms) {
  return {{vars.begin(), vars.end()}, {noms.begin(), noms.end()}};
}

std::uint16_t index_in(const std::vector<Identifier>& v, const Identifier& name, const char* what) {
  auto it = std::find(v.begin(), v.end(), name);
  if (it == v.end()) throw UnboundSymbol(std::string("symbol '") + name + "' missing from signature (" + what + ")");
  return static_cast<std::uint16_t>(it - v.begin());
}

}  // namespace

Signature Signature::of(const Formula& f) { return from_sets(variables(f), nominals(f)); }
Signature Signature::of(const Inequality& i) { return from_sets(variables(i), nominals(i)); }
Signature Signature::of(const QuasiInequality& q) { return from_sets(variables(q), nominals(q)); }
Signature Signature::of(std::span<const QuasiInequality> qs) {
  IdentifierSet vars, noms;
  for (const auto& q : qs) {
    auto v = variables(q), n = nominals(q);
    vars.insert(v.begin(), v.end());
    noms.insert(n.begin(), n.end());
  }
  return from_sets(vars, noms);
}

void Signature::merge(const Signature& other) {
  IdentifierSet v(vars.begin(), vars.end()), n(noms.begin(), noms.end());
  v.insert(other.vars.begin(), other.vars.end());
  n.insert(other.noms.begin(), other.noms.end());
  *this = from_sets(v, n);
}

CompiledFormula::CompiledFormula(const Formula& f, const Signature& sig) {
  // Postfix order.
  std::function<void(const Formula&)> emit = [&](const Formula& g) {
    switch (g.kind()) {
      case Kind::Var: code_.push_back({Op::Var, index_in(sig.vars, g.name(), "variable")}); break;
      case Kind::Nominal: code_.push_back({Op::Nom, index_in(sig.noms, g.name(), "nominal")}); break;
      case Kind::Bot: code_.push_back({Op::Bot, 0}); break;
      case Kind::Top: code_.push_back({Op::Top, 0}); break;
      case Kind::Box:
      case Kind::BlackDiamond:
        emit(g.child());
        code_.push_back({g.is(Kind::Box) ? Op::Box : Op::Diamond, 0});
        break;
      case Kind::And:
      case Kind::Or:
      case Kind::Implies:
        emit(g.left());
        emit(g.right());
        code_.push_back({g.is(Kind::And) ? Op::And : g.is(Kind::Or) ? Op::Or : Op::Implies, 0});
        break;
    }
  };
  emit(f);
}

WorldSet CompiledFormula::eval(const ROAlgebra& alg, std::span<const WorldSet> props,
                               std::span<const World> noms) const {
  constexpr std::size_t kInline = 64;
  union Slots {
    Slots() {}
    WorldSet v[kInline];
  } slots;
  std::vector<WorldSet> heap_stack;
  WorldSet* stack = slots.v;
  if (code_.size() > kInline) {
    heap_stack.resize(code_.size());
    stack = heap_stack.data();
  }
  stack[0] = WorldSet{};
  std::size_t top = 0;
  for (const Instr& in : code_) {
    switch (in.op) {
      case Op::Var: stack[top++] = props[in.index]; break;
      case Op::Nom: stack[top++] = alg.nominal(noms[in.index]); break;
      case Op::Bot: stack[top++] = alg.bottom(); break;
      case Op::Top: stack[top++] = alg.top(); break;
      case Op::Box: stack[top - 1] = alg.box(stack[top - 1]); break;
      case Op::Diamond: stack[top - 1] = alg.diamond(stack[top - 1]); break;
      case Op::And: --top; stack[top - 1] = alg.meet(stack[top - 1], stack[top]); break;
      case Op::Or: --top; stack[top - 1] = alg.join(stack[top - 1], stack[top]); break;
      case Op::Implies: --top; stack[top - 1] = alg.implies(stack[top - 1], stack[top]); break;
    }
  }
  return stack[0];
}

CompiledQuasi::CompiledQuasi(const QuasiInequality& q, const Signature& sig)
    : lhs_(q.consequent.lhs, sig), rhs_(q.consequent.rhs, sig) {
  for (const auto& a : q.antecedents) antecedents_.emplace_back(CompiledFormula(a.lhs, sig), CompiledFormula(a.rhs, sig));
}

bool CompiledQuasi::holds(const ROAlgebra& alg, std::span<const WorldSet> props,
                          std::span<const World> noms) const {
  for (const auto& [l, r] : antecedents_)
    if (!l.eval(alg, props, noms).subset_of(r.eval(alg, props, noms))) return true;
  return lhs_.eval(alg, props, noms).subset_of(rhs_.eval(alg, props, noms));
}

std::uint64_t valuation_count(const ROAlgebra& alg, const Signature& sig) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 1;
  auto times = [&](std::uint64_t k) {
    if (k != 0 && total > kMax / k) total = kMax;
    else total *= k;
  };
  for (std::size_t i = 0; i < sig.vars.size(); ++i) times(alg.carrier().size());
  for (std::size_t i = 0; i < sig.noms.size(); ++i) times(static_cast<std::uint64_t>(alg.frame().size()));
  return total;
}

void check_budget(const ROAlgebra& alg, const Signature& sig, std::uint64_t budget) {
  const std::uint64_t count = valuation_count(alg, sig);
  if (count > budget) {
    throw BudgetExceeded("valuation space of " + std::to_string(count) + " exceeds budget of " +
                         std::to_string(budget));
  }
}

bool valid(const ROAlgebra& alg, const Formula& phi, std::uint64_t budget) {
  const Signature sig = Signature::of(phi);
  const CompiledFormula code(phi, sig);
  const WorldSet all = alg.top();
  return for_each_valuation(alg, sig, budget, [&](auto props, auto noms) {
    return code.eval(alg, props, noms) == all;
  });
}

bool valid(const ROAlgebra& alg, const Inequality& ineq, std::uint64_t budget) {
  return valid(alg, QuasiInequality{{}, ineq}, budget);
}

bool valid(const ROAlgebra& alg, const QuasiInequality& q, std::uint64_t budget) {
  const Signature sig = Signature::of(q);
  const CompiledQuasi code(q, sig);
  return for_each_valuation(alg, sig, budget, [&](auto props, auto noms) { return code.holds(alg, props, noms); });
}

// ---------------------------------------------------------------------------
// First-order evaluation

namespace {

class FOEvaluator {
 public:
  FOEvaluator(const FMFrame& frame, const FOEnv& env) : frame_(frame), env_(env) {}

  bool run(const FOFormula& phi) {
    prepare(phi);
    assign_.assign(slots_.size(), -1);
    for (const auto& [term, slot] : slots_) {
      auto it = env_.terms.find(term);
      if (it != env_.terms.end()) assign_[slot] = it->second;
    }
    for (int slot : info_.at(phi.identity()).free_slots) {
      if (assign_[slot] < 0) throw UnboundSymbol("unbound first-order symbol '" + slot_names_[slot] + "'");
    }
    return eval(phi);
  }

 private:
  struct NodeInfo {
    std::vector<int> free_slots;
    int slot = -1;   // atoms: first term; quantifiers: bound symbol
    int slot2 = -1;  // atoms: second term
    WorldSet pred;
    std::vector<std::int8_t> memo;
  };

  int slot_of(const FOTerm& t) {
    auto [it, inserted] = slots_.emplace(t, static_cast<int>(slots_.size()));
    if (inserted) slot_names_.push_back(t.name);
    return it->second;
  }

  // Returns the free slots of phi (sorted).
  const std::vector<int>& prepare(const FOFormula& phi) {
    if (auto it = info_.find(phi.identity()); it != info_.end()) return it->second.free_slots;
    NodeInfo info;
    std::vector<int> fv;
    if (phi.is_atom()) {
      info.slot = slot_of(phi.first());
      fv.push_back(info.slot);
      if (phi.is(FOKind::Pred)) {
        auto it = env_.predicates.find(phi.predicate());
        if (it == env_.predicates.end()) throw UnboundSymbol("no extension for predicate '" + phi.predicate() + "'");
        info.pred = it->second;
      } else {
        info.slot2 = slot_of(phi.second());
        fv.push_back(info.slot2);
      }
    } else if (phi.is_quantifier()) {
      info.slot = slot_of(phi.first());
      fv = prepare(phi.body());
      std::erase(fv, info.slot);
    } else {
      fv = prepare(phi.left());
      const auto& r = prepare(phi.right());
      fv.insert(fv.end(), r.begin(), r.end());
    }
    std::sort(fv.begin(), fv.end());
    fv.erase(std::unique(fv.begin(), fv.end()), fv.end());
    info.free_slots = std::move(fv);
    std::uint64_t cells = 1;
    for (std::size_t k = 0; k < info.free_slots.size() && cells <= kMaxMemo; ++k) cells *= frame_.size();
    if (!phi.is_atom() && cells <= kMaxMemo) info.memo.assign(cells, -1);
    return info_.emplace(phi.identity(), std::move(info)).first->second.free_slots;
  }

  bool eval(const FOFormula& phi) {
    NodeInfo& info = info_.at(phi.identity());
    std::size_t key = 0;
    if (!info.memo.empty()) {
      for (int s : info.free_slots) key = key * frame_.size() + static_cast<std::size_t>(assign_[s]);
      if (info.memo[key] >= 0) return info.memo[key] != 0;
    }
    bool result = false;
    switch (phi.kind()) {
      case FOKind::Equal: result = assign_[info.slot] == assign_[info.slot2]; break;
      case FOKind::NotEqual: result = assign_[info.slot] != assign_[info.slot2]; break;
      case FOKind::Rel: {
        const World a = assign_[info.slot], b = assign_[info.slot2];
        switch (phi.relation()) {
          case RelSym::Leq1: result = frame_.leq1().holds(a, b); break;
          case RelSym::Leq2: result = frame_.leq2().holds(a, b); break;
          case RelSym::Access: result = frame_.access().holds(a, b); break;
        }
        break;
      }
      case FOKind::Pred: result = info.pred.contains(assign_[info.slot]); break;
      case FOKind::Conj: result = eval(phi.left()) && eval(phi.right()); break;
      case FOKind::Disj: result = eval(phi.left()) || eval(phi.right()); break;
      case FOKind::Impl: result = !eval(phi.left()) || eval(phi.right()); break;
      case FOKind::Forall:
      case FOKind::Exists: {
        const bool universal = phi.is(FOKind::Forall);
        const World saved = assign_[info.slot];
        result = universal;
        for (World w = 0; w < frame_.size(); ++w) {
          assign_[info.slot] = w;
          if (eval(phi.body()) != universal) {
            result = !universal;
            break;
          }
        }
        assign_[info.slot] = saved;
        break;
      }
    }
    if (!info.memo.empty()) info.memo[key] = result ? 1 : 0;
    return result;
  }

  static constexpr std::uint64_t kMaxMemo = 1U << 16;

  const FMFrame& frame_;
  const FOEnv& env_;
  std::map<FOTerm, int> slots_;
  std::vector<std::string> slot_names_;
  std::vector<World> assign_;
  std::unordered_map<const void*, NodeInfo> info_;
};

}  // namespace

bool eval_fo(const FMFrame& f, const FOEnv& env, const FOFormula& phi) { return FOEvaluator(f, env).run(phi); }

}  // namespace fmcorr
