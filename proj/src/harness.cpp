#include "fmcorr/harness.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <exception>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "fmcorr/fo.hpp"
#include "fmcorr/inductive.hpp"
#include "fmcorr/semantics.hpp"
#include "fmcorr/syntax.hpp"
#include "fmcorr/translation.hpp"

namespace fmcorr {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void check_size(int n) {
  if (n < 1 || n > kMaxEnumerationSize)
    throw std::invalid_argument("frame size must be between 1 and " + std::to_string(kMaxEnumerationSize));
}

// Bit a*n+b encodes the pair (a, b).
std::uint32_t to_mask(const Relation& r) {
  const int n = r.size();
  std::uint32_t m = 0;
  for (World a = 0; a < n; ++a) m |= r.successors(a).bits() << (a * n);
  return m;
}

Relation from_mask(int n, std::uint32_t m) {
  Relation r(n);
  const std::uint32_t row = (std::uint32_t{1} << n) - 1;
  for (World a = 0; a < n; ++a) {
    const std::uint32_t succ = (m >> (a * n)) & row;
    WorldSet(succ).for_each([&](World b) { r.add(a, b); });
  }
  return r;
}

std::vector<Relation> compute_partial_orders(int n) {
  std::vector<std::pair<World, World>> off;
  for (World a = 0; a < n; ++a)
    for (World b = 0; b < n; ++b)
      if (a != b) off.emplace_back(a, b);
  std::vector<std::pair<std::uint32_t, Relation>> found;
  for (std::uint32_t m = 0; m < (std::uint32_t{1} << off.size()); ++m) {
    Relation r = Relation::identity(n);
    for (std::size_t k = 0; k < off.size(); ++k)
      if ((m >> k) & 1U) r.add(off[k].first, off[k].second);
    if (r.is_antisymmetric() && r.is_transitive()) found.emplace_back(to_mask(r), std::move(r));
  }
  std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<Relation> out;
  for (auto& [m, r] : found) out.push_back(std::move(r));
  return out;
}

const std::vector<Relation>& cached_orders(int n) {
  static std::array<std::once_flag, kMaxEnumerationSize + 1> once;
  static std::array<std::vector<Relation>, kMaxEnumerationSize + 1> cache;
  std::call_once(once[n], [n] { cache[n] = compute_partial_orders(n); });
  return cache[n];
}

// Permutations acting on relation masks.
class Relabeler {
 public:
  explicit Relabeler(int n) : n_(n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    while (std::next_permutation(p.begin(), p.end())) perms_.push_back(p);
  }

  std::uint32_t apply(const std::vector<int>& p, std::uint32_t m) const {
    std::uint32_t out = 0;
    for (; m; m &= m - 1) {
      const int bit = std::countr_zero(m);
      out |= std::uint32_t{1} << (p[bit / n_] * n_ + p[bit % n_]);
    }
    return out;
  }

  // True iff no relabeling gives a smaller (leq1, leq2, R) code.
  bool is_canonical(std::uint32_t l1, std::uint32_t l2, std::uint32_t r) const {
    const auto mine = std::make_tuple(l1, l2, r);
    for (const auto& p : perms_)
      if (std::make_tuple(apply(p, l1), apply(p, l2), apply(p, r)) < mine) return false;
    return true;
  }

 private:
  int n_;
  std::vector<std::vector<int>> perms_;
};

// fn(leq1, leq2, R mask) for every admissible labeled frame.
template <class Fn>
void enumerate_core(int n, bool canonical, Fn&& fn) {
  check_size(n);
  const auto& orders = cached_orders(n);
  const Relabeler relabel(n);
  const std::uint32_t row_mask = (std::uint32_t{1} << n) - 1;
  const std::uint64_t r_count = std::uint64_t{1} << (n * n);
  std::vector<std::uint32_t> rows(n);
  for (const auto& l1 : orders) {
    for (const auto& l2 : orders) {
      if (!l2.subset_of(l1)) continue;
      const ROAlgebra base(FMFrame(l1, l2, Relation(n)));
      const auto& carrier = base.carrier();
      const std::uint32_t m1 = to_mask(l1), m2 = to_mask(l2);
      for (std::uint64_t rm = 0; rm < r_count; ++rm) {
        for (int w = 0; w < n; ++w) rows[w] = static_cast<std::uint32_t>(rm >> (w * n)) & row_mask;
        bool admissible = true;
        for (WorldSet y : carrier) {
          std::uint32_t box = 0;
          for (int w = 0; w < n; ++w)
            if ((rows[w] & ~y.bits()) == 0) box |= std::uint32_t{1} << w;
          if (!base.contains(WorldSet(box))) {
            admissible = false;
            break;
          }
        }
        if (!admissible) continue;
        if (canonical && !relabel.is_canonical(m1, m2, static_cast<std::uint32_t>(rm))) continue;
        fn(l1, l2, static_cast<std::uint32_t>(rm));
      }
    }
  }
}

template <class T, class Fn>
std::vector<T> map_indices(std::size_t count, Exec exec, Fn&& fn) {
  std::vector<T> out(count);
  if (exec == Exec::Serial) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::exception_ptr> errors(count);
  const auto total = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t i = 0; i < total; ++i) {
    try {
      out[i] = fn(static_cast<std::size_t>(i));
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

template <class T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& v) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

bool chance(std::mt19937_64& rng, double p) { return std::bernoulli_distribution(p)(rng); }

}  // namespace

std::vector<Relation> partial_orders(int n) {
  check_size(n);
  return cached_orders(n);
}

void for_each_frame(int n, const std::function<void(const FMFrame&)>& fn, bool canonical) {
  enumerate_core(n, canonical, [&](const Relation& l1, const Relation& l2, std::uint32_t r) {
    fn(FMFrame(l1, l2, from_mask(n, r)));
  });
}

std::vector<FMFrame> enumerate_frames(int n, bool canonical) {
  std::vector<FMFrame> out;
  for_each_frame(n, [&](const FMFrame& f) { out.push_back(f); }, canonical);
  return out;
}

std::vector<FMFrame> frames_up_to(int max_n, bool canonical) {
  std::vector<FMFrame> out;
  for (int n = 1; n <= max_n; ++n) {
    auto part = enumerate_frames(n, canonical);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::uint64_t count_frames(int n, bool canonical) {
  std::uint64_t count = 0;
  enumerate_core(n, canonical, [&](const Relation&, const Relation&, std::uint32_t) { ++count; });
  return count;
}

FMFrame sample_frame(int n, std::mt19937_64& rng) {
  check_size(n);
  const auto& orders = cached_orders(n);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < orders.size(); ++a)
    for (std::size_t b = 0; b < orders.size(); ++b)
      if (orders[b].subset_of(orders[a])) pairs.emplace_back(a, b);
  const auto [a, b] = pick(rng, pairs);
  std::uniform_int_distribution<std::uint32_t> bits(0, static_cast<std::uint32_t>((std::uint64_t{1} << (n * n)) - 1));
  for (;;) {
    FMFrame f(orders[a], orders[b], from_mask(n, bits(rng)));
    if (check_admissible(f)) return f;
  }
}

// ---------------------------------------------------------------------------
// Corpora

std::vector<Formula> fixed_corpus() {
  std::vector<Formula> out;
  for (const char* s : {"[]p -> p", "[]p -> [][]p", "p -> []p", "([]q & (q -> []p)) -> []p", "p -> p"})
    out.push_back(parse_formula(s));
  return out;
}

namespace {

class InductiveSampler {
 public:
  InductiveSampler(std::mt19937_64& rng, std::vector<Identifier> ascending)
      : rng_(rng), vars_(std::move(ascending)), order_(DependenceOrder::chain(vars_)) {}

  Formula ant(int d) {
    if (d > 0 && chance(rng_, 0.35)) {
      Formula a = ant(d - 1), b = ant(d - 1);
      return chance(rng_, 0.65) ? Formula::conj(a, b) : Formula::disj(a, b);
    }
    return pia(pick(rng_, vars_), d);
  }

  Formula suc(int d) {
    const double roll = std::uniform_real_distribution<double>(0, 1)(rng_);
    if (d == 0 || roll < 0.3) return pos(IdentifierSet(vars_.begin(), vars_.end()), d);
    if (roll < 0.55) {
      const Identifier& q = pick(rng_, vars_);
      return Formula::implies(pia(q, d - 1), suc(d - 1));
    }
    if (roll < 0.8) return Formula::box(suc(d - 1));
    return Formula::conj(suc(d - 1), suc(d - 1));
  }

 private:
  Formula pia(const Identifier& p, int d) {
    const double roll = std::uniform_real_distribution<double>(0, 1)(rng_);
    if (d == 0 || roll < 0.3) {
      if (chance(rng_, 0.9)) return Formula::var(p);
      return chance(rng_, 0.5) ? Formula::top() : Formula::bot();
    }
    if (roll < 0.65) return Formula::box(pia(p, d - 1));
    return Formula::implies(pos(order_.below(p), d - 1), pia(p, d - 1));
  }

  Formula pos(const IdentifierSet& allowed, int d) {
    if (d > 0 && chance(rng_, 0.3)) {
      const int op = std::uniform_int_distribution<int>(0, 2)(rng_);
      if (op == 0) return Formula::box(pos(allowed, d - 1));
      Formula a = pos(allowed, d - 1), b = pos(allowed, d - 1);
      return op == 1 ? Formula::conj(a, b) : Formula::disj(a, b);
    }
    if (!allowed.empty() && chance(rng_, 0.85)) {
      std::vector<Identifier> v(allowed.begin(), allowed.end());
      return Formula::var(pick(rng_, v));
    }
    return chance(rng_, 0.5) ? Formula::top() : Formula::bot();
  }

  std::mt19937_64& rng_;
  std::vector<Identifier> vars_;
  DependenceOrder order_;
};

}  // namespace

std::vector<Formula> generate_inductive(const CorpusOptions& options) {
  static const std::vector<Identifier> kPool = {"p", "q", "r", "s", "t", "u", "v", "w", "x"};
  const int max_vars = std::clamp(options.max_vars, 1, static_cast<int>(kPool.size()));
  std::mt19937_64 rng(options.seed);
  std::vector<Formula> out;
  std::set<Formula> seen;
  const long attempts = 10000L * std::max(options.count, 1);
  for (long k = 0; k < attempts && static_cast<int>(out.size()) < options.count; ++k) {
    const int nv = std::uniform_int_distribution<int>(1, max_vars)(rng);
    std::vector<Identifier> vars(kPool.begin(), kPool.begin() + nv);
    std::shuffle(vars.begin(), vars.end(), rng);
    InductiveSampler sampler(rng, vars);
    const int d = std::max(options.max_depth - 1, 0);
    Formula f = Formula::implies(sampler.ant(d), sampler.suc(d));
    if (depth(f) > options.max_depth || depth(f) < 2) continue;
    if (seen.insert(f).second) out.push_back(f);
  }
  return out;
}

std::vector<Formula> full_corpus(const CorpusOptions& options) {
  std::vector<Formula> out = fixed_corpus();
  std::set<Formula> seen(out.begin(), out.end());
  for (auto& f : generate_inductive(options))
    if (seen.insert(f).second) out.push_back(f);
  return out;
}

Formula random_formula(std::mt19937_64& rng, int d, const std::vector<Identifier>& vars,
                       const std::vector<Identifier>& noms, bool expanded) {
  if (d <= 0 || chance(rng, 0.25)) {
    const double roll = std::uniform_real_distribution<double>(0, 1)(rng);
    if (expanded && !noms.empty() && roll < 0.3) return Formula::nominal(pick(rng, noms));
    if (roll < 0.85 && !vars.empty()) return Formula::var(pick(rng, vars));
    return roll < 0.93 ? Formula::top() : Formula::bot();
  }
  const int op = std::uniform_int_distribution<int>(0, expanded ? 5 : 4)(rng);
  auto sub = [&] { return random_formula(rng, d - 1, vars, noms, expanded); };
  switch (op) {
    case 0: { Formula a = sub(); return Formula::conj(a, sub()); }
    case 1: { Formula a = sub(); return Formula::disj(a, sub()); }
    case 2: { Formula a = sub(); return Formula::implies(a, sub()); }
    case 3:
    case 4: return Formula::box(sub());
    default: return Formula::black_diamond(sub());
  }
}

// ---------------------------------------------------------------------------
// Reports

void Tally::add(bool ok, const std::function<std::string()>& describe) {
  ++checks;
  if (ok) return;
  if (violations++ == 0) first_violation = describe();
}

void Tally::merge(const Tally& other) {
  checks += other.checks;
  if (other.violations && violations == 0) first_violation = other.first_violation;
  violations += other.violations;
}

std::uint64_t SuiteReport::violations() const {
  std::uint64_t v = 0;
  for (const auto& t : tallies) v += t.violations;
  return v;
}

bool SuiteReport::ok() const { return violations() == 0 && skipped == 0; }

nlohmann::json SuiteReport::to_json() const {
  nlohmann::json j;
  j["suite"] = suite;
  j["ok"] = ok();
  j["frames"] = frames;
  j["skipped"] = skipped;
  j["seconds"] = seconds;
  j["checks"] = nlohmann::json::array();
  for (const auto& t : tallies) {
    nlohmann::json c{{"name", t.name}, {"checks", t.checks}, {"violations", t.violations}};
    if (t.violations) c["first_violation"] = t.first_violation;
    j["checks"].push_back(c);
  }
  return j;
}

std::string SuiteReport::to_text() const {
  std::ostringstream os;
  os << suite << ": " << (ok() ? "PASS" : "FAIL") << " (" << frames << " frames";
  if (skipped) os << ", " << skipped << " skipped over budget";
  os << ", " << seconds << " s)\n";
  for (const auto& t : tallies) {
    os << "  " << t.name << ": " << t.checks << " checks, " << t.violations << " violations\n";
    if (t.violations) os << "    first: " << t.first_violation << "\n";
  }
  return os.str();
}

nlohmann::json CrosscheckReport::to_json() const {
  nlohmann::json j;
  j["formula"] = formula;
  j["systems"] = systems;
  j["correspondent"] = correspondent;
  j["frames_per_size"] = frames_per_size;
  j["valid_frames"] = valid_frames;
  j["skipped"] = skipped;
  j["seconds"] = seconds;
  j["ok"] = ok();
  j["mismatches"] = nlohmann::json::array();
  for (const auto& m : mismatches)
    j["mismatches"].push_back(
        {{"frame_index", m.frame_index}, {"frame", m.frame}, {"modal", m.modal}, {"first_order", m.first_order}});
  return j;
}

std::string CrosscheckReport::to_text() const {
  std::ostringstream os;
  os << "formula: " << formula << "\n";
  for (const auto& s : systems) os << "system: " << s << "\n";
  os << "correspondent: " << correspondent << "\n";
  std::uint64_t total = 0;
  if (!frames_per_size.empty()) {
    os << "frames by size:";
    for (std::size_t n = 0; n < frames_per_size.size(); ++n) {
      os << " " << n + 1 << ":" << frames_per_size[n];
      total += frames_per_size[n];
    }
    os << "\n";
  }
  os << "valid on " << valid_frames << " frames";
  if (total) os << " of " << total;
  os << "\n";
  if (skipped) os << "skipped over budget: " << skipped << "\n";
  os << "mismatches: " << mismatches.size() << "\n";
  for (const auto& m : mismatches)
    os << "  frame #" << m.frame_index << " modal=" << m.modal << " fo=" << m.first_order << "\n" << m.frame << "\n";
  os << "time: " << seconds << " s\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Suites

CrosscheckReport crosscheck(const Formula& f, const std::vector<FMFrame>& frames, Exec exec, std::uint64_t budget) {
  const auto t0 = Clock::now();
  CrosscheckReport rep;
  rep.formula = print_formula(f);
  AlbaOptions opts;
  opts.record_trace = false;
  const AlbaOutput out = run_alba(f, opts);
  for (const auto& s : out.systems) rep.systems.push_back(print_quasi(s));
  const FOFormula sentence = correspondent(out.systems);
  rep.correspondent = print_fo(sentence);

  struct Verdict {
    bool modal = false, fo = false, skipped = false;
  };
  const FOEnv empty;
  auto verdicts = map_indices<Verdict>(frames.size(), exec, [&](std::size_t i) {
    Verdict v;
    const ROAlgebra alg(frames[i]);
    try {
      v.modal = valid(alg, f, budget);
    } catch (const BudgetExceeded&) {
      v.skipped = true;
      return v;
    }
    v.fo = eval_fo(frames[i], empty, sentence);
    return v;
  });
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    const Verdict& v = verdicts[i];
    if (v.skipped) {
      ++rep.skipped;
      continue;
    }
    if (v.modal) ++rep.valid_frames;
    if (v.modal != v.fo) rep.mismatches.push_back({i, frames[i].describe(), v.modal, v.fo});
  }
  rep.seconds = seconds_since(t0);
  return rep;
}

CrosscheckReport crosscheck(const Formula& f, int max_n, Exec exec, std::uint64_t budget) {
  const auto t0 = Clock::now();
  std::vector<FMFrame> frames;
  std::vector<std::uint64_t> sizes;
  for (int n = 1; n <= max_n; ++n) {
    auto part = enumerate_frames(n);
    sizes.push_back(part.size());
    frames.insert(frames.end(), part.begin(), part.end());
  }
  CrosscheckReport rep = crosscheck(f, frames, exec, budget);
  rep.frames_per_size = std::move(sizes);
  rep.seconds = seconds_since(t0);
  return rep;
}

SuiteReport success_suite(const std::vector<Formula>& corpus) {
  const auto t0 = Clock::now();
  SuiteReport rep;
  rep.suite = "success";
  Tally classify{"classify"}, alba{"alba"};
  for (const auto& f : corpus) {
    const std::string shown = print_formula(f);
    std::optional<DependenceOrder> order;
    try {
      order = classify_inductive(f);
    } catch (const std::exception&) {
    }
    classify.add(order.has_value(), [&] { return "not inductive: " + shown; });
    std::string error;
    bool ok = false;
    try {
      AlbaOptions opts;
      opts.record_trace = false;
      const auto out = run_alba(f, opts);
      ok = std::all_of(out.systems.begin(), out.systems.end(), [](const auto& s) { return is_pure(s); });
      if (!ok) error = "impure output";
    } catch (const std::exception& e) {
      error = e.what();
    }
    alba.add(ok, [&] { return shown + ": " + error; });
  }
  rep.tallies = {classify, alba};
  rep.seconds = seconds_since(t0);
  return rep;
}

namespace {

std::string show_set(const FMFrame& f, WorldSet y) {
  std::string s = "{";
  bool first = true;
  y.for_each([&](World w) {
    s += (first ? "" : ",") + f.name(w);
    first = false;
  });
  return s + "}";
}

Valuation make_valuation(const Signature& sig, std::span<const WorldSet> props, std::span<const World> noms) {
  Valuation v;
  for (std::size_t k = 0; k < sig.vars.size(); ++k) v.props[sig.vars[k]] = props[k];
  for (std::size_t k = 0; k < sig.noms.size(); ++k) v.noms[sig.noms[k]] = noms[k];
  return v;
}

}  // namespace

std::vector<Tally> algebra_checks(const ROAlgebra& alg, const std::vector<Formula>& formulas) {
  const FMFrame& f = alg.frame();
  const auto& carrier = alg.carrier();
  const WorldSet all = f.all();
  const std::uint32_t subsets = std::uint32_t{1} << f.size();
  auto where = [&] { return "\n" + f.describe(); };

  Tally admissible{"admissible"}, meet{"nucleus-meet"}, inflationary{"nucleus-inflationary"},
      idempotent{"nucleus-idempotent"}, top{"nucleus-top"}, density{"join-density"},
      closure_adj{"closure-adjunction"}, closure_least{"closure-least"}, residuation{"residuation"},
      box_adj{"box-adjunction"}, multiplicative{"box-multiplicative"}, clause{"clause-algebra"},
      nominal{"nominal-clause"}, in_carrier{"truth-set-in-carrier"};

  admissible.add(alg.admissible(), where);

  std::vector<WorldSet> upsets;
  for (std::uint32_t b = 0; b < subsets; ++b)
    if (upset1(f, WorldSet(b)) == WorldSet(b)) upsets.push_back(WorldSet(b));
  for (WorldSet u : upsets) {
    const WorldSet ju = nucleus12(f, u);
    inflationary.add(u.subset_of(ju), [&] { return "U=" + show_set(f, u) + where(); });
    idempotent.add(nucleus12(f, ju) == ju, [&] { return "U=" + show_set(f, u) + where(); });
    for (WorldSet v : upsets)
      meet.add(nucleus12(f, u & v) == (ju & nucleus12(f, v)),
               [&] { return "U=" + show_set(f, u) + " V=" + show_set(f, v) + where(); });
  }
  top.add(nucleus12(f, all) == all, where);

  for (WorldSet y : carrier) {
    WorldSet acc;
    y.for_each([&](World x) { acc |= alg.nominal(x); });
    density.add(nucleus12(f, acc) == y, [&] { return "Y=" + show_set(f, y) + where(); });
  }

  for (std::uint32_t b = 0; b < subsets; ++b) {
    const WorldSet a(b);
    const WorldSet ca = alg.closure(a);
    WorldSet meet_all = all;
    for (WorldSet z : carrier) {
      closure_adj.add(ca.subset_of(z) == a.subset_of(z),
                      [&] { return "A=" + show_set(f, a) + " Z=" + show_set(f, z) + where(); });
      if (a.subset_of(z)) meet_all &= z;
    }
    closure_least.add(ca == meet_all && alg.contains(ca), [&] { return "A=" + show_set(f, a) + where(); });
  }

  for (WorldSet y : carrier) {
    for (WorldSet z : carrier) {
      box_adj.add(alg.diamond(y).subset_of(z) == y.subset_of(alg.box(z)),
                  [&] { return "Y=" + show_set(f, y) + " Z=" + show_set(f, z) + where(); });
      for (WorldSet w : carrier)
        residuation.add((y & w).subset_of(z) == y.subset_of(alg.implies(w, z)), [&] {
          return "Y=" + show_set(f, y) + " W=" + show_set(f, w) + " Z=" + show_set(f, z) + where();
        });
    }
  }

  // Every subfamily when the carrier is small, otherwise a fixed stride through them.
  const std::size_t m = carrier.size();
  const std::uint64_t families = m >= 63 ? ~std::uint64_t{0} : std::uint64_t{1} << m;
  const std::uint64_t stride = families > (1U << 16) ? families / (1U << 16) : 1;
  for (std::uint64_t fam = 0; fam < families && fam / stride < (1U << 16); fam += stride) {
    WorldSet inter = all, boxes = all;
    for (std::size_t k = 0; k < m; ++k) {
      if (!((fam >> k) & 1U)) continue;
      inter &= carrier[k];
      boxes &= alg.box(carrier[k]);
    }
    multiplicative.add(alg.box(inter) == boxes, [&] { return "family mask " + std::to_string(fam) + where(); });
  }

  for (World i = 0; i < f.size(); ++i) {
    Valuation v;
    v.noms["i"] = i;
    const WorldSet expected = alg.nominal(i);
    for (World w = 0; w < f.size(); ++w)
      nominal.add(satisfies(f, v, w, Formula::nominal("i")) == expected.contains(w),
                  [&] { return "i=" + f.name(i) + " w=" + f.name(w) + where(); });
  }

  for (const auto& phi : formulas) {
    const Signature sig = Signature::of(phi);
    for_each_valuation(alg, sig, kDefaultValidityBudget, [&](auto props, auto noms) {
      const Valuation v = make_valuation(sig, props, noms);
      const WorldSet pointwise = truth_set(f, v, phi);
      clause.add(pointwise == denotation(alg, v, phi), [&] { return print_formula(phi) + where(); });
      in_carrier.add(alg.contains(pointwise), [&] { return print_formula(phi) + where(); });
      return true;
    });
  }

  return {admissible, meet, inflationary, idempotent, top, density, closure_adj, closure_least,
          residuation, box_adj, multiplicative, clause, nominal, in_carrier};
}

SuiteReport algebra_suite(const AlgebraOptions& options) {
  const auto t0 = Clock::now();
  std::vector<FMFrame> frames = frames_up_to(options.max_n);
  std::mt19937_64 rng(options.seed);
  for (int k = 0; k < options.samples; ++k) frames.push_back(sample_frame(options.sampled_size, rng));
  std::vector<Formula> formulas;
  for (int k = 0; k < options.formulas; ++k)
    formulas.push_back(random_formula(rng, 1 + k % 3, {"p", "q"}, {"i"}, k % 2 == 1));

  auto per_frame = map_indices<std::vector<Tally>>(frames.size(), options.exec, [&](std::size_t i) {
    return algebra_checks(ROAlgebra(frames[i]), formulas);
  });
  SuiteReport rep;
  rep.suite = "algebra";
  rep.frames = frames.size();
  for (const auto& ts : per_frame) {
    if (rep.tallies.empty()) {
      for (const auto& t : ts) rep.tallies.push_back({t.name});
    }
    for (std::size_t k = 0; k < ts.size(); ++k) rep.tallies[k].merge(ts[k]);
  }
  rep.seconds = seconds_since(t0);
  return rep;
}

SuiteReport adequacy_suite(const AdequacyOptions& options) {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(options.seed);
  const std::vector<Identifier> vars = {"p", "q", "r"}, noms = {"i", "j"};
  Tally pointwise{"formula"}, inequality{"inequality"}, quasi{"quasi-inequality"};
  SuiteReport rep;
  rep.suite = "adequacy";
  const FOTerm x = FOTerm::world("x");

  for (int k = 0; k < options.formulas; ++k) {
    const int d = std::uniform_int_distribution<int>(0, options.depth)(rng);
    const Formula phi = random_formula(rng, d, vars, noms, true);
    const Formula psi = random_formula(rng, std::uniform_int_distribution<int>(0, options.depth)(rng), vars, noms, true);
    const Formula chi = random_formula(rng, std::uniform_int_distribution<int>(0, options.depth)(rng), vars, noms, true);
    const Inequality ineq{phi, psi};
    const QuasiInequality q{{{psi, chi}}, {chi, phi}};
    const FOFormula st_phi = st(x, phi);
    const FOFormula st_ineq = st_inequality(ineq);
    const FOFormula st_q = st_quasi(q);

    for (int m = 0; m < options.models_per_formula; ++m) {
      const int n = std::uniform_int_distribution<int>(1, options.max_n)(rng);
      const FMFrame frame = sample_frame(n, rng);
      const ROAlgebra alg(frame);
      ++rep.frames;
      Valuation v;
      FOEnv env;
      for (const auto& p : vars) {
        v.props[p] = pick(rng, alg.carrier());
        env.predicates[predicate_name(p)] = v.props[p];
      }
      for (const auto& i : noms) {
        v.noms[i] = std::uniform_int_distribution<int>(0, n - 1)(rng);
        env.terms[FOTerm::nominal(i)] = v.noms[i];
      }
      auto where = [&] { return "\n" + frame.describe(); };
      for (World w = 0; w < n; ++w) {
        env.terms[x] = w;
        pointwise.add(satisfies(frame, v, w, phi) == eval_fo(frame, env, st_phi),
                      [&] { return print_formula(phi) + " at " + frame.name(w) + where(); });
      }
      env.terms.erase(x);
      const bool ineq_holds = truth_set(frame, v, phi).subset_of(truth_set(frame, v, psi));
      inequality.add(ineq_holds == eval_fo(frame, env, st_ineq), [&] { return print_inequality(ineq) + where(); });
      const bool q_holds = !truth_set(frame, v, psi).subset_of(truth_set(frame, v, chi)) ||
                           truth_set(frame, v, chi).subset_of(truth_set(frame, v, phi));
      quasi.add(q_holds == eval_fo(frame, env, st_q), [&] { return print_quasi(q) + where(); });
    }
  }
  rep.tallies = {pointwise, inequality, quasi};
  rep.seconds = seconds_since(t0);
  return rep;
}

std::vector<TraceStep> collect_steps(const std::vector<Formula>& corpus) {
  std::vector<TraceStep> out;
  std::set<std::string> seen;
  for (const auto& f : corpus) {
    AlbaOutput res;
    try {
      res = run_alba(f);
    } catch (const AlbaFailure&) {
      continue;
    }
    for (auto& s : res.trace.steps) {
      std::string key = std::string(rule_name(s.rule)) + "|" + s.parameter + "|" + print_quasi(s.before);
      for (const auto& a : s.after) key += "|" + print_quasi(a);
      if (seen.insert(key).second) out.push_back(std::move(s));
    }
  }
  return out;
}

namespace {

struct CompiledStep {
  const TraceStep* step;
  Signature sig;  // before and every after together
  CompiledQuasi before;
  std::vector<CompiledQuasi> after;
  // Each system against its own signature, for validity.
  std::vector<std::pair<Signature, CompiledQuasi>> separate;

  explicit CompiledStep(const TraceStep& s)
      : step(&s), sig(merged(s)), before(s.before, sig) {
    for (const auto& a : s.after) after.emplace_back(a, sig);
    separate.emplace_back(Signature::of(s.before), CompiledQuasi(s.before, Signature::of(s.before)));
    for (const auto& a : s.after) separate.emplace_back(Signature::of(a), CompiledQuasi(a, Signature::of(a)));
  }

  static Signature merged(const TraceStep& s) {
    Signature sig = Signature::of(s.before);
    for (const auto& a : s.after) sig.merge(Signature::of(a));
    return sig;
  }
};

}  // namespace

SuiteReport rule_soundness_suite(const std::vector<TraceStep>& steps, const std::vector<FMFrame>& frames,
                                 Exec exec, std::uint64_t budget) {
  const auto t0 = Clock::now();
  std::vector<CompiledStep> compiled;
  compiled.reserve(steps.size());
  for (const auto& s : steps) compiled.emplace_back(s);

  static constexpr std::array kRules = {Rule::Distribution, Rule::Splitting,  Rule::FirstApproximation,
                                        Rule::Residuation,  Rule::Approximation, Rule::Deleting,
                                        Rule::Ackermann};
  struct FrameResult {
    std::vector<Tally> tallies;
    std::uint64_t skipped = 0;
  };
  auto results = map_indices<FrameResult>(frames.size(), exec, [&](std::size_t i) {
    FrameResult r;
    for (Rule rule : kRules) r.tallies.push_back({rule_name(rule)});
    const ROAlgebra alg(frames[i]);
    for (const auto& cs : compiled) {
      const TraceStep& s = *cs.step;
      Tally& t = r.tallies[static_cast<std::size_t>(s.rule)];
      auto where = [&] { return print_step(s) + "\n" + frames[i].describe(); };
      try {
        if (is_valuation_level(s.rule)) {
          const bool agree = for_each_valuation(alg, cs.sig, budget, [&](auto props, auto noms) {
            bool after = true;
            for (const auto& a : cs.after) after = after && a.holds(alg, props, noms);
            return cs.before.holds(alg, props, noms) == after;
          });
          t.add(agree, where);
        } else {
          std::vector<bool> verdicts;
          for (const auto& [sig, code] : cs.separate)
            verdicts.push_back(for_each_valuation(alg, sig, budget, [&](auto props, auto noms) {
              return code.holds(alg, props, noms);
            }));
          const bool after = std::all_of(verdicts.begin() + 1, verdicts.end(), [](bool b) { return b; });
          t.add(verdicts.front() == after, where);
        }
      } catch (const BudgetExceeded&) {
        ++r.skipped;
      }
    }
    return r;
  });

  SuiteReport rep;
  rep.suite = "rule-soundness";
  rep.frames = frames.size();
  for (Rule rule : kRules) rep.tallies.push_back({rule_name(rule)});
  for (const auto& r : results) {
    rep.skipped += r.skipped;
    for (std::size_t k = 0; k < r.tallies.size(); ++k) rep.tallies[k].merge(r.tallies[k]);
  }
  rep.seconds = seconds_since(t0);
  return rep;
}

SuiteReport rule_soundness_suite(const std::vector<TraceStep>& steps, int max_n, Exec exec, std::uint64_t budget) {
  return rule_soundness_suite(steps, frames_up_to(max_n), exec, budget);
}

}  // namespace fmcorr
