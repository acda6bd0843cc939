#include "oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace gapcheck::testing {

// ---------------------------------------------------------------------------
// Generator

namespace {

const char* const kPropNames[] = {"p0", "p1", "ob_pay(vendor)", "perm_share(affiliate)"};
const char* const kIntNames[] = {"x", "y"};

Formula make_prop(const std::string& text) { return parse(text); }

}  // namespace

FormulaGenerator::FormulaGenerator(std::uint64_t seed, GeneratorConfig config)
    : rng_(seed), config_(config) {}

void FormulaGenerator::pick_vocabulary() {
  std::uniform_int_distribution<int> props(0, config_.max_props);
  std::uniform_int_distribution<int> ints(0, config_.max_ints);
  do {
    props_ = props(rng_);
    ints_ = ints(rng_);
  } while (props_ + ints_ == 0);
}

Formula FormulaGenerator::atom() {
  std::uniform_int_distribution<int> coin(0, props_ + ints_ - 1);
  if (coin(rng_) < props_) {
    std::uniform_int_distribution<int> which(0, props_ - 1);
    return make_prop(kPropNames[which(rng_)]);
  }
  // Endpoints drawn from the chosen variables plus zero, not both zero.
  std::vector<std::string> vars{std::string(kZeroVar)};
  for (int i = 0; i < ints_; ++i) vars.emplace_back(kIntNames[i]);
  std::uniform_int_distribution<std::size_t> pick(0, vars.size() - 1);
  std::string lhs, rhs;
  do {
    lhs = vars[pick(rng_)];
    rhs = vars[pick(rng_)];
  } while (lhs == rhs);
  std::uniform_int_distribution<int> op(0, 5);
  std::uniform_int_distribution<std::int64_t> bound(-config_.max_bound,
                                                    config_.max_bound);
  return Formula::arith(lhs, rhs, static_cast<CmpOp>(op(rng_)), bound(rng_));
}

Formula FormulaGenerator::gen(int depth, int& budget) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  if (depth == 0 || budget <= 1 || u(rng_) < 0.25) {
    --budget;
    if (u(rng_) < 0.03) return Formula::constant(u(rng_) < 0.5);
    return atom();
  }
  std::uniform_int_distribution<int> kind(0, 4);
  switch (kind(rng_)) {
    case 0: return Formula::negation(gen(depth - 1, budget));
    case 1:
    case 2: {
      std::uniform_int_distribution<int> arity(2, 3);
      const int n = std::min(arity(rng_), budget);
      std::vector<Formula> children;
      for (int i = 0; i < n; ++i) {
        if (i > 0 && budget <= 0) break;
        children.push_back(gen(depth - 1, budget));
      }
      if (children.size() < 2) return Formula::negation(children.front());
      return kind(rng_) % 2 == 0 ? Formula::conjunction(std::move(children))
                                 : Formula::disjunction(std::move(children));
    }
    case 3: {
      auto lhs = gen(depth - 1, budget);
      if (budget <= 0) return Formula::negation(lhs);
      return Formula::implication(lhs, gen(depth - 1, budget));
    }
    default: {
      auto lhs = gen(depth - 1, budget);
      if (budget <= 0) return Formula::negation(lhs);
      return Formula::biconditional(lhs, gen(depth - 1, budget));
    }
  }
}

Formula FormulaGenerator::next() {
  pick_vocabulary();
  int budget = config_.max_atoms;
  return gen(config_.max_depth, budget);
}

std::pair<std::vector<Formula>, Formula> FormulaGenerator::next_case() {
  pick_vocabulary();
  std::uniform_int_distribution<int> count(1, 3);
  std::vector<Formula> premise;
  const int n = count(rng_);
  for (int i = 0; i < n; ++i) {
    int budget = 4;
    premise.push_back(gen(3, budget));
  }
  int budget = 4;
  return {std::move(premise), gen(3, budget)};
}

// ---------------------------------------------------------------------------
// Compiled evaluation

namespace {

int index_in(const std::vector<std::string>& names, const std::string& name) {
  if (name == kZeroVar) return -1;
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw std::logic_error("oracle: unknown name " + name);
  return static_cast<int>(it - names.begin());
}

bool holds(std::int64_t diff, CmpOp op, std::int64_t c) {
  switch (op) {
    case CmpOp::Le: return diff <= c;
    case CmpOp::Lt: return diff < c;
    case CmpOp::Ge: return diff >= c;
    case CmpOp::Gt: return diff > c;
    case CmpOp::Eq: return diff == c;
    case CmpOp::Ne: return diff != c;
  }
  return false;
}

}  // namespace

CompiledFormula::CompiledFormula(const Formula& f,
                                 const std::vector<std::string>& props,
                                 const std::vector<std::string>& ints) {
  root_ = compile(f, props, ints);
}

int CompiledFormula::compile(const Formula& f,
                             const std::vector<std::string>& props,
                             const std::vector<std::string>& ints) {
  Node n{f.kind()};
  switch (f.kind()) {
    case Formula::Kind::Prop:
      n.a = index_in(props, atom_key(f.prop_atom()));
      break;
    case Formula::Kind::Arith:
      n.a = index_in(ints, f.arith_atom().lhs);
      n.b = index_in(ints, f.arith_atom().rhs);
      n.op = f.arith_atom().op;
      n.bound = f.arith_atom().bound;
      break;
    case Formula::Kind::Const: n.value = f.const_value(); break;
    default:
      for (const auto& c : f.children()) {
        n.children.push_back(compile(c, props, ints));
      }
  }
  nodes_.push_back(std::move(n));
  return static_cast<int>(nodes_.size()) - 1;
}

bool CompiledFormula::eval(std::uint32_t prop_bits,
                           const std::int64_t* ints) const {
  return eval_node(root_, prop_bits, ints);
}

bool CompiledFormula::eval_node(int i, std::uint32_t bits,
                                const std::int64_t* ints) const {
  const Node& n = nodes_[i];
  using K = Formula::Kind;
  switch (n.kind) {
    case K::Prop: return (bits >> n.a) & 1u;
    case K::Arith: {
      const std::int64_t l = n.a < 0 ? 0 : ints[n.a];
      const std::int64_t r = n.b < 0 ? 0 : ints[n.b];
      return holds(l - r, n.op, n.bound);
    }
    case K::Const: return n.value;
    case K::Not: return !eval_node(n.children[0], bits, ints);
    case K::And:
      for (int c : n.children) {
        if (!eval_node(c, bits, ints)) return false;
      }
      return true;
    case K::Or:
      for (int c : n.children) {
        if (eval_node(c, bits, ints)) return true;
      }
      return false;
    case K::Implies:
      return !eval_node(n.children[0], bits, ints) ||
             eval_node(n.children[1], bits, ints);
    case K::Iff:
      return eval_node(n.children[0], bits, ints) ==
             eval_node(n.children[1], bits, ints);
  }
  return false;
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

void max_bound(const Formula& f, std::int64_t& m) {
  if (f.kind() == Formula::Kind::Arith) {
    m = std::max(m, std::abs(f.arith_atom().bound));
  }
  for (const auto& c : f.children()) max_bound(c, m);
}

}  // namespace

std::int64_t sufficient_radius(std::span<const Formula> fs) {
  std::int64_t m = 0;
  for (const auto& f : fs) max_bound(f, m);
  const auto vars = static_cast<std::int64_t>(int_variables(fs).size());
  return std::max<std::int64_t>(1, vars * (m + 1));
}

Enumerator::Enumerator(std::span<const Formula> fs, std::int64_t r)
    : props(prop_atom_keys(fs)),
      ints(int_variables(fs)),
      radius(r < 0 ? sufficient_radius(fs) : r) {
  if (props.size() > 20) throw std::logic_error("oracle: too many atoms");
}

Assignment Enumerator::to_assignment(std::uint32_t bits,
                                     const std::int64_t* vals) const {
  Assignment a;
  for (std::size_t i = 0; i < props.size(); ++i) a.props[props[i]] = (bits >> i) & 1u;
  for (std::size_t i = 0; i < ints.size(); ++i) a.ints[ints[i]] = vals[i];
  return a;
}

bool brute_sat(std::span<const Formula> fs, std::int64_t radius) {
  Enumerator e(fs, radius);
  std::vector<CompiledFormula> compiled;
  for (const auto& f : fs) compiled.emplace_back(f, e.props, e.ints);
  return e.enumerate([&](std::uint32_t bits, const std::int64_t* vals) {
    return std::all_of(compiled.begin(), compiled.end(),
                       [&](const CompiledFormula& c) { return c.eval(bits, vals); });
  });
}

Verdict ThreeWay::verdict() const {
  if (!premise_sat) return Verdict::PremiseInconsistent;
  if (!without_hypothesis_sat) return Verdict::Entailment;
  if (!with_hypothesis_sat) return Verdict::Contradiction;
  return Verdict::Neutral;
}

ThreeWay brute_three_way(std::span<const Formula> premise,
                         const Formula& hypothesis) {
  std::vector<Formula> all(premise.begin(), premise.end());
  all.push_back(hypothesis);
  Enumerator e(all);
  const CompiledFormula p(conjoin(premise), e.props, e.ints);
  const CompiledFormula h(hypothesis, e.props, e.ints);
  ThreeWay out;
  e.enumerate([&](std::uint32_t bits, const std::int64_t* vals) {
    if (!p.eval(bits, vals)) return false;
    out.premise_sat = true;
    if (h.eval(bits, vals)) out.with_hypothesis_sat = true;
    else out.without_hypothesis_sat = true;
    return out.with_hypothesis_sat && out.without_hypothesis_sat;
  });
  return out;
}

namespace {

void collect_atoms(const Formula& f, std::set<std::string>& out) {
  if (f.is_atom()) out.insert(pretty(f));
  for (const auto& c : f.children()) collect_atoms(c, out);
}

bool eval_abstract(const Formula& f, const std::map<std::string, bool>& v) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Prop:
    case K::Arith: return v.at(pretty(f));
    case K::Const: return f.const_value();
    case K::Not: return !eval_abstract(f.children()[0], v);
    case K::And:
      for (const auto& c : f.children()) {
        if (!eval_abstract(c, v)) return false;
      }
      return true;
    case K::Or:
      for (const auto& c : f.children()) {
        if (eval_abstract(c, v)) return true;
      }
      return false;
    case K::Implies:
      return !eval_abstract(f.children()[0], v) ||
             eval_abstract(f.children()[1], v);
    case K::Iff:
      return eval_abstract(f.children()[0], v) ==
             eval_abstract(f.children()[1], v);
  }
  return false;
}

}  // namespace

bool abstract_sat(const Formula& f) {
  std::set<std::string> atoms;
  collect_atoms(f, atoms);
  const std::vector<std::string> names(atoms.begin(), atoms.end());
  for (std::uint32_t bits = 0; bits < (1u << names.size()); ++bits) {
    std::map<std::string, bool> v;
    for (std::size_t i = 0; i < names.size(); ++i) v[names[i]] = (bits >> i) & 1u;
    if (eval_abstract(f, v)) return true;
  }
  return false;
}

bool clause_set_sat_bruteforce(const ClauseSet& cs) {
  if (cs.num_vars > 22) throw std::logic_error("oracle: clause set too large");
  for (std::uint32_t bits = 0; bits < (1u << cs.num_vars); ++bits) {
    const bool all = std::all_of(
        cs.clauses.begin(), cs.clauses.end(), [&](const Clause& clause) {
          return std::any_of(clause.begin(), clause.end(), [&](Literal l) {
            const bool value = (bits >> (var_of(l) - 1)) & 1u;
            return l > 0 ? value : !value;
          });
        });
    if (all) return true;
  }
  return false;
}

bool graph_feasible_bruteforce(const DiffGraph& g, std::int64_t radius) {
  const int n = g.num_vertices();
  auto satisfied = [&](const std::vector<std::int64_t>& val) {
    return std::all_of(g.edges().begin(), g.edges().end(), [&](const DiffEdge& e) {
      return val[e.to] - val[e.from] <= e.weight;
    });
  };

  if (n <= 4) {
    std::vector<std::int64_t> val(n, -radius);
    val[0] = 0;
    for (;;) {
      if (satisfied(val)) return true;
      int i = 1;
      while (i < n && val[i] == radius) val[i++] = -radius;
      if (i >= n) return false;
      ++val[i];
    }
  }

  std::vector<std::int64_t> lo(n, -radius), hi(n, radius);
  lo[0] = hi[0] = 0;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& e : g.edges()) {
      // to - from <= w
      if (hi[e.to] > hi[e.from] + e.weight) {
        hi[e.to] = hi[e.from] + e.weight;
        changed = true;
      }
      if (lo[e.from] < lo[e.to] - e.weight) {
        lo[e.from] = lo[e.to] - e.weight;
        changed = true;
      }
      if (lo[e.to] > hi[e.to] || lo[e.from] > hi[e.from]) return false;
    }
  }
  if (!satisfied(lo)) throw std::logic_error("oracle: filtering certificate failed");
  return true;
}

}  // namespace gapcheck::testing

namespace gapcheck::testing {

std::vector<std::vector<std::string>> brute_abduce(const Case& c, Target target,
                                                   int k) {
  const int n = static_cast<int>(c.axiom_pool.size());
  const Formula goal = target == Target::Entailment
                           ? Formula::negation(c.hypothesis_form)
                           : c.hypothesis_form;
  std::vector<std::uint32_t> qualifying;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (std::popcount(mask) > k) continue;
    std::vector<Formula> query = c.premise_forms;
    for (int i = 0; i < n; ++i) {
      if (mask >> i & 1) query.push_back(c.axiom_pool[i].formula);
    }
    if (!brute_sat(query)) continue;
    query.push_back(goal);
    if (brute_sat(query)) continue;
    qualifying.push_back(mask);
  }
  std::vector<std::vector<std::string>> out;
  for (std::uint32_t m : qualifying) {
    const bool minimal = std::none_of(qualifying.begin(), qualifying.end(), [&](std::uint32_t o) {
      return o != m && (o & m) == o;
    });
    if (!minimal) continue;
    std::vector<std::string> ids;
    for (int i = 0; i < n; ++i) {
      if (m >> i & 1) ids.push_back(c.axiom_pool[i].id);
    }
    std::sort(ids.begin(), ids.end());
    out.push_back(std::move(ids));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Case random_neutral_case(std::uint64_t seed, int pool_size) {
  GeneratorConfig main_cfg;
  main_cfg.max_depth = 3;
  main_cfg.max_atoms = 4;
  main_cfg.max_bound = 8;
  GeneratorConfig axiom_cfg = main_cfg;
  axiom_cfg.max_depth = 2;
  axiom_cfg.max_atoms = 3;
  FormulaGenerator gen(seed, main_cfg);
  FormulaGenerator axioms(seed ^ 0x9e3779b97f4a7c15ULL, axiom_cfg);
  for (;;) {
    auto [premise, hyp] = gen.next_case();
    if (brute_three_way(premise, hyp).verdict() != Verdict::Neutral) continue;
    Case c;
    c.id = "rand-" + std::to_string(seed);
    c.premise_forms = std::move(premise);
    c.hypothesis_form = hyp;
    for (int i = 0; i < pool_size; ++i) {
      Axiom a;
      a.id = "ax" + std::to_string(i);
      // Half the pool bridges premise material to the hypothesis directly.
      a.formula = i % 2 == 0 ? Formula::implication(axioms.next(), hyp) : axioms.next();
      a.gloss = "axiom " + std::to_string(i);
      c.axiom_pool.push_back(std::move(a));
    }
    return c;
  }
}

}  // namespace gapcheck::testing
