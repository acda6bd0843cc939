#include "gapcheck/cnf.hpp"

#include <ostream>
#include <variant>

#include "gapcheck/errors.hpp"

namespace gapcheck {

std::optional<int> ClauseSet::lookup(const Formula& atom) const {
  auto it = index.find(pretty(atom));
  if (it == index.end()) return std::nullopt;
  return it->second;
}

namespace {

// Result of encoding a subformula: a constant or a literal.
using Encoded = std::variant<bool, Literal>;

class TseitinBuilder {
 public:
  ClauseSet take() { return std::move(cs_); }

  void assert_formula(const Formula& f) {
    using K = Formula::Kind;
    if (f.kind() == K::And) {
      for (const auto& c : f.children()) assert_formula(c);
      return;
    }
    if (f.kind() == K::Or) {
      Clause clause;
      for (const auto& c : f.children()) {
        Encoded e = encode(c);
        if (auto* b = std::get_if<bool>(&e)) {
          if (*b) return;
          continue;
        }
        clause.push_back(std::get<Literal>(e));
      }
      cs_.clauses.push_back(std::move(clause));
      return;
    }
    Encoded e = encode(f);
    if (auto* b = std::get_if<bool>(&e)) {
      if (!*b) cs_.clauses.emplace_back();
      return;
    }
    cs_.clauses.push_back({std::get<Literal>(e)});
  }

 private:
  int fresh() {
    cs_.atoms.push_back({AtomEntry::Kind::Fresh, std::nullopt});
    return ++cs_.num_vars;
  }

  int atom_var(const Formula& atom, AtomEntry::Kind kind) {
    auto key = pretty(atom);
    auto it = cs_.index.find(key);
    if (it != cs_.index.end()) return it->second;
    cs_.atoms.push_back({kind, atom});
    const int v = ++cs_.num_vars;
    cs_.index.emplace(std::move(key), v);
    return v;
  }

  // v <-> AND(lits), or v <-> OR(lits) when `disjunctive`.
  Literal define(const std::vector<Literal>& lits, bool disjunctive) {
    const int v = fresh();
    if (disjunctive) {
      Clause fwd{-v};
      for (Literal l : lits) {
        cs_.clauses.push_back({-l, v});
        fwd.push_back(l);
      }
      cs_.clauses.push_back(std::move(fwd));
    } else {
      Clause back{v};
      for (Literal l : lits) {
        cs_.clauses.push_back({-v, l});
        back.push_back(-l);
      }
      cs_.clauses.push_back(std::move(back));
    }
    return v;
  }

  Encoded encode_nary(std::span<const Formula> children, bool disjunctive) {
    std::vector<Literal> lits;
    for (const auto& c : children) {
      Encoded e = encode(c);
      if (auto* b = std::get_if<bool>(&e)) {
        // Absorbing constant decides the connective; neutral one is dropped.
        if (*b == disjunctive) return disjunctive;
        continue;
      }
      lits.push_back(std::get<Literal>(e));
    }
    if (lits.empty()) return !disjunctive;
    if (lits.size() == 1) return lits.front();
    return define(lits, disjunctive);
  }

  Encoded encode(const Formula& f) {
    using K = Formula::Kind;
    switch (f.kind()) {
      case K::Const: return f.const_value();
      case K::Prop: return atom_var(f, AtomEntry::Kind::Prop);
      case K::Arith:
        if (!f.arith_atom().primitive()) {
          throw InvariantError("tseitin: arithmetic atom '" + pretty(f) +
                               "' is not desugared");
        }
        return atom_var(f, AtomEntry::Kind::Arith);
      case K::Not: {
        Encoded e = encode(f.children()[0]);
        if (auto* b = std::get_if<bool>(&e)) return !*b;
        return -std::get<Literal>(e);
      }
      case K::And: return encode_nary(f.children(), false);
      case K::Or: return encode_nary(f.children(), true);
      case K::Implies: {
        auto lhs = Formula::negation(f.children()[0]);
        return encode_nary(std::vector<Formula>{lhs, f.children()[1]}, true);
      }
      case K::Iff: {
        Encoded a = encode(f.children()[0]);
        Encoded b = encode(f.children()[1]);
        if (auto* ca = std::get_if<bool>(&a)) {
          if (auto* cb = std::get_if<bool>(&b)) return *ca == *cb;
          return *ca ? b : Encoded(-std::get<Literal>(b));
        }
        if (auto* cb = std::get_if<bool>(&b)) {
          return *cb ? a : Encoded(-std::get<Literal>(a));
        }
        const Literal la = std::get<Literal>(a), lb = std::get<Literal>(b);
        const int v = fresh();
        cs_.clauses.push_back({-v, -la, lb});
        cs_.clauses.push_back({-v, la, -lb});
        cs_.clauses.push_back({v, la, lb});
        cs_.clauses.push_back({v, -la, -lb});
        return v;
      }
    }
    throw InvariantError("tseitin: unknown formula kind");
  }

  ClauseSet cs_;
};

}  // namespace

ClauseSet tseitin(const Formula& desugared) {
  TseitinBuilder builder;
  builder.assert_formula(desugared);
  return builder.take();
}

void write_dimacs(std::ostream& out, const ClauseSet& cs) {
  for (int v = 1; v <= cs.num_vars; ++v) {
    const auto& e = cs.entry(v);
    out << "c " << v << ' ';
    if (e.kind == AtomEntry::Kind::Fresh) {
      out << "<fresh>";
    } else {
      out << pretty(*e.atom);
    }
    out << '\n';
  }
  out << "p cnf " << cs.num_vars << ' ' << cs.clauses.size() << '\n';
  for (const auto& clause : cs.clauses) {
    for (Literal l : clause) out << l << ' ';
    out << "0\n";
  }
}

}  // namespace gapcheck
