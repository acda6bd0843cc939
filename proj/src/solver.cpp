#include "gapcheck/solver.hpp"

#include <algorithm>

#include "gapcheck/diff_graph.hpp"

namespace gapcheck {
namespace {

constexpr int kUnassigned = -1;

class Dpll {
 public:
  Dpll(const ClauseSet& cs, const SolverOptions& options)
      : cs_(cs),
        options_(options),
        watches_(2 * (cs.num_vars + 1)),
        assigns_(cs.num_vars + 1, kUnassigned) {
    for (const auto& c : cs.clauses) {
      if (!add_clause(c)) has_empty_ = true;
    }
  }

  SatResult run() {
    SatResult result;
    if (has_empty_) return result;
    for (;;) {
      if (!restart() || !search(result.decisions)) return result;

      auto conflict = theory_conflict();
      if (!conflict) {
        result.status = SatStatus::Sat;
        result.model = extract_model();
        return result;
      }
      ++result.theory_lemmas;
      Clause blocking;
      for (Literal l : *conflict) blocking.push_back(-l);
      if (!add_clause(blocking)) return result;
    }
  }

 private:
  static int code(Literal l) { return 2 * var_of(l) + (l < 0 ? 1 : 0); }

  int value(Literal l) const {
    const int a = assigns_[var_of(l)];
    if (a == kUnassigned) return kUnassigned;
    return l > 0 ? a : 1 - a;
  }

  // Normalizes and installs a clause. Returns false for the empty clause.
  bool add_clause(Clause c) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    for (Literal l : c) {
      if (std::binary_search(c.begin(), c.end(), -l)) return true;
    }
    if (c.empty()) return false;
    if (c.size() == 1) {
      units_.push_back(c.front());
      return true;
    }
    const int index = static_cast<int>(clauses_.size());
    watches_[code(c[0])].push_back(index);
    watches_[code(c[1])].push_back(index);
    clauses_.push_back(std::move(c));
    return true;
  }

  void assign(Literal l) {
    assigns_[var_of(l)] = l > 0 ? 1 : 0;
    trail_.push_back(l);
  }

  void undo_to(std::size_t trail_size) {
    while (trail_.size() > trail_size) {
      assigns_[var_of(trail_.back())] = kUnassigned;
      trail_.pop_back();
    }
    qhead_ = std::min(qhead_, trail_size);
  }

  // Clears the assignment and asserts the unit clauses at level 0.
  bool restart() {
    undo_to(0);
    level_start_.clear();
    level_flipped_.clear();
    for (Literal u : units_) {
      const int v = value(u);
      if (v == 0) return false;
      if (v == kUnassigned) assign(u);
    }
    return propagate();
  }

  bool propagate() {
    while (qhead_ < trail_.size()) {
      const Literal falsified = -trail_[qhead_++];
      auto& ws = watches_[code(falsified)];
      std::size_t i = 0, j = 0;
      while (i < ws.size()) {
        const int ci = ws[i];
        Clause& c = clauses_[ci];
        if (c[0] == falsified) std::swap(c[0], c[1]);
        if (value(c[0]) == 1) {
          ws[j++] = ws[i++];
          continue;
        }
        bool moved = false;
        for (std::size_t k = 2; k < c.size(); ++k) {
          if (value(c[k]) != 0) {
            std::swap(c[1], c[k]);
            watches_[code(c[1])].push_back(ci);
            moved = true;
            break;
          }
        }
        if (moved) {
          ++i;
          continue;
        }
        ws[j++] = ws[i++];
        if (value(c[0]) == 0) {
          while (i < ws.size()) ws[j++] = ws[i++];
          ws.resize(j);
          qhead_ = trail_.size();
          return false;
        }
        assign(c[0]);
      }
      ws.resize(j);
    }
    return true;
  }

  // Undoes levels until one whose decision has not been flipped, then takes
  // its other branch. Returns false when the search space is exhausted.
  bool backtrack() {
    while (!level_start_.empty()) {
      const std::size_t start = level_start_.back();
      const bool flipped = level_flipped_.back();
      const Literal decision = trail_[start];
      undo_to(start);
      level_start_.pop_back();
      level_flipped_.pop_back();
      if (!flipped) {
        level_start_.push_back(trail_.size());
        level_flipped_.push_back(true);
        assign(-decision);
        return true;
      }
    }
    return false;
  }

  // Returns true with a full Boolean model, false when none exists.
  bool search(std::uint64_t& decisions) {
    int cursor = 1;
    for (;;) {
      if (!propagate()) {
        if (!backtrack()) return false;
        cursor = 1;
        continue;
      }
      while (cursor <= cs_.num_vars && assigns_[cursor] != kUnassigned) {
        ++cursor;
      }
      if (cursor > cs_.num_vars) return true;
      if (++decisions > options_.decision_budget) {
        throw BudgetExceeded("solver exceeded the decision budget of " +
                             std::to_string(options_.decision_budget));
      }
      level_start_.push_back(trail_.size());
      level_flipped_.push_back(false);
      assign(cursor);
    }
  }

  // Difference constraint asserted by the current value of an arithmetic
  // variable, added to `g` tagged with the asserting literal.
  void add_asserted(DiffGraph& g, Literal lit) const {
    const auto& atom = cs_.entry(var_of(lit)).atom->arith_atom();
    if (lit > 0) {
      g.add_constraint(atom.lhs, atom.rhs, atom.bound, lit);
    } else {
      g.add_constraint(atom.rhs, atom.lhs, -atom.bound - 1, lit);
    }
  }

  DiffGraph graph_for(const std::vector<Literal>& lits) const {
    DiffGraph g;
    for (int v = 1; v <= cs_.num_vars; ++v) {
      if (cs_.entry(v).kind != AtomEntry::Kind::Arith) continue;
      const auto& atom = cs_.entry(v).atom->arith_atom();
      g.vertex(atom.lhs);
      g.vertex(atom.rhs);
    }
    for (Literal l : lits) add_asserted(g, l);
    return g;
  }

  std::vector<Literal> asserted_arith() const {
    std::vector<Literal> lits;
    for (int v = 1; v <= cs_.num_vars; ++v) {
      if (cs_.entry(v).kind != AtomEntry::Kind::Arith) continue;
      lits.push_back(assigns_[v] == 1 ? v : -v);
    }
    return lits;
  }

  // Literals of a negative cycle under the current full assignment, greedily
  // shrunk while a negative cycle remains; nullopt when theory-consistent.
  std::optional<std::vector<Literal>> theory_conflict() {
    auto check = check_negative_cycle(graph_for(asserted_arith()));
    if (!check.cycle) {
      potentials_ = std::move(check.potentials);
      return std::nullopt;
    }
    std::vector<Literal> core;
    for (const auto& e : *check.cycle) {
      if (std::find(core.begin(), core.end(), e.tag) == core.end()) {
        core.push_back(e.tag);
      }
    }
    for (std::size_t i = 0; i < core.size();) {
      std::vector<Literal> without = core;
      without.erase(without.begin() + static_cast<std::ptrdiff_t>(i));
      if (!without.empty() && check_negative_cycle(graph_for(without)).cycle) {
        core = std::move(without);
      } else {
        ++i;
      }
    }
    return core;
  }

  Assignment extract_model() const {
    Assignment model;
    const DiffGraph g = graph_for({});
    for (int v = 1; v <= cs_.num_vars; ++v) {
      const auto& e = cs_.entry(v);
      if (e.kind == AtomEntry::Kind::Prop) {
        model.props[atom_key(e.atom->prop_atom())] = assigns_[v] == 1;
      }
    }
    for (int id = 1; id < g.num_vertices(); ++id) {
      model.ints[g.name(id)] = potentials_.at(id);
    }
    return model;
  }

  const ClauseSet& cs_;
  SolverOptions options_;
  bool has_empty_ = false;
  std::vector<Clause> clauses_;
  std::vector<Literal> units_;
  std::vector<std::vector<int>> watches_;
  std::vector<int> assigns_;
  std::vector<Literal> trail_;
  std::vector<std::size_t> level_start_;
  std::vector<bool> level_flipped_;
  std::size_t qhead_ = 0;
  std::vector<std::int64_t> potentials_;
};

}  // namespace

SatResult solve(const ClauseSet& cs, const SolverOptions& options) {
  return Dpll(cs, options).run();
}

}  // namespace gapcheck
