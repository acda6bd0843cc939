#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gapcheck/formula.hpp"

namespace gapcheck {

// DIMACS-style literal: +v / -v for variable v in [1, num_vars].
using Literal = int;
using Clause = std::vector<Literal>;

inline int var_of(Literal l) { return l < 0 ? -l : l; }

struct AtomEntry {
  enum class Kind { Prop, Arith, Fresh };
  Kind kind = Kind::Fresh;
  // Unset for Fresh; otherwise a PropAtom or a primitive (`<=`) ArithAtom.
  std::optional<Formula> atom;
};

struct ClauseSet {
  int num_vars = 0;
  std::vector<Clause> clauses;
  // Indexed by variable - 1.
  std::vector<AtomEntry> atoms;
  // Printed atom -> variable, for non-fresh variables.
  std::map<std::string, int> index;

  const AtomEntry& entry(int var) const { return atoms.at(var - 1); }
  std::optional<int> lookup(const Formula& atom) const;
};

// Equisatisfiable CNF via Tseitin definitions. The input must be desugared;
// top-level conjunctions and disjunctions of literals are emitted directly.
ClauseSet tseitin(const Formula& desugared);

// `p cnf V C` header, `c <var> <atom>` comment lines, 0-terminated clauses.
void write_dimacs(std::ostream& out, const ClauseSet& cs);

}  // namespace gapcheck
