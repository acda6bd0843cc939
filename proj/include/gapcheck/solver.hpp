#pragma once

#include <cstdint>
#include <optional>

#include "gapcheck/cnf.hpp"
#include "gapcheck/errors.hpp"
#include "gapcheck/formula.hpp"

namespace gapcheck {

enum class SatStatus { Sat, Unsat };

struct SatResult {
  SatStatus status = SatStatus::Unsat;
  // Present iff Sat: every source PropAtom plus integer witness values for
  // every arithmetic variable of the clause set.
  std::optional<Assignment> model;
  std::uint64_t decisions = 0;
  std::uint64_t theory_lemmas = 0;
};

struct SolverOptions {
  std::uint64_t decision_budget = 10'000'000;
};

class BudgetExceeded : public InvariantError {
 public:
  using InvariantError::InvariantError;
};

// Complete DPLL search with watched-literal unit propagation and chronological
// backtracking; branches on the lowest unassigned variable, true first. Full
// Boolean models are checked against the difference-logic theory and refuted
// by (greedily minimized) blocking clauses, after which search restarts.
//
// Throws BudgetExceeded if the decision budget is exhausted.
SatResult solve(const ClauseSet& cs, const SolverOptions& options = {});

}  // namespace gapcheck
