#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "gapcheck/formula.hpp"
#include "gapcheck/solver.hpp"

namespace gapcheck {

enum class Verdict { Entailment, Contradiction, Neutral, PremiseInconsistent };

std::string_view to_string(Verdict v);
std::optional<Verdict> verdict_from_string(std::string_view s);

struct ClassifiedCase {
  std::string case_id;
  Verdict verdict = Verdict::Neutral;
  // Both present iff Neutral: a model of P & H and a model of P & !H.
  std::optional<Assignment> model_with_hypothesis;
  std::optional<Assignment> model_without_hypothesis;
};

// Satisfiability of the conjunction of `parts` (desugared and encoded here).
SatResult solve_conjunction(std::span<const Formula> parts,
                            const SolverOptions& options = {});

// Entailment iff P & !H is unsatisfiable, Contradiction iff P & H is
// unsatisfiable, Neutral otherwise; an unsatisfiable P is reported as
// PremiseInconsistent before either query is made.
ClassifiedCase classify(std::span<const Formula> premise,
                        const Formula& hypothesis, std::string case_id = {},
                        const SolverOptions& options = {});

}  // namespace gapcheck
