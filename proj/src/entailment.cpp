#include "gapcheck/entailment.hpp"

#include <vector>

namespace gapcheck {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Entailment: return "entailment";
    case Verdict::Contradiction: return "contradiction";
    case Verdict::Neutral: return "neutral";
    case Verdict::PremiseInconsistent: return "premise_inconsistent";
  }
  return "?";
}

std::optional<Verdict> verdict_from_string(std::string_view s) {
  for (auto v : {Verdict::Entailment, Verdict::Contradiction, Verdict::Neutral,
                 Verdict::PremiseInconsistent}) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}

SatResult solve_conjunction(std::span<const Formula> parts,
                            const SolverOptions& options) {
  return solve(tseitin(desugar(conjoin(parts))), options);
}

ClassifiedCase classify(std::span<const Formula> premise,
                        const Formula& hypothesis, std::string case_id,
                        const SolverOptions& options) {
  ClassifiedCase out;
  out.case_id = std::move(case_id);
  if (solve_conjunction(premise, options).status == SatStatus::Unsat) {
    out.verdict = Verdict::PremiseInconsistent;
    return out;
  }

  std::vector<Formula> query(premise.begin(), premise.end());
  query.push_back(Formula::negation(hypothesis));
  auto without = solve_conjunction(query, options);
  if (without.status == SatStatus::Unsat) {
    out.verdict = Verdict::Entailment;
    return out;
  }

  query.back() = hypothesis;
  auto with = solve_conjunction(query, options);
  if (with.status == SatStatus::Unsat) {
    out.verdict = Verdict::Contradiction;
    return out;
  }

  out.verdict = Verdict::Neutral;
  out.model_with_hypothesis = std::move(with.model);
  out.model_without_hypothesis = std::move(without.model);
  return out;
}

}  // namespace gapcheck
