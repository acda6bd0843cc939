#include "gapcheck/abduction.hpp"

#include <algorithm>

#include "gapcheck/errors.hpp"
#include "gapcheck/parallel.hpp"

namespace gapcheck {

std::string_view to_string(Target t) {
  return t == Target::Entailment ? "entailment" : "contradiction";
}

std::optional<Target> target_from_string(std::string_view s) {
  if (s == "entailment") return Target::Entailment;
  if (s == "contradiction") return Target::Contradiction;
  return std::nullopt;
}

Verdict verdict_for(Target t) {
  return t == Target::Entailment ? Verdict::Entailment : Verdict::Contradiction;
}

int score(std::span<const Axiom* const> axioms, const ScoreWeights& w) {
  if (axioms.empty()) throw InputError("score: empty axiom set");
  int total = w.per_axiom * static_cast<int>(axioms.size());
  for (const Axiom* a : axioms) total += w.per_node * node_count(a->formula);
  return total;
}

bool grounds_target(const Case& c, Target target,
                    std::span<const Axiom* const> axioms) {
  std::vector<Formula> query = c.premise_forms;
  for (const Axiom* a : axioms) query.push_back(a->formula);
  const std::size_t base = query.size();

  query.push_back(target == Target::Entailment
                      ? Formula::negation(c.hypothesis_form)
                      : c.hypothesis_form);
  if (solve_conjunction(query).status == SatStatus::Sat) return false;

  query.erase(query.begin() + static_cast<std::ptrdiff_t>(base), query.end());
  return solve_conjunction(query).status == SatStatus::Sat;
}

namespace {

using Combination = std::vector<int>;

void check_preconditions(const Case& c, int k) {
  if (k < 1) throw InputError("abduce: cardinality bound must be >= 1");
  if (c.axiom_pool.size() > kMaxPoolSize) {
    throw PoolTooLarge(c.axiom_pool.size(), kMaxPoolSize);
  }
  const auto verdict = classify(c.premise_forms, c.hypothesis_form).verdict;
  if (verdict != Verdict::Neutral) {
    throw NotNeutral("abduce: case '" + c.id + "' is " +
                     std::string(to_string(verdict)) + ", not neutral");
  }
}

std::vector<const Axiom*> axioms_of(const Case& c, const Combination& combo) {
  std::vector<const Axiom*> out;
  out.reserve(combo.size());
  for (int i : combo) out.push_back(&c.axiom_pool[i]);
  return out;
}

// Advances to the next size-r combination of [0, n) in lexicographic order.
bool next_combination(Combination& combo, int n) {
  const int r = static_cast<int>(combo.size());
  int i = r - 1;
  while (i >= 0 && combo[i] == n - r + i) --i;
  if (i < 0) return false;
  ++combo[i];
  for (int j = i + 1; j < r; ++j) combo[j] = combo[j - 1] + 1;
  return true;
}

bool contains_any(const Combination& combo,
                  const std::vector<Combination>& found) {
  return std::any_of(found.begin(), found.end(), [&](const Combination& s) {
    return std::includes(combo.begin(), combo.end(), s.begin(), s.end());
  });
}

AbductionResult finish(const Case& c, Target target, int k,
                       const std::vector<Combination>& found,
                       const ScoreWeights& w) {
  AbductionResult result{c.id, target, {}, k};
  for (const auto& combo : found) {
    auto axioms = axioms_of(c, combo);
    AxiomSetSolution s;
    for (const Axiom* a : axioms) s.axiom_ids.push_back(a->id);
    std::sort(s.axiom_ids.begin(), s.axiom_ids.end());
    s.score = score(axioms, w);
    result.solutions.push_back(std::move(s));
  }
  std::sort(result.solutions.begin(), result.solutions.end(),
            [](const AxiomSetSolution& a, const AxiomSetSolution& b) {
              if (a.score != b.score) return a.score < b.score;
              return a.axiom_ids < b.axiom_ids;
            });
  return result;
}

}  // namespace

AbductionResult abduce_serial(const Case& c, Target target, int k,
                              const ScoreWeights& w) {
  check_preconditions(c, k);
  const int n = static_cast<int>(c.axiom_pool.size());
  std::vector<Combination> found;
  for (int size = 1; size <= std::min(k, n); ++size) {
    Combination combo(size);
    for (int i = 0; i < size; ++i) combo[i] = i;
    do {
      if (contains_any(combo, found)) continue;
      if (grounds_target(c, target, axioms_of(c, combo))) {
        found.push_back(combo);
      }
    } while (next_combination(combo, n));
  }
  return finish(c, target, k, found, w);
}

AbductionResult abduce(const Case& c, Target target, int k,
                       const ScoreWeights& w) {
  check_preconditions(c, k);
  const int n = static_cast<int>(c.axiom_pool.size());
  std::vector<Combination> found;
  for (int size = 1; size <= std::min(k, n); ++size) {
    // Sets of equal size never contain each other, so pruning against the
    // smaller levels is all that is needed before checking a level at once.
    std::vector<Combination> level;
    Combination combo(size);
    for (int i = 0; i < size; ++i) combo[i] = i;
    do {
      if (!contains_any(combo, found)) level.push_back(combo);
    } while (next_combination(combo, n));

    std::vector<char> ok(level.size(), 0);
    parallel_for(level.size(), [&](std::size_t i) {
      ok[i] = grounds_target(c, target, axioms_of(c, level[i])) ? 1 : 0;
    });
    for (std::size_t i = 0; i < level.size(); ++i) {
      if (ok[i]) found.push_back(level[i]);
    }
  }
  return finish(c, target, k, found, w);
}

MinimalPair build_minimal_pair(const Case& c,
                               std::span<const std::string> axiom_ids) {
  if (axiom_ids.empty()) throw InputError("minimal pair: empty axiom set");
  std::vector<Formula> parts;
  for (const auto& id : axiom_ids) {
    const Axiom* a = c.find_axiom(id);
    if (a == nullptr) throw UnknownAxiomId(id);
    parts.push_back(a->formula);
  }
  MinimalPair pair;
  pair.case_id = c.id;
  pair.axiom_ids.assign(axiom_ids.begin(), axiom_ids.end());
  pair.modified_hypothesis =
      Formula::implication(conjoin(parts), c.hypothesis_form);
  pair.verdict =
      classify(c.premise_forms, pair.modified_hypothesis, c.id).verdict;
  return pair;
}

std::string review_question(const Case& c,
                            std::span<const std::string> axiom_ids) {
  std::string out(kReviewQuestion);
  for (const auto& id : axiom_ids) {
    const Axiom* a = c.find_axiom(id);
    if (a == nullptr) throw UnknownAxiomId(id);
    std::string gloss = a->gloss;
    std::replace(gloss.begin(), gloss.end(), '\n', ' ');
    std::replace(gloss.begin(), gloss.end(), '\r', ' ');
    out += "\n- " + gloss + " :: " + pretty(a->formula);
  }
  return out;
}

}  // namespace gapcheck
