#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gapcheck/case.hpp"
#include "gapcheck/entailment.hpp"

namespace gapcheck {

enum class Target { Entailment, Contradiction };

std::string_view to_string(Target t);
std::optional<Target> target_from_string(std::string_view s);
Verdict verdict_for(Target t);

inline constexpr int kDefaultCardinalityBound = 3;
inline constexpr std::size_t kMaxPoolSize = 24;

inline constexpr std::string_view kReviewQuestion =
    "Does standard contract law or the contractual context implicitly "
    "establish this assumption?";

// Cardinality dominates: fewer axioms always score lower than more axioms of
// any realistic size.
struct ScoreWeights {
  int per_axiom = 100;
  int per_node = 1;
};

struct AxiomSetSolution {
  // Sorted ascending.
  std::vector<std::string> axiom_ids;
  int score = 0;

  bool operator==(const AxiomSetSolution&) const = default;
};

struct AbductionResult {
  std::string case_id;
  Target target = Target::Entailment;
  // Subset-minimal, sorted by (score, axiom_ids).
  std::vector<AxiomSetSolution> solutions;
  int exhaustive_up_to = kDefaultCardinalityBound;
};

struct MinimalPair {
  std::string case_id;
  std::vector<std::string> axiom_ids;
  // (axiom_1 & ... & axiom_n) -> H
  Formula modified_hypothesis = Formula::constant(true);
  Verdict verdict = Verdict::Neutral;
};

// Throws InputError for an empty set.
int score(std::span<const Axiom* const> axioms, const ScoreWeights& w = {});

// All subset-minimal A of the pool with |A| <= k such that P & A is
// satisfiable and P & A entails H (target Entailment) or !H (Contradiction).
// Candidate checks within a cardinality level run in parallel (OpenMP); the
// result is identical to abduce_serial.
//
// Throws NotNeutral unless classify(P, H) is Neutral, PoolTooLarge above
// kMaxPoolSize axioms, InputError for k < 1.
AbductionResult abduce(const Case& c, Target target,
                       int k = kDefaultCardinalityBound,
                       const ScoreWeights& w = {});

// Single-threaded reference enumeration.
AbductionResult abduce_serial(const Case& c, Target target,
                              int k = kDefaultCardinalityBound,
                              const ScoreWeights& w = {});

// Whether the axiom subset passes both the consistency and the
// target check. Exposed for tests and the review service.
bool grounds_target(const Case& c, Target target,
                    std::span<const Axiom* const> axioms);

// Throws UnknownAxiomId, or InputError for an empty set.
MinimalPair build_minimal_pair(const Case& c,
                               std::span<const std::string> axiom_ids);

// The fixed reviewer question followed by one line per axiom (gloss and
// formula) in the given order. Newlines in glosses become spaces.
std::string review_question(const Case& c,
                            std::span<const std::string> axiom_ids);

}  // namespace gapcheck
