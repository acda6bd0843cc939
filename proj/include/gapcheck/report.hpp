#pragma once

#include <array>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "gapcheck/abduction.hpp"
#include "gapcheck/case.hpp"
#include "gapcheck/dataset.hpp"
#include "gapcheck/entailment.hpp"

namespace gapcheck {

inline constexpr std::array<Label, 3> kLabels = {
    Label::Entailment, Label::Contradiction, Label::Neutral};
inline constexpr std::array<Verdict, 4> kVerdicts = {
    Verdict::Entailment, Verdict::Contradiction, Verdict::Neutral,
    Verdict::PremiseInconsistent};

// The definite-verdict label a prediction must equal to agree with `v`.
std::optional<Label> label_of(Verdict v);

enum class FailureTag {
  AssumptionInjection,         // definite answer where the formal verdict is Neutral
  ScopeLaundering,             // claims formal grounding for a wrong answer
  ImplicitConstraintBlindness  // misses a definite verdict the formulas force
};

std::string_view to_string(FailureTag t);

using TagSet = std::set<FailureTag>;

// Throws DegenerateCase for PremiseInconsistent.
TagSet tag_failures(Verdict verdict, const Prediction& prediction);

// Classifies every case, in input order. Cases are spread across OpenMP
// threads, one solver instance per check.
std::vector<ClassifiedCase> classify_all(std::span<const Case> cases);
std::vector<ClassifiedCase> classify_all_serial(std::span<const Case> cases);

// gold_legal (rows, kLabels order) x computed verdict (columns, kVerdicts).
struct ShiftMatrix {
  std::array<std::array<int, 4>, 3> counts{};

  int& at(Label gold, Verdict v);
  int at(Label gold, Verdict v) const;
  int total() const;
  // Cases whose verdict differs from the gold label.
  int shifted() const;
};

struct ShiftResult {
  ShiftMatrix matrix;
  // Dataset order.
  std::vector<ClassifiedCase> verdicts;
};

ShiftResult compute_shift(std::span<const Case> cases);

// Formal verdict (rows: entailment, contradiction, neutral) x predicted label.
struct ConfusionMatrix {
  std::array<std::array<int, 3>, 3> counts{};

  int& at(Label formal, Label predicted);
  int at(Label formal, Label predicted) const;
  int total() const;
};

struct RewardSignal {
  int reward = 0;  // -1, 0 or +1
  // Present only for reward -1: the axioms that would ground the claim.
  std::optional<AbductionResult> required_axioms;
};

// +1 when the claim equals the verdict; -1 for a definite claim on a Neutral
// case (with the minimal grounding axioms); 0 otherwise, including every
// claim on a PremiseInconsistent case.
RewardSignal reward_signal(const Case& c, Label claimed,
                           int k = kDefaultCardinalityBound);
RewardSignal reward_signal(const Case& c, const ClassifiedCase& classified,
                           Label claimed, int k = kDefaultCardinalityBound);

struct CaseRow {
  std::string id;
  Label gold = Label::Neutral;
  ClassifiedCase classified;
  std::optional<Prediction> prediction;
  TagSet tags;
  std::optional<RewardSignal> reward;
  // Neutral cases only.
  std::optional<AbductionResult> entailment_axioms;
  std::optional<AbductionResult> contradiction_axioms;
};

struct Aggregates {
  int cases = 0;
  std::array<int, 4> verdict_histogram{};
  int label_shifts = 0;
  double shift_rate = 0.0;
  int entailment_to_neutral = 0;
  double entailment_to_neutral_share_of_shifts = 0.0;
  double entailment_to_neutral_rate_of_gold_entailment = 0.0;
  int matched_predictions = 0;
  int correct_predictions = 0;
  // Most frequent off-diagonal confusion cell (ties: row-major order).
  std::optional<std::pair<Label, Label>> dominant_error;
  int dominant_error_count = 0;
  int entailment_contradiction_confusions = 0;
  std::array<int, 3> tag_counts{};
  int reward_plus = 0;
  int reward_zero = 0;
  int reward_minus = 0;
};

struct Report {
  ShiftMatrix shift;
  ConfusionMatrix confusion;
  // Case id ascending.
  std::vector<CaseRow> rows;
  std::vector<std::string> premise_inconsistent;
  std::vector<std::string> missing_predictions;
  Aggregates aggregates;
};

struct EvalOptions {
  int cardinality_bound = kDefaultCardinalityBound;
  bool abduce_neutral = true;
};

// Throws UnknownCaseId for a prediction without a case. Cases without a
// prediction are listed in missing_predictions.
Report evaluate(std::span<const Case> cases,
                std::span<const Prediction> predictions,
                const EvalOptions& options = {});

nlohmann::ordered_json to_json(const Report& r);
nlohmann::ordered_json to_json(const AbductionResult& r);
nlohmann::ordered_json to_json(const Assignment& a);
std::string render_text(const Report& r);

}  // namespace gapcheck
