#include "gapcheck/report.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <sstream>

#include "gapcheck/errors.hpp"
#include "gapcheck/parallel.hpp"

namespace gapcheck {

using ojson = nlohmann::ordered_json;

namespace {

std::size_t index_of(Label l) { return static_cast<std::size_t>(l); }
std::size_t index_of(Verdict v) { return static_cast<std::size_t>(v); }
std::size_t index_of(FailureTag t) { return static_cast<std::size_t>(t); }

double ratio(int num, int den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

std::optional<Label> label_of(Verdict v) {
  switch (v) {
    case Verdict::Entailment: return Label::Entailment;
    case Verdict::Contradiction: return Label::Contradiction;
    case Verdict::Neutral: return Label::Neutral;
    case Verdict::PremiseInconsistent: return std::nullopt;
  }
  return std::nullopt;
}

std::string_view to_string(FailureTag t) {
  switch (t) {
    case FailureTag::AssumptionInjection: return "assumption_injection";
    case FailureTag::ScopeLaundering: return "scope_laundering";
    case FailureTag::ImplicitConstraintBlindness:
      return "implicit_constraint_blindness";
  }
  return "?";
}

TagSet tag_failures(Verdict verdict, const Prediction& prediction) {
  const auto formal = label_of(verdict);
  if (!formal) {
    throw DegenerateCase("case '" + prediction.case_id +
                         "' has an inconsistent premise; no tags apply");
  }
  const bool agrees = prediction.predicted == *formal;
  TagSet tags;
  if (verdict == Verdict::Neutral && prediction.predicted != Label::Neutral) {
    tags.insert(FailureTag::AssumptionInjection);
  }
  if (prediction.claims_formal && !agrees) {
    tags.insert(FailureTag::ScopeLaundering);
  }
  if (verdict != Verdict::Neutral && !agrees) {
    tags.insert(FailureTag::ImplicitConstraintBlindness);
  }
  return tags;
}

std::vector<ClassifiedCase> classify_all(std::span<const Case> cases) {
  std::vector<ClassifiedCase> out(cases.size());
  parallel_for(cases.size(), [&](std::size_t i) {
    out[i] = classify(cases[i].premise_forms, cases[i].hypothesis_form,
                      cases[i].id);
  });
  return out;
}

std::vector<ClassifiedCase> classify_all_serial(std::span<const Case> cases) {
  std::vector<ClassifiedCase> out;
  out.reserve(cases.size());
  for (const auto& c : cases) {
    out.push_back(classify(c.premise_forms, c.hypothesis_form, c.id));
  }
  return out;
}

int& ShiftMatrix::at(Label gold, Verdict v) {
  return counts[index_of(gold)][index_of(v)];
}

int ShiftMatrix::at(Label gold, Verdict v) const {
  return counts[index_of(gold)][index_of(v)];
}

int ShiftMatrix::total() const {
  int n = 0;
  for (const auto& row : counts) {
    for (int c : row) n += c;
  }
  return n;
}

int ShiftMatrix::shifted() const {
  int same = 0;
  for (Label l : kLabels) same += at(l, static_cast<Verdict>(index_of(l)));
  return total() - same;
}

ShiftResult compute_shift(std::span<const Case> cases) {
  ShiftResult out;
  out.verdicts = classify_all(cases);
  for (std::size_t i = 0; i < cases.size(); ++i) {
    ++out.matrix.at(cases[i].gold_legal, out.verdicts[i].verdict);
  }
  return out;
}

int& ConfusionMatrix::at(Label formal, Label predicted) {
  return counts[index_of(formal)][index_of(predicted)];
}

int ConfusionMatrix::at(Label formal, Label predicted) const {
  return counts[index_of(formal)][index_of(predicted)];
}

int ConfusionMatrix::total() const {
  int n = 0;
  for (const auto& row : counts) {
    for (int c : row) n += c;
  }
  return n;
}

RewardSignal reward_signal(const Case& c, Label claimed, int k) {
  return reward_signal(
      c, classify(c.premise_forms, c.hypothesis_form, c.id), claimed, k);
}

RewardSignal reward_signal(const Case& c, const ClassifiedCase& classified,
                           Label claimed, int k) {
  RewardSignal out;
  const auto formal = label_of(classified.verdict);
  if (!formal) return out;
  if (claimed == *formal) {
    out.reward = 1;
    return out;
  }
  if (classified.verdict == Verdict::Neutral) {
    out.reward = -1;
    const Target target = claimed == Label::Entailment ? Target::Entailment
                                                       : Target::Contradiction;
    out.required_axioms = abduce(c, target, k);
  }
  return out;
}

namespace {

Aggregates aggregate(const Report& r) {
  Aggregates a;
  a.cases = r.shift.total();
  for (const auto& row : r.rows) ++a.verdict_histogram[index_of(row.classified.verdict)];
  a.label_shifts = r.shift.shifted();
  a.shift_rate = ratio(a.label_shifts, a.cases);
  a.entailment_to_neutral = r.shift.at(Label::Entailment, Verdict::Neutral);
  a.entailment_to_neutral_share_of_shifts =
      ratio(a.entailment_to_neutral, a.label_shifts);
  int gold_entailment = 0;
  for (Verdict v : kVerdicts) gold_entailment += r.shift.at(Label::Entailment, v);
  a.entailment_to_neutral_rate_of_gold_entailment =
      ratio(a.entailment_to_neutral, gold_entailment);

  a.matched_predictions = r.confusion.total();
  for (Label formal : kLabels) {
    a.correct_predictions += r.confusion.at(formal, formal);
    for (Label pred : kLabels) {
      if (formal == pred) continue;
      const int n = r.confusion.at(formal, pred);
      if (n > a.dominant_error_count) {
        a.dominant_error_count = n;
        a.dominant_error = std::make_pair(formal, pred);
      }
    }
  }
  a.entailment_contradiction_confusions =
      r.confusion.at(Label::Entailment, Label::Contradiction) +
      r.confusion.at(Label::Contradiction, Label::Entailment);

  for (const auto& row : r.rows) {
    for (FailureTag t : row.tags) ++a.tag_counts[index_of(t)];
    if (!row.reward) continue;
    if (row.reward->reward > 0) ++a.reward_plus;
    else if (row.reward->reward < 0) ++a.reward_minus;
    else ++a.reward_zero;
  }
  return a;
}

}  // namespace

Report evaluate(std::span<const Case> cases,
                std::span<const Prediction> predictions,
                const EvalOptions& options) {
  std::map<std::string, const Prediction*> by_id;
  for (const auto& p : predictions) by_id.emplace(p.case_id, &p);
  for (const auto& p : predictions) {
    const bool known = std::any_of(cases.begin(), cases.end(),
                                   [&](const Case& c) { return c.id == p.case_id; });
    if (!known) throw UnknownCaseId(p.case_id);
  }

  Report report;
  auto shift = compute_shift(cases);
  report.shift = shift.matrix;

  std::vector<std::size_t> order(cases.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return cases[a].id < cases[b].id;
  });

  for (std::size_t i : order) {
    const Case& c = cases[i];
    CaseRow row;
    row.id = c.id;
    row.gold = c.gold_legal;
    row.classified = std::move(shift.verdicts[i]);
    const Verdict verdict = row.classified.verdict;

    if (verdict == Verdict::PremiseInconsistent) {
      report.premise_inconsistent.push_back(c.id);
    }
    if (verdict == Verdict::Neutral && options.abduce_neutral) {
      row.entailment_axioms =
          abduce(c, Target::Entailment, options.cardinality_bound);
      row.contradiction_axioms =
          abduce(c, Target::Contradiction, options.cardinality_bound);
    }

    auto it = by_id.find(c.id);
    if (it == by_id.end()) {
      if (!predictions.empty()) report.missing_predictions.push_back(c.id);
    } else {
      const Prediction& p = *it->second;
      row.prediction = p;
      if (auto formal = label_of(verdict)) {
        ++report.confusion.at(*formal, p.predicted);
        row.tags = tag_failures(verdict, p);
      }
      RewardSignal reward;
      if (verdict == Verdict::Neutral && p.predicted != Label::Neutral &&
          options.abduce_neutral) {
        // Reuse the enumeration already done for the row.
        reward.reward = -1;
        reward.required_axioms = p.predicted == Label::Entailment
                                     ? row.entailment_axioms
                                     : row.contradiction_axioms;
      } else {
        reward = reward_signal(c, row.classified, p.predicted,
                               options.cardinality_bound);
      }
      row.reward = std::move(reward);
    }
    report.rows.push_back(std::move(row));
  }
  report.aggregates = aggregate(report);
  return report;
}

// ---------------------------------------------------------------------------
// Rendering

ojson to_json(const Assignment& a) {
  ojson j;
  j["props"] = ojson::object();
  for (const auto& [k, v] : a.props) j["props"][k] = v;
  j["ints"] = ojson::object();
  for (const auto& [k, v] : a.ints) j["ints"][k] = v;
  return j;
}

ojson to_json(const AbductionResult& r) {
  ojson j;
  j["case_id"] = r.case_id;
  j["target"] = to_string(r.target);
  j["exhaustive_up_to"] = r.exhaustive_up_to;
  j["solutions"] = ojson::array();
  for (const auto& s : r.solutions) {
    j["solutions"].push_back({{"axiom_ids", s.axiom_ids}, {"score", s.score}});
  }
  return j;
}

namespace {

ojson label_list() {
  ojson j = ojson::array();
  for (Label l : kLabels) j.push_back(to_string(l));
  return j;
}

ojson tags_json(const TagSet& tags) {
  ojson j = ojson::array();
  for (FailureTag t : tags) j.push_back(to_string(t));
  return j;
}

ojson row_json(const CaseRow& row) {
  ojson j;
  j["id"] = row.id;
  j["gold_legal"] = to_string(row.gold);
  j["verdict"] = to_string(row.classified.verdict);
  j["shifted"] = label_of(row.classified.verdict) != row.gold;
  if (row.prediction) {
    j["predicted"] = to_string(row.prediction->predicted);
    j["claims_formal"] = row.prediction->claims_formal;
  } else {
    j["predicted"] = nullptr;
  }
  j["tags"] = tags_json(row.tags);
  if (row.reward) {
    ojson reward;
    reward["value"] = row.reward->reward;
    if (row.reward->required_axioms) {
      reward["required_axioms"] = to_json(*row.reward->required_axioms);
    }
    j["reward"] = reward;
  } else {
    j["reward"] = nullptr;
  }
  if (row.entailment_axioms || row.contradiction_axioms) {
    ojson ab;
    for (const auto* r : {&row.entailment_axioms, &row.contradiction_axioms}) {
      if (!*r) continue;
      ojson t;
      t["solutions"] = (*r)->solutions.size();
      if ((*r)->solutions.empty()) {
        t["best"] = nullptr;
      } else {
        t["best"] = {{"axiom_ids", (*r)->solutions.front().axiom_ids},
                     {"score", (*r)->solutions.front().score}};
      }
      ab[std::string(to_string((*r)->target))] = t;
    }
    j["abduction"] = ab;
  } else {
    j["abduction"] = nullptr;
  }
  return j;
}

}  // namespace

ojson to_json(const Report& r) {
  ojson j;
  ojson shift;
  shift["rows"] = label_list();
  shift["columns"] = ojson::array();
  for (Verdict v : kVerdicts) shift["columns"].push_back(to_string(v));
  shift["counts"] = r.shift.counts;
  j["shift_matrix"] = shift;

  ojson confusion;
  confusion["rows"] = label_list();
  confusion["columns"] = label_list();
  confusion["counts"] = r.confusion.counts;
  j["confusion"] = confusion;

  j["per_case"] = ojson::array();
  for (const auto& row : r.rows) j["per_case"].push_back(row_json(row));

  const Aggregates& a = r.aggregates;
  ojson agg;
  agg["cases"] = a.cases;
  ojson hist;
  for (Verdict v : kVerdicts) {
    hist[std::string(to_string(v))] = a.verdict_histogram[index_of(v)];
  }
  agg["verdict_histogram"] = hist;
  agg["label_shifts"] = a.label_shifts;
  agg["shift_rate"] = a.shift_rate;
  agg["entailment_to_neutral"] = a.entailment_to_neutral;
  agg["entailment_to_neutral_share_of_shifts"] =
      a.entailment_to_neutral_share_of_shifts;
  agg["entailment_to_neutral_rate_of_gold_entailment"] =
      a.entailment_to_neutral_rate_of_gold_entailment;
  agg["matched_predictions"] = a.matched_predictions;
  agg["correct_predictions"] = a.correct_predictions;
  if (a.dominant_error) {
    agg["dominant_error"] = {{"formal", to_string(a.dominant_error->first)},
                             {"predicted", to_string(a.dominant_error->second)},
                             {"count", a.dominant_error_count}};
  } else {
    agg["dominant_error"] = nullptr;
  }
  agg["entailment_contradiction_confusions"] =
      a.entailment_contradiction_confusions;
  ojson tags;
  for (auto t : {FailureTag::AssumptionInjection, FailureTag::ScopeLaundering,
                 FailureTag::ImplicitConstraintBlindness}) {
    tags[std::string(to_string(t))] = a.tag_counts[index_of(t)];
  }
  agg["tag_counts"] = tags;
  agg["reward"] = {{"plus", a.reward_plus},
                   {"zero", a.reward_zero},
                   {"minus", a.reward_minus}};
  agg["premise_inconsistent"] = r.premise_inconsistent;
  agg["missing_predictions"] = r.missing_predictions;
  j["aggregates"] = agg;
  return j;
}

std::string render_text(const Report& r) {
  std::ostringstream out;
  auto cell = [&](const auto& v, int width) { out << std::setw(width) << v; };

  out << "Label shift (gold legal label x formal verdict)\n";
  cell("", 15);
  for (Verdict v : kVerdicts) cell(to_string(v), 22);
  out << '\n';
  for (Label l : kLabels) {
    out << std::left;
    cell(to_string(l), 15);
    out << std::right;
    for (Verdict v : kVerdicts) cell(r.shift.at(l, v), 22);
    out << '\n';
  }

  out << "\nConfusion (formal verdict x predicted label)\n";
  cell("", 15);
  for (Label l : kLabels) cell(to_string(l), 15);
  out << '\n';
  for (Label f : kLabels) {
    out << std::left;
    cell(to_string(f), 15);
    out << std::right;
    for (Label p : kLabels) cell(r.confusion.at(f, p), 15);
    out << '\n';
  }

  out << "\nPer case\n" << std::left;
  cell("id", 12);
  cell("gold", 15);
  cell("verdict", 22);
  cell("predicted", 15);
  cell("reward", 8);
  out << "tags\n";
  for (const auto& row : r.rows) {
    cell(row.id, 12);
    cell(to_string(row.gold), 15);
    cell(to_string(row.classified.verdict), 22);
    cell(row.prediction ? to_string(row.prediction->predicted) : "-", 15);
    cell(row.reward ? std::to_string(row.reward->reward) : "-", 8);
    if (row.tags.empty()) out << '-';
    bool first = true;
    for (FailureTag t : row.tags) {
      out << (first ? "" : ",") << to_string(t);
      first = false;
    }
    out << '\n';
  }
  out << std::right;

  const Aggregates& a = r.aggregates;
  out << "\ncases: " << a.cases << "  label shifts: " << a.label_shifts
      << "  entailment->neutral: " << a.entailment_to_neutral << '\n';
  out << "matched predictions: " << a.matched_predictions
      << "  correct: " << a.correct_predictions
      << "  entailment<->contradiction confusions: "
      << a.entailment_contradiction_confusions << '\n';
  if (a.dominant_error) {
    out << "dominant error: " << to_string(a.dominant_error->first) << " -> "
        << to_string(a.dominant_error->second) << " (" << a.dominant_error_count
        << ")\n";
  }
  out << "tags: assumption_injection=" << a.tag_counts[0]
      << " scope_laundering=" << a.tag_counts[1]
      << " implicit_constraint_blindness=" << a.tag_counts[2] << '\n';
  if (!r.premise_inconsistent.empty()) {
    out << "premise inconsistent:";
    for (const auto& id : r.premise_inconsistent) out << ' ' << id;
    out << '\n';
  }
  if (!r.missing_predictions.empty()) {
    out << "missing predictions:";
    for (const auto& id : r.missing_predictions) out << ' ' << id;
    out << '\n';
  }
  return out.str();
}

}  // namespace gapcheck
