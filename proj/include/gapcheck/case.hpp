#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gapcheck/formula.hpp"

namespace gapcheck {

// Three-way NLI label as used by annotators and external predictors.
enum class Label { Entailment, Contradiction, Neutral };

std::string_view to_string(Label l);
std::optional<Label> label_from_string(std::string_view s);

enum class AxiomSource { BackgroundLaw, Context, Custom };

std::string_view to_string(AxiomSource s);
std::optional<AxiomSource> axiom_source_from_string(std::string_view s);

struct Axiom {
  std::string id;
  Formula formula = Formula::constant(true);
  std::string gloss;
  AxiomSource source = AxiomSource::Custom;
};

// One NLI instance with its pre-formalized premise clauses and hypothesis.
// gold_legal is the annotators' interpretive label; the formal verdict is
// always computed.
struct Case {
  std::string id;
  std::string premise_text;
  std::vector<Formula> premise_forms;
  std::string hypothesis_text;
  Formula hypothesis_form = Formula::constant(true);
  Label gold_legal = Label::Neutral;
  std::vector<Axiom> axiom_pool;

  const Axiom* find_axiom(std::string_view axiom_id) const;
};

}  // namespace gapcheck
