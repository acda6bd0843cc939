#include "gapcheck/case.hpp"

namespace gapcheck {

std::string_view to_string(Label l) {
  switch (l) {
    case Label::Entailment: return "entailment";
    case Label::Contradiction: return "contradiction";
    case Label::Neutral: return "neutral";
  }
  return "?";
}

std::optional<Label> label_from_string(std::string_view s) {
  for (auto l : {Label::Entailment, Label::Contradiction, Label::Neutral}) {
    if (to_string(l) == s) return l;
  }
  return std::nullopt;
}

std::string_view to_string(AxiomSource s) {
  switch (s) {
    case AxiomSource::BackgroundLaw: return "background-law";
    case AxiomSource::Context: return "context";
    case AxiomSource::Custom: return "custom";
  }
  return "?";
}

std::optional<AxiomSource> axiom_source_from_string(std::string_view s) {
  for (auto src :
       {AxiomSource::BackgroundLaw, AxiomSource::Context, AxiomSource::Custom}) {
    if (to_string(src) == s) return src;
  }
  return std::nullopt;
}

const Axiom* Case::find_axiom(std::string_view axiom_id) const {
  for (const auto& a : axiom_pool) {
    if (a.id == axiom_id) return &a;
  }
  return nullptr;
}

}  // namespace gapcheck
