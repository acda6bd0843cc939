#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "gapcheck/case.hpp"

namespace gapcheck {

// An external system's answer for one case, under audit.
struct Prediction {
  std::string case_id;
  Label predicted = Label::Neutral;
  // The system asserts its answer is formally grounded.
  bool claims_formal = false;
  std::string rationale;
};

// Newline-delimited JSON, one case per line with exactly the fields
// id, premise_text, premise_forms, hypothesis_text, hypothesis_form,
// gold_legal, axiom_pool. Blank lines are skipped. All-or-nothing: throws
// ParseError (1-based line) or DuplicateId.
std::vector<Case> read_dataset(std::istream& in);
std::vector<Case> load_dataset(const std::filesystem::path& path);

// Newline-delimited {id, predicted, claims_formal, rationale?}.
std::vector<Prediction> read_predictions(std::istream& in);
std::vector<Prediction> load_predictions(const std::filesystem::path& path);

nlohmann::ordered_json to_json(const Case& c);
nlohmann::ordered_json to_json(const Prediction& p);

}  // namespace gapcheck
