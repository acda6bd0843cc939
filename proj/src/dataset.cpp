#include "gapcheck/dataset.hpp"

#include <fstream>
#include <set>

#include "gapcheck/errors.hpp"

namespace gapcheck {
namespace {

using json = nlohmann::json;

// Reads one JSON object per non-blank line; `handle` gets the 1-based line.
template <typename Handle>
void for_each_record(std::istream& in, Handle&& handle) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(number, std::string("malformed JSON: ") + e.what());
    }
    if (!record.is_object()) throw ParseError(number, "record is not an object");
    handle(record, number);
  }
}

void require_fields(const json& record, std::size_t line,
                    std::initializer_list<const char*> required,
                    std::initializer_list<const char*> optional = {}) {
  for (const char* f : required) {
    if (!record.contains(f)) {
      throw ParseError(line, std::string("missing field '") + f + "'");
    }
  }
  for (const auto& [key, value] : record.items()) {
    bool known = false;
    for (const char* f : required) known = known || key == f;
    for (const char* f : optional) known = known || key == f;
    if (!known) throw ParseError(line, "unknown field '" + key + "'");
  }
}

std::string string_field(const json& record, const char* field,
                         std::size_t line) {
  const auto& v = record.at(field);
  if (!v.is_string()) {
    throw ParseError(line, std::string("field '") + field + "' must be a string");
  }
  return v.get<std::string>();
}

Formula formula_field(const std::string& text, const std::string& field,
                      std::size_t line) {
  try {
    return parse(text);
  } catch (const FragmentError& e) {
    throw ParseError(line, "field '" + field + "': " + e.what());
  }
}

Axiom read_axiom(const json& record, std::size_t line, std::size_t index) {
  const std::string where = "axiom_pool[" + std::to_string(index) + "]";
  if (!record.is_object()) throw ParseError(line, where + " is not an object");
  for (const char* f : {"id", "form", "gloss", "source"}) {
    if (!record.contains(f) || !record.at(f).is_string()) {
      throw ParseError(line, where + " needs string field '" + f + "'");
    }
  }
  for (const auto& [key, value] : record.items()) {
    if (key != "id" && key != "form" && key != "gloss" && key != "source") {
      throw ParseError(line, where + " has unknown field '" + key + "'");
    }
  }
  Axiom a;
  a.id = record.at("id").get<std::string>();
  if (a.id.empty()) throw ParseError(line, where + ".id is empty");
  a.formula = formula_field(record.at("form").get<std::string>(),
                            where + ".form", line);
  a.gloss = record.at("gloss").get<std::string>();
  auto source = axiom_source_from_string(record.at("source").get<std::string>());
  if (!source) {
    throw ParseError(line, where +
                               ".source must be one of background-law, "
                               "context, custom");
  }
  a.source = *source;
  return a;
}

Case read_case(const json& record, std::size_t line) {
  require_fields(record, line,
                 {"id", "premise_text", "premise_forms", "hypothesis_text",
                  "hypothesis_form", "gold_legal", "axiom_pool"});
  Case c;
  c.id = string_field(record, "id", line);
  if (c.id.empty()) throw ParseError(line, "field 'id' is empty");
  c.premise_text = string_field(record, "premise_text", line);
  c.hypothesis_text = string_field(record, "hypothesis_text", line);

  const auto& forms = record.at("premise_forms");
  if (!forms.is_array()) {
    throw ParseError(line, "field 'premise_forms' must be an array");
  }
  for (std::size_t i = 0; i < forms.size(); ++i) {
    const std::string field = "premise_forms[" + std::to_string(i) + "]";
    if (!forms[i].is_string()) throw ParseError(line, field + " must be a string");
    c.premise_forms.push_back(
        formula_field(forms[i].get<std::string>(), field, line));
  }
  c.hypothesis_form = formula_field(string_field(record, "hypothesis_form", line),
                                    "hypothesis_form", line);

  auto gold = label_from_string(string_field(record, "gold_legal", line));
  if (!gold) {
    throw ParseError(line,
                     "field 'gold_legal' must be entailment, contradiction or "
                     "neutral");
  }
  c.gold_legal = *gold;

  const auto& pool = record.at("axiom_pool");
  if (!pool.is_array()) throw ParseError(line, "field 'axiom_pool' must be an array");
  std::set<std::string> ids;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    Axiom a = read_axiom(pool[i], line, i);
    if (!ids.insert(a.id).second) {
      throw ParseError(line, "duplicate axiom id '" + a.id + "'");
    }
    c.axiom_pool.push_back(std::move(a));
  }
  return c;
}

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  return in;
}

}  // namespace

std::vector<Case> read_dataset(std::istream& in) {
  std::vector<Case> cases;
  std::set<std::string> ids;
  for_each_record(in, [&](const json& record, std::size_t line) {
    Case c = read_case(record, line);
    if (!ids.insert(c.id).second) throw DuplicateId(c.id);
    cases.push_back(std::move(c));
  });
  return cases;
}

std::vector<Case> load_dataset(const std::filesystem::path& path) {
  auto in = open(path);
  return read_dataset(in);
}

std::vector<Prediction> read_predictions(std::istream& in) {
  std::vector<Prediction> preds;
  std::set<std::string> ids;
  for_each_record(in, [&](const json& record, std::size_t line) {
    require_fields(record, line, {"id", "predicted", "claims_formal"},
                   {"rationale"});
    Prediction p;
    p.case_id = string_field(record, "id", line);
    auto label = label_from_string(string_field(record, "predicted", line));
    if (!label) {
      throw ParseError(line,
                       "field 'predicted' must be entailment, contradiction or "
                       "neutral");
    }
    p.predicted = *label;
    if (!record.at("claims_formal").is_boolean()) {
      throw ParseError(line, "field 'claims_formal' must be a boolean");
    }
    p.claims_formal = record.at("claims_formal").get<bool>();
    if (record.contains("rationale")) {
      p.rationale = string_field(record, "rationale", line);
    }
    if (!ids.insert(p.case_id).second) throw DuplicateId(p.case_id);
    preds.push_back(std::move(p));
  });
  return preds;
}

std::vector<Prediction> load_predictions(const std::filesystem::path& path) {
  auto in = open(path);
  return read_predictions(in);
}

nlohmann::ordered_json to_json(const Case& c) {
  nlohmann::ordered_json j;
  j["id"] = c.id;
  j["premise_text"] = c.premise_text;
  j["premise_forms"] = nlohmann::ordered_json::array();
  for (const auto& f : c.premise_forms) j["premise_forms"].push_back(pretty(f));
  j["hypothesis_text"] = c.hypothesis_text;
  j["hypothesis_form"] = pretty(c.hypothesis_form);
  j["gold_legal"] = to_string(c.gold_legal);
  j["axiom_pool"] = nlohmann::ordered_json::array();
  for (const auto& a : c.axiom_pool) {
    j["axiom_pool"].push_back({{"id", a.id},
                               {"form", pretty(a.formula)},
                               {"gloss", a.gloss},
                               {"source", to_string(a.source)}});
  }
  return j;
}

nlohmann::ordered_json to_json(const Prediction& p) {
  nlohmann::ordered_json j;
  j["id"] = p.case_id;
  j["predicted"] = to_string(p.predicted);
  j["claims_formal"] = p.claims_formal;
  if (!p.rationale.empty()) j["rationale"] = p.rationale;
  return j;
}

}  // namespace gapcheck
