// gapcheck: formal entailment audit for pre-formalized contract NLI cases.
//
// Exit codes: 0 success, 1 input error, 2 internal invariant breach.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "gapcheck/abduction.hpp"
#include "gapcheck/cnf.hpp"
#include "gapcheck/dataset.hpp"
#include "gapcheck/errors.hpp"
#include "gapcheck/report.hpp"
#include "gapcheck/review.hpp"
#include "gapcheck/review_http.hpp"

namespace fs = std::filesystem;
using namespace gapcheck;
using ojson = nlohmann::ordered_json;

namespace {

const Case& find_case(const std::vector<Case>& cases, const std::string& id) {
  for (const auto& c : cases) {
    if (c.id == id) return c;
  }
  throw UnknownCaseId(id);
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write '" + p.string() + "'");
  return out;
}

void run_classify(const std::string& dataset, const std::string& case_id) {
  auto cases = load_dataset(dataset);
  if (!case_id.empty()) cases = {find_case(cases, case_id)};
  const auto classified = classify_all(cases);
  for (const auto& c : classified) {
    ojson j;
    j["id"] = c.case_id;
    j["verdict"] = to_string(c.verdict);
    if (c.model_with_hypothesis) {
      j["witnesses"] = {{"with_hypothesis", to_json(*c.model_with_hypothesis)},
                        {"without_hypothesis", to_json(*c.model_without_hypothesis)}};
    }
    std::cout << j.dump() << '\n';
  }
}

void run_abduce(const std::string& dataset, const std::string& case_id,
                const std::string& target_name, int k) {
  const auto cases = load_dataset(dataset);
  const Case& c = find_case(cases, case_id);
  const auto target = target_from_string(target_name);
  if (!target) throw InputError("unknown target '" + target_name + "'");
  const auto result = abduce(c, *target, k);
  ojson j = to_json(result);
  for (std::size_t i = 0; i < result.solutions.size(); ++i) {
    j["solutions"][i]["question"] = review_question(c, result.solutions[i].axiom_ids);
  }
  std::cout << j.dump(2) << '\n';
}

void run_pairs(const std::string& dataset, const fs::path& out_path, int k) {
  const auto cases = load_dataset(dataset);
  const auto classified = classify_all(cases);
  auto out = open_out(out_path);
  int pairs = 0, entailed = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    if (classified[i].verdict != Verdict::Neutral) continue;
    const Case& c = cases[i];
    for (const auto& s : abduce(c, Target::Entailment, k).solutions) {
      const auto pair = build_minimal_pair(c, s.axiom_ids);
      ojson j;
      j["case_id"] = pair.case_id;
      j["axiom_ids"] = pair.axiom_ids;
      j["score"] = s.score;
      j["original_hypothesis"] = pretty(c.hypothesis_form);
      j["modified_hypothesis"] = pretty(pair.modified_hypothesis);
      j["verdict"] = to_string(pair.verdict);
      out << j.dump() << '\n';
      ++pairs;
      entailed += pair.verdict == Verdict::Entailment;
    }
  }
  std::cout << pairs << " minimal pairs written to " << out_path.string() << "; "
            << entailed << " classify as entailment\n";
  if (entailed != pairs) throw InvariantError("a minimal pair is not an entailment");
}

void emit_dimacs(const std::vector<Case>& cases, const fs::path& dir) {
  fs::create_directories(dir);
  for (const auto& c : cases) {
    const Formula premise = conjoin(c.premise_forms);
    const std::pair<const char*, Formula> queries[] = {
        {"premise", premise},
        {"premise_and_not_hypothesis",
         Formula::conjunction({premise, Formula::negation(c.hypothesis_form)})},
        {"premise_and_hypothesis", Formula::conjunction({premise, c.hypothesis_form})},
    };
    for (const auto& [name, f] : queries) {
      auto out = open_out(dir / (c.id + "." + name + ".cnf"));
      write_dimacs(out, tseitin(desugar(f)));
    }
  }
}

void run_eval(const std::string& dataset, const std::string& pred,
              const fs::path& report_out, const std::string& dimacs_dir, int k) {
  const auto cases = load_dataset(dataset);
  const auto predictions = load_predictions(pred);
  EvalOptions options;
  options.cardinality_bound = k;
  const auto report = evaluate(cases, predictions, options);
  open_out(report_out) << to_json(report).dump(2) << '\n';
  if (!dimacs_dir.empty()) emit_dimacs(cases, dimacs_dir);
  std::cout << render_text(report);
}

void run_serve(const std::string& dataset, const fs::path& log, const std::string& host,
               int port, const std::string& static_dir) {
  ReviewService service(load_dataset(dataset), log);
  std::optional<fs::path> ui;
  if (!static_dir.empty()) ui = static_dir;
  ReviewServer server(service, ui);
  std::cout << "serving " << service.size() << " cases on http://" << host << ':' << port
            << std::endl;
  if (!server.listen(host, port)) {
    throw InputError("cannot listen on " + host + ":" + std::to_string(port));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Formal entailment audit for contract NLI cases"};
  app.require_subcommand(1);

  std::string dataset, case_id, target = "entailment", pred, report_out, dimacs_dir,
                       out, log, host = "127.0.0.1", static_dir;
  int k = kDefaultCardinalityBound;
  int port = 8080;

  auto* classify_cmd = app.add_subcommand("classify", "Formal verdict per case");
  classify_cmd->add_option("--dataset", dataset, "Dataset file (JSONL)")->required();
  classify_cmd->add_option("--case", case_id, "Only this case");

  auto* abduce_cmd = app.add_subcommand("abduce", "Minimal axiom sets for a Neutral case");
  abduce_cmd->add_option("--dataset", dataset, "Dataset file (JSONL)")->required();
  abduce_cmd->add_option("--case", case_id, "Case id")->required();
  abduce_cmd->add_option("--target", target, "entailment or contradiction")
      ->check(CLI::IsMember({"entailment", "contradiction"}));
  abduce_cmd->add_option("-k", k, "Cardinality bound")->check(CLI::PositiveNumber);

  auto* pairs_cmd = app.add_subcommand("pairs", "Minimal pairs for every Neutral case");
  pairs_cmd->add_option("--dataset", dataset, "Dataset file (JSONL)")->required();
  pairs_cmd->add_option("--out", out, "Output file (JSONL)")->required();
  pairs_cmd->add_option("-k", k, "Cardinality bound")->check(CLI::PositiveNumber);

  auto* eval_cmd = app.add_subcommand("eval", "Score predictions against formal verdicts");
  eval_cmd->add_option("--dataset", dataset, "Dataset file (JSONL)")->required();
  eval_cmd->add_option("--pred", pred, "Predictions file (JSONL)")->required();
  eval_cmd->add_option("--report-out", report_out, "Report file (JSON)")->required();
  eval_cmd->add_option("--emit-dimacs", dimacs_dir, "Write each query's CNF here");
  eval_cmd->add_option("-k", k, "Cardinality bound")->check(CLI::PositiveNumber);

  auto* serve_cmd = app.add_subcommand("serve", "Run the review service");
  serve_cmd->add_option("--dataset", dataset, "Dataset file (JSONL)")->required();
  serve_cmd->add_option("--log", log, "Event log (JSONL, appended)")->required();
  serve_cmd->add_option("--port", port, "Port")->check(CLI::Range(1, 65535));
  serve_cmd->add_option("--host", host, "Bind address");
  serve_cmd->add_option("--static", static_dir, "Directory served at /");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*classify_cmd) run_classify(dataset, case_id);
    else if (*abduce_cmd) run_abduce(dataset, case_id, target, k);
    else if (*pairs_cmd) run_pairs(dataset, out, k);
    else if (*eval_cmd) run_eval(dataset, pred, report_out, dimacs_dir, k);
    else if (*serve_cmd) run_serve(dataset, log, host, port, static_dir);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
