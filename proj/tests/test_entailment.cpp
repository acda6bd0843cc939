#include <doctest.h>

#include "gapcheck/entailment.hpp"
#include "support/oracle.hpp"

using namespace gapcheck;

namespace {

ClassifiedCase run(std::initializer_list<const char*> premise, const char* hyp) {
  std::vector<Formula> p;
  for (const char* s : premise) p.push_back(parse(s));
  return classify(p, parse(hyp));
}

void check_witnesses(std::span<const Formula> premise, const Formula& hyp,
                     const ClassifiedCase& c) {
  REQUIRE(c.model_with_hypothesis);
  REQUIRE(c.model_without_hypothesis);
  const Formula p = conjoin(premise);
  CHECK(evaluate(p, *c.model_with_hypothesis));
  CHECK(evaluate(hyp, *c.model_with_hypothesis));
  CHECK(evaluate(p, *c.model_without_hypothesis));
  CHECK_FALSE(evaluate(hyp, *c.model_without_hypothesis));
}

}  // namespace

TEST_CASE("hypothesis in premise is entailed") {
  const auto c = run({"confidential(info)"}, "confidential(info)");
  CHECK(c.verdict == Verdict::Entailment);
  CHECK_FALSE(c.model_with_hypothesis);
  CHECK_FALSE(c.model_without_hypothesis);
}

TEST_CASE("direct negation contradicts") {
  CHECK(run({"!perm_share(third_party)"}, "perm_share(third_party)").verdict ==
        Verdict::Contradiction);
}

TEST_CASE("independent atoms are neutral with both witnesses") {
  const auto c = run({"ob_return(docs)"}, "ob_destroy(docs)");
  REQUIRE(c.verdict == Verdict::Neutral);
  CHECK(c.model_with_hypothesis->props.at("ob_return(docs)"));
  CHECK(c.model_with_hypothesis->props.at("ob_destroy(docs)"));
  CHECK(c.model_without_hypothesis->props.at("ob_return(docs)"));
  CHECK_FALSE(c.model_without_hypothesis->props.at("ob_destroy(docs)"));
}

TEST_CASE("tighter deadline entails the looser one") {
  CHECK(run({"[term_days <= 30]"}, "[term_days <= 60]").verdict == Verdict::Entailment);
  const std::vector<Formula> p{parse("[term_days <= 30]")};
  CHECK(testing::brute_three_way(p, parse("[term_days <= 60]")).verdict() ==
        Verdict::Entailment);
  CHECK(run({"[term_days <= 60]"}, "[term_days <= 30]").verdict == Verdict::Neutral);
}

TEST_CASE("contradictory premise is surfaced") {
  const auto c = run({"a", "!a"}, "b");
  CHECK(c.verdict == Verdict::PremiseInconsistent);
  CHECK_FALSE(c.model_with_hypothesis);
}

TEST_CASE("empty premise behaves as true") {
  CHECK(classify({}, parse("a | !a")).verdict == Verdict::Entailment);
  CHECK(classify({}, parse("a")).verdict == Verdict::Neutral);
}

TEST_CASE("verdict names round-trip") {
  for (Verdict v : {Verdict::Entailment, Verdict::Contradiction, Verdict::Neutral,
                    Verdict::PremiseInconsistent}) {
    CHECK(verdict_from_string(to_string(v)) == v);
  }
  CHECK(to_string(Verdict::PremiseInconsistent) == "premise_inconsistent");
  CHECK_FALSE(verdict_from_string("Entailment"));
}

TEST_CASE("classify matches the enumeration oracle and is conservative") {
  testing::FormulaGenerator gen(31);
  int seen[4] = {0, 0, 0, 0};
  for (int i = 0; i < 600; ++i) {
    const auto [premise, hyp] = gen.next_case();
    const auto oracle = testing::brute_three_way(premise, hyp);
    const auto c = classify(premise, hyp);
    INFO(pretty(conjoin(premise)), "  ⊢?  ", pretty(hyp));
    CHECK(c.verdict == oracle.verdict());
    ++seen[static_cast<int>(c.verdict)];
    // Never Entailment while a model of P & !H exists, never Contradiction
    // while a model of P & H exists.
    if (c.verdict == Verdict::Entailment) CHECK_FALSE(oracle.without_hypothesis_sat);
    if (c.verdict == Verdict::Contradiction) CHECK_FALSE(oracle.with_hypothesis_sat);
    if (c.verdict == Verdict::Neutral) check_witnesses(premise, hyp, c);
  }
  for (int v = 0; v < 4; ++v) CHECK(seen[v] > 0);
}

TEST_CASE("grounding is monotone") {
  testing::FormulaGenerator gen(32);
  int checked = 0;
  for (int i = 0; i < 800 && checked < 150; ++i) {
    auto [premise, hyp] = gen.next_case();
    if (classify(premise, hyp).verdict != Verdict::Entailment) continue;
    ++checked;
    premise.push_back(gen.next());
    const auto v = classify(premise, hyp).verdict;
    CHECK((v == Verdict::Entailment || v == Verdict::PremiseInconsistent));
  }
  CHECK(checked >= 50);
}

TEST_CASE("entailment of H is contradiction of !H") {
  testing::FormulaGenerator gen(33);
  for (int i = 0; i < 500; ++i) {
    const auto [premise, hyp] = gen.next_case();
    const auto a = classify(premise, hyp).verdict;
    if (a == Verdict::PremiseInconsistent) continue;
    const auto b = classify(premise, Formula::negation(hyp)).verdict;
    CHECK((a == Verdict::Entailment) == (b == Verdict::Contradiction));
    CHECK((a == Verdict::Contradiction) == (b == Verdict::Entailment));
  }
}
