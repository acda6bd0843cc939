#include <doctest.h>

#include "gapcheck/abduction.hpp"
#include "gapcheck/errors.hpp"
#include "support/oracle.hpp"

using namespace gapcheck;

namespace {

Case make_case(const char* p, const char* h,
               std::vector<std::pair<const char*, const char*>> pool) {
  Case c;
  c.id = "c";
  c.premise_forms = {parse(p)};
  c.hypothesis_form = parse(h);
  for (auto [id, f] : pool) {
    Axiom a;
    a.id = id;
    a.formula = parse(f);
    a.gloss = std::string("gloss for ") + id;
    c.axiom_pool.push_back(a);
  }
  return c;
}

std::vector<std::vector<std::string>> ids_of(const AbductionResult& r) {
  std::vector<std::vector<std::string>> out;
  for (const auto& s : r.solutions) out.push_back(s.axiom_ids);
  return out;
}

std::vector<const Axiom*> resolve(const Case& c, const std::vector<std::string>& ids) {
  std::vector<const Axiom*> out;
  for (const auto& id : ids) out.push_back(c.find_axiom(id));
  return out;
}

using Sets = std::vector<std::vector<std::string>>;

Sets sorted_ids(const AbductionResult& r) {
  auto out = ids_of(r);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("single bridging axiom is found, irrelevant one is not") {
  const Case c = make_case("a", "b", {{"a1", "a -> b"}, {"a2", "c"}});
  const auto r = abduce(c, Target::Entailment);
  CHECK(ids_of(r) == Sets{{"a1"}});
  CHECK(r.solutions[0].score == 103);
  CHECK(r.exhaustive_up_to == 3);
  CHECK(ids_of(r) == testing::brute_abduce(c, Target::Entailment, 3));
}

TEST_CASE("axioms inconsistent with the premise are rejected") {
  const Case c = make_case("a", "b", {{"a3", "!a"}});
  CHECK(abduce(c, Target::Entailment).solutions.empty());
  CHECK(abduce(c, Target::Contradiction).solutions.empty());
}

TEST_CASE("a chain needs both axioms") {
  const Case c = make_case("a", "b", {{"a1", "a -> c"}, {"a2", "c -> b"}});
  const auto r = abduce(c, Target::Entailment, 2);
  CHECK(ids_of(r) == Sets{{"a1", "a2"}});
  CHECK(r.solutions[0].score == 206);
  CHECK(abduce(c, Target::Entailment, 1).solutions.empty());
  CHECK(ids_of(r) == testing::brute_abduce(c, Target::Entailment, 2));
}

TEST_CASE("contradiction target and score ordering") {
  const Case c = make_case("a & [d <= 10]", "b",
                           {{"z9", "!b"}, {"m1", "a -> !b | c & !c"}, {"k2", "[d <= 5] -> b"},
                            {"k3", "[d <= 20] -> !b"}});
  const auto r = abduce(c, Target::Contradiction);
  CHECK(sorted_ids(r) == testing::brute_abduce(c, Target::Contradiction, 3));
  CHECK(ids_of(r) == Sets{{"z9"}, {"k3"}, {"m1"}});
  for (std::size_t i = 1; i < r.solutions.size(); ++i) {
    CHECK(r.solutions[i - 1].score <= r.solutions[i].score);
  }
}

TEST_CASE("equal scores break ties on ids") {
  const Case c = make_case("a", "b", {{"y", "a -> b"}, {"x", "c -> b"}, {"w", "a -> b"}});
  const auto r = abduce(c, Target::Entailment);
  CHECK(ids_of(r) == Sets{{"w"}, {"y"}});
}

TEST_CASE("preconditions") {
  CHECK_THROWS_AS(abduce(make_case("a", "a", {}), Target::Entailment), NotNeutral);
  CHECK_THROWS_AS(abduce_serial(make_case("a", "!a", {}), Target::Entailment), NotNeutral);
  CHECK_THROWS_AS(abduce(make_case("a & !a", "b", {}), Target::Entailment), NotNeutral);
  CHECK_THROWS_AS(abduce(make_case("a", "b", {}), Target::Entailment, 0), InputError);
  Case big = make_case("a", "b", {});
  for (int i = 0; i < 25; ++i) big.axiom_pool.push_back({"x" + std::to_string(i), parse("c")});
  CHECK_THROWS_AS(abduce(big, Target::Entailment), PoolTooLarge);
  big.axiom_pool.pop_back();
  CHECK_NOTHROW(abduce(big, Target::Entailment, 1));
}

TEST_CASE("score is 100 per axiom plus node counts") {
  const Case c = make_case("a", "b", {{"a1", "a -> c"}, {"a2", "c -> b"}});
  CHECK(score(resolve(c, {"a1"})) == 103);
  CHECK(score(resolve(c, {"a1", "a2"})) == 206);
  CHECK_THROWS_AS(score(std::vector<const Axiom*>{}), InputError);
  CHECK(score(resolve(c, {"a1"}), ScoreWeights{10, 2}) == 16);
}

TEST_CASE("minimal pairs become entailments") {
  const Case one = make_case("a", "b", {{"a1", "a -> b"}});
  const auto p1 = build_minimal_pair(one, std::vector<std::string>{"a1"});
  CHECK(pretty(p1.modified_hypothesis) == "(a -> b) -> b");
  CHECK(p1.verdict == Verdict::Entailment);

  const Case two = make_case("a", "b", {{"a1", "a -> c"}, {"a2", "c -> b"}});
  const auto p2 = build_minimal_pair(two, std::vector<std::string>{"a1", "a2"});
  CHECK(pretty(p2.modified_hypothesis) == "(a -> c) & (c -> b) -> b");
  CHECK(p2.verdict == Verdict::Entailment);
  CHECK(classify(two.premise_forms, p2.modified_hypothesis).verdict == Verdict::Entailment);

  CHECK_THROWS_AS(build_minimal_pair(one, std::vector<std::string>{}), InputError);
  CHECK_THROWS_AS(build_minimal_pair(one, std::vector<std::string>{"nope"}), UnknownAxiomId);
}

TEST_CASE("review questions list one line per axiom") {
  Case c = make_case("a", "b", {{"a1", "a -> c"}, {"a2", "c -> b"}});
  const std::string q1 = review_question(c, std::vector<std::string>{"a1"});
  CHECK(q1 == std::string(kReviewQuestion) + "\n- gloss for a1 :: a -> c");
  const std::string q2 = review_question(c, std::vector<std::string>{"a1", "a2"});
  CHECK(q2 == std::string(kReviewQuestion) + "\n- gloss for a1 :: a -> c\n- gloss for a2 :: c -> b");
  c.axiom_pool[0].gloss = "spans\ntwo\r\nlines";
  const std::string q3 = review_question(c, std::vector<std::string>{"a1"});
  CHECK(q3 == std::string(kReviewQuestion) + "\n- spans two  lines :: a -> c");
}

TEST_CASE("abduction matches brute-force subset enumeration on random cases") {
  int nonempty = 0, multi = 0;
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const Case c = testing::random_neutral_case(seed, 7);
    for (Target t : {Target::Entailment, Target::Contradiction}) {
      const auto r = abduce(c, t, 3);
      INFO("seed ", seed, " target ", to_string(t));
      CHECK(sorted_ids(r) == testing::brute_abduce(c, t, 3));
      if (!r.solutions.empty()) ++nonempty;
      for (const auto& s : r.solutions) multi += s.axiom_ids.size() > 1;

      for (std::size_t i = 0; i < r.solutions.size(); ++i) {
        const auto axioms = resolve(c, r.solutions[i].axiom_ids);
        CHECK(r.solutions[i].score == score(axioms));
        // Consistency filter.
        std::vector<Formula> pa = c.premise_forms;
        for (const Axiom* a : axioms) pa.push_back(a->formula);
        CHECK(solve_conjunction(pa).status == SatStatus::Sat);
        // Dropping any axiom breaks grounding.
        for (std::size_t drop = 0; drop < axioms.size(); ++drop) {
          auto fewer = axioms;
          fewer.erase(fewer.begin() + static_cast<std::ptrdiff_t>(drop));
          std::vector<Formula> q = c.premise_forms;
          for (const Axiom* a : fewer) q.push_back(a->formula);
          q.push_back(t == Target::Entailment ? Formula::negation(c.hypothesis_form)
                                              : c.hypothesis_form);
          CHECK(solve_conjunction(q).status == SatStatus::Sat);
        }
        // Antichain.
        for (std::size_t j = 0; j < r.solutions.size(); ++j) {
          if (i == j) continue;
          const auto& a = r.solutions[i].axiom_ids;
          const auto& b = r.solutions[j].axiom_ids;
          CHECK_FALSE(std::includes(b.begin(), b.end(), a.begin(), a.end()));
        }
        if (t == Target::Entailment) {
          CHECK(build_minimal_pair(c, r.solutions[i].axiom_ids).verdict == Verdict::Entailment);
        }
      }
    }
  }
  CHECK(nonempty > 30);
  CHECK(multi > 5);
}

TEST_CASE("parallel and serial abduction agree") {
  for (std::uint64_t seed = 100; seed < 130; ++seed) {
    const Case c = testing::random_neutral_case(seed, 9);
    for (Target t : {Target::Entailment, Target::Contradiction}) {
      const auto a = abduce(c, t, 3);
      const auto b = abduce_serial(c, t, 3);
      CHECK(ids_of(a) == ids_of(b));
    }
  }
}
