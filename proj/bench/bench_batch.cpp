// Serial vs OpenMP timings for batch classification and abduction.
//
//   bench_batch [--dataset F] [--copies N] [--pool N] [--reps N]

#include <CLI11.hpp>
#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>

#include "gapcheck/abduction.hpp"
#include "gapcheck/dataset.hpp"
#include "gapcheck/report.hpp"

using namespace gapcheck;

namespace {

template <typename F>
double best_of(int reps, F&& f) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void row(const char* name, double serial, double parallel, bool same) {
  std::printf("%-24s %10.4f %10.4f %8.2fx  %s\n", name, serial, parallel,
              parallel > 0 ? serial / parallel : 0.0, same ? "same" : "DIFFERENT");
}

// Each Neutral case again, with every other case's axioms added as distractors.
std::vector<Case> widened_neutral_cases(const std::vector<Case>& cases, std::size_t pool) {
  std::vector<Axiom> all;
  for (const auto& c : cases) {
    for (const auto& a : c.axiom_pool) {
      Axiom copy = a;
      copy.id = c.id + "." + a.id;
      all.push_back(copy);
    }
  }
  std::vector<Case> out;
  for (const auto& c : cases) {
    if (classify(c.premise_forms, c.hypothesis_form).verdict != Verdict::Neutral) continue;
    Case w = c;
    for (const auto& a : all) {
      if (w.axiom_pool.size() >= pool) break;
      if (a.id.rfind(c.id + ".", 0) != 0) w.axiom_pool.push_back(a);
    }
    out.push_back(std::move(w));
  }
  return out;
}

bool same_solutions(const AbductionResult& a, const AbductionResult& b) {
  if (a.solutions.size() != b.solutions.size()) return false;
  for (std::size_t i = 0; i < a.solutions.size(); ++i) {
    if (a.solutions[i].axiom_ids != b.solutions[i].axiom_ids) return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Serial vs OpenMP kernel timings"};
  std::string dataset = GAPCHECK_DEFAULT_DATASET;
  int copies = 50, reps = 3;
  std::size_t pool = 16;
  app.add_option("--dataset", dataset, "Dataset file (JSONL)");
  app.add_option("--copies", copies, "Replicate the dataset this many times")->check(CLI::PositiveNumber);
  app.add_option("--pool", pool, "Axiom pool size for abduction")->check(CLI::Range(1, 24));
  app.add_option("--reps", reps, "Repetitions, best time reported")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  try {
    const auto base = load_dataset(dataset);
    std::vector<Case> batch;
    for (int i = 0; i < copies; ++i) {
      for (const auto& c : base) {
        Case copy = c;
        copy.id = c.id + "#" + std::to_string(i);
        batch.push_back(std::move(copy));
      }
    }

    std::printf("threads: %d  cases: %zu  abduction pool: %zu\n", omp_get_max_threads(),
                batch.size(), pool);
    std::printf("%-24s %10s %10s %9s\n", "kernel", "serial s", "omp s", "speedup");

    std::vector<ClassifiedCase> s, p;
    const double ts = best_of(reps, [&] { s = classify_all_serial(batch); });
    const double tp = best_of(reps, [&] { p = classify_all(batch); });
    bool same = s.size() == p.size();
    for (std::size_t i = 0; same && i < s.size(); ++i) same = s[i].verdict == p[i].verdict;
    row("classify_all", ts, tp, same);

    const auto wide = widened_neutral_cases(base, pool);
    for (Target t : {Target::Entailment, Target::Contradiction}) {
      std::vector<AbductionResult> as, ap;
      const double as_t = best_of(reps, [&] {
        as.clear();
        for (const auto& c : wide) as.push_back(abduce_serial(c, t));
      });
      const double ap_t = best_of(reps, [&] {
        ap.clear();
        for (const auto& c : wide) ap.push_back(abduce(c, t));
      });
      bool eq = as.size() == ap.size();
      for (std::size_t i = 0; eq && i < as.size(); ++i) eq = same_solutions(as[i], ap[i]);
      row(t == Target::Entailment ? "abduce (entailment)" : "abduce (contradiction)", as_t,
          ap_t, eq);
      if (!eq) return 2;
    }
    return same ? 0 : 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
