#include "gapcheck/review.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <ctime>
#include <fstream>
#include <mutex>
#include <set>

#include "gapcheck/errors.hpp"
#include "gapcheck/report.hpp"

namespace gapcheck {

using ojson = nlohmann::ordered_json;

std::string_view to_string(ReviewStatus s) {
  switch (s) {
    case ReviewStatus::AutoClassified: return "AutoClassified";
    case ReviewStatus::NeedsReview: return "NeedsReview";
    case ReviewStatus::ResolvedEntailment: return "ResolvedEntailment";
    case ReviewStatus::ResolvedContradiction: return "ResolvedContradiction";
    case ReviewStatus::GenuinelyUnderspecified: return "GenuinelyUnderspecified";
  }
  return "?";
}

Verdict CaseReviewState::effective_verdict() const {
  if (status == ReviewStatus::ResolvedEntailment) return Verdict::Entailment;
  if (status == ReviewStatus::ResolvedContradiction) return Verdict::Contradiction;
  return classified.verdict;
}

std::string utc_timestamp_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ojson to_json(const ReviewEvent& e) {
  ojson j;
  j["timestamp"] = e.timestamp;
  j["type"] = "answer";
  j["case_id"] = e.case_id;
  j["axiom_set"] = e.axiom_set;
  j["answer"] = e.yes ? "yes" : "no";
  j["reviewer"] = e.reviewer;
  return j;
}

ReviewEvent review_event_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("event is not an object");
  static const std::set<std::string> kFields = {"timestamp", "type",   "case_id",
                                                "axiom_set", "answer", "reviewer"};
  for (const auto& [key, value] : j.items()) {
    if (!kFields.count(key)) throw InputError("unknown field '" + key + "'");
  }
  auto str = [&](const char* field) -> std::string {
    if (!j.contains(field)) throw InputError(std::string("missing field '") + field + "'");
    if (!j[field].is_string()) throw InputError(std::string("field '") + field + "' must be a string");
    return j[field].get<std::string>();
  };
  ReviewEvent e;
  e.timestamp = str("timestamp");
  if (str("type") != "answer") throw InputError("field 'type' must be \"answer\"");
  e.case_id = str("case_id");
  const std::string answer = str("answer");
  if (answer != "yes" && answer != "no") throw InputError("field 'answer' must be yes or no");
  e.yes = answer == "yes";
  e.reviewer = str("reviewer");
  if (!j.contains("axiom_set") || !j["axiom_set"].is_array()) {
    throw InputError("field 'axiom_set' must be an array");
  }
  for (const auto& id : j["axiom_set"]) {
    if (!id.is_string()) throw InputError("field 'axiom_set' must hold strings");
    e.axiom_set.push_back(id.get<std::string>());
  }
  return e;
}

ReviewService::ReviewService(std::vector<Case> cases,
                             std::filesystem::path log_path,
                             ReviewOptions options)
    : cases_(std::move(cases)),
      log_path_(std::move(log_path)),
      options_(std::move(options)) {
  if (!options_.clock) options_.clock = utc_timestamp_now;

  auto classified = classify_all(cases_);
  for (std::size_t i = 0; i < cases_.size(); ++i) {
    const Case& c = cases_[i];
    Entry e;
    e.c = &c;
    e.state.classified = std::move(classified[i]);
    if (e.state.classified.verdict == Verdict::Neutral) {
      for (Target t : {Target::Entailment, Target::Contradiction}) {
        const auto result = abduce(c, t, options_.cardinality_bound);
        for (const auto& s : result.solutions) {
          e.state.pending.push_back(
              {t, s.axiom_ids, s.score, review_question(c, s.axiom_ids)});
        }
      }
      std::sort(e.state.pending.begin(), e.state.pending.end(),
                [](const PendingQuestion& a, const PendingQuestion& b) {
                  if (a.score != b.score) return a.score < b.score;
                  return a.axiom_set < b.axiom_set;
                });
      e.state.status = e.state.pending.empty()
                           ? ReviewStatus::GenuinelyUnderspecified
                           : ReviewStatus::NeedsReview;
    }
    entries_.emplace(c.id, std::move(e));
  }

  EvalOptions eval;
  eval.cardinality_bound = options_.cardinality_bound;
  report_ = to_json(evaluate(cases_, {}, eval));
  replay();
}

void ReviewService::replay() {
  std::ifstream in(log_path_);
  if (!in) return;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    try {
      const auto event = review_event_from_json(nlohmann::json::parse(line));
      auto it = entries_.find(event.case_id);
      if (it == entries_.end()) throw UnknownCaseId(event.case_id);
      it->second.state = transition(it->second, event);
    } catch (const InputError& e) {
      throw ReplayError(number, e.what());
    } catch (const nlohmann::json::exception& e) {
      throw ReplayError(number, e.what());
    }
  }
}

CaseReviewState ReviewService::transition(const Entry& entry,
                                          const ReviewEvent& event) const {
  const CaseReviewState& current = entry.state;
  if (event.axiom_set.empty()) throw InputError("axiom_set is empty");
  for (const auto& done : current.answered) {
    if (done.event.axiom_set == event.axiom_set) {
      throw ConflictingAnswer("axiom set already answered for case '" +
                              event.case_id + "'");
    }
  }
  if (current.status != ReviewStatus::NeedsReview) {
    throw NotPending("case '" + event.case_id + "' is " +
                     std::string(to_string(current.status)));
  }
  auto it = std::find_if(current.pending.begin(), current.pending.end(),
                         [&](const PendingQuestion& q) {
                           return q.axiom_set == event.axiom_set;
                         });
  if (it == current.pending.end()) {
    throw UnknownSolution("no pending question for that axiom set in case '" +
                          event.case_id + "'");
  }

  CaseReviewState next = current;
  const Target target = it->target;
  next.answered.push_back({target, event});
  next.pending.erase(next.pending.begin() + (it - current.pending.begin()));
  if (event.yes) {
    std::vector<Formula> premise = entry.c->premise_forms;
    for (const auto& id : event.axiom_set) {
      premise.push_back(entry.c->find_axiom(id)->formula);
    }
    const auto recheck = classify(premise, entry.c->hypothesis_form).verdict;
    if (recheck != verdict_for(target)) {
      throw InvariantError("accepted axioms for case '" + event.case_id +
                           "' classify as " + std::string(to_string(recheck)));
    }
    next.accepted_axioms = event.axiom_set;
    next.pending.clear();
    next.status = target == Target::Entailment
                      ? ReviewStatus::ResolvedEntailment
                      : ReviewStatus::ResolvedContradiction;
  } else if (next.pending.empty()) {
    next.status = ReviewStatus::GenuinelyUnderspecified;
  }
  return next;
}

void ReviewService::append(const ReviewEvent& event) {
  const std::string line = to_json(event).dump() + "\n";
  const int fd = ::open(log_path_.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
  if (fd < 0) {
    throw InputError("cannot open event log '" + log_path_.string() +
                     "': " + std::strerror(errno));
  }
  std::size_t written = 0;
  while (written < line.size()) {
    const ssize_t n = ::write(fd, line.data() + written, line.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      const int err = errno;
      ::close(fd);
      throw InputError("cannot write event log: " + std::string(std::strerror(err)));
    }
    written += static_cast<std::size_t>(n);
  }
  const bool synced = ::fsync(fd) == 0;
  ::close(fd);
  if (!synced) throw InputError("cannot sync event log");
}

CaseReviewState ReviewService::answer(const std::string& case_id,
                                      std::vector<std::string> axiom_set,
                                      bool yes, const std::string& reviewer) {
  std::sort(axiom_set.begin(), axiom_set.end());
  if (std::adjacent_find(axiom_set.begin(), axiom_set.end()) != axiom_set.end()) {
    throw InputError("axiom_set repeats an id");
  }
  std::unique_lock lock(mutex_);
  auto it = entries_.find(case_id);
  if (it == entries_.end()) throw UnknownCaseId(case_id);
  ReviewEvent event{options_.clock(), case_id, std::move(axiom_set), yes, reviewer};
  CaseReviewState next = transition(it->second, event);
  append(event);
  it->second.state = std::move(next);
  return it->second.state;
}

const ReviewService::Entry& ReviewService::find(const std::string& case_id) const {
  auto it = entries_.find(case_id);
  if (it == entries_.end()) throw UnknownCaseId(case_id);
  return it->second;
}

CaseReviewState ReviewService::state(const std::string& case_id) const {
  std::shared_lock lock(mutex_);
  return find(case_id).state;
}

namespace {

ojson question_json(const Case& c, const PendingQuestion& q) {
  ojson j;
  j["target"] = to_string(q.target);
  j["axiom_set"] = q.axiom_set;
  j["score"] = q.score;
  j["question"] = q.question;
  j["axioms"] = ojson::array();
  for (const auto& id : q.axiom_set) {
    const Axiom* a = c.find_axiom(id);
    j["axioms"].push_back({{"id", a->id},
                           {"gloss", a->gloss},
                           {"formula", pretty(a->formula)},
                           {"source", to_string(a->source)}});
  }
  return j;
}

}  // namespace

ojson ReviewService::state_json(const Entry& e) const {
  const auto& s = e.state;
  ojson j;
  j["status"] = to_string(s.status);
  j["verdict"] = to_string(s.classified.verdict);
  j["effective_verdict"] = to_string(s.effective_verdict());
  j["accepted_axioms"] = s.accepted_axioms;
  j["pending_questions"] = ojson::array();
  for (const auto& q : s.pending) j["pending_questions"].push_back(question_json(*e.c, q));
  j["answered"] = ojson::array();
  for (const auto& a : s.answered) {
    ojson done = to_json(a.event);
    done["target"] = to_string(a.target);
    j["answered"].push_back(done);
  }
  return j;
}

ojson ReviewService::case_summaries() const {
  std::shared_lock lock(mutex_);
  ojson out = ojson::array();
  for (const auto& [id, e] : entries_) {
    ojson j;
    j["id"] = id;
    j["premise_text"] = e.c->premise_text;
    j["hypothesis_text"] = e.c->hypothesis_text;
    j["gold_legal"] = to_string(e.c->gold_legal);
    j["status"] = to_string(e.state.status);
    j["verdict"] = to_string(e.state.classified.verdict);
    j["effective_verdict"] = to_string(e.state.effective_verdict());
    j["pending_count"] = e.state.pending.size();
    out.push_back(j);
  }
  return out;
}

ojson ReviewService::case_detail(const std::string& case_id) const {
  std::shared_lock lock(mutex_);
  const Entry& e = find(case_id);
  const Case& c = *e.c;
  ojson j;
  j["id"] = c.id;
  j["premise_text"] = c.premise_text;
  j["premise_forms"] = ojson::array();
  for (const auto& f : c.premise_forms) j["premise_forms"].push_back(pretty(f));
  j["hypothesis_text"] = c.hypothesis_text;
  j["hypothesis_form"] = pretty(c.hypothesis_form);
  j["gold_legal"] = to_string(c.gold_legal);
  ojson witnesses = nullptr;
  if (e.state.classified.model_with_hypothesis) {
    witnesses = ojson::object();
    witnesses["with_hypothesis"] = to_json(*e.state.classified.model_with_hypothesis);
    witnesses["without_hypothesis"] = to_json(*e.state.classified.model_without_hypothesis);
  }
  j["witnesses"] = witnesses;
  const ojson state = state_json(e);
  for (const auto& [key, value] : state.items()) j[key] = value;
  j["axiom_pool"] = ojson::array();
  for (const auto& a : c.axiom_pool) {
    j["axiom_pool"].push_back({{"id", a.id},
                               {"gloss", a.gloss},
                               {"formula", pretty(a.formula)},
                               {"source", to_string(a.source)}});
  }
  return j;
}

ojson ReviewService::report() const {
  std::shared_lock lock(mutex_);
  ojson j = report_;
  ojson statuses;
  for (auto s : {ReviewStatus::AutoClassified, ReviewStatus::NeedsReview,
                 ReviewStatus::ResolvedEntailment, ReviewStatus::ResolvedContradiction,
                 ReviewStatus::GenuinelyUnderspecified}) {
    statuses[std::string(to_string(s))] = 0;
  }
  ojson effective;
  for (Verdict v : kVerdicts) effective[std::string(to_string(v))] = 0;
  for (const auto& [id, e] : entries_) {
    statuses[std::string(to_string(e.state.status))] =
        statuses[std::string(to_string(e.state.status))].get<int>() + 1;
    const std::string v(to_string(e.state.effective_verdict()));
    effective[v] = effective[v].get<int>() + 1;
  }
  j["review"] = {{"status_counts", statuses}, {"effective_verdicts", effective}};
  return j;
}

ojson ReviewService::snapshot() const {
  std::shared_lock lock(mutex_);
  ojson out = ojson::array();
  for (const auto& [id, e] : entries_) {
    ojson j;
    j["id"] = id;
    const ojson state = state_json(e);
  for (const auto& [key, value] : state.items()) j[key] = value;
    out.push_back(j);
  }
  return out;
}

}  // namespace gapcheck
