#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <shared_mutex>
#include <string>
#include <vector>

#include <json.hpp>

#include "gapcheck/abduction.hpp"
#include "gapcheck/case.hpp"
#include "gapcheck/entailment.hpp"

namespace gapcheck {

enum class ReviewStatus {
  AutoClassified,
  NeedsReview,
  ResolvedEntailment,
  ResolvedContradiction,
  GenuinelyUnderspecified
};

std::string_view to_string(ReviewStatus s);

struct PendingQuestion {
  Target target = Target::Entailment;
  std::vector<std::string> axiom_set;  // sorted
  int score = 0;
  std::string question;
};

// One line of the event log.
struct ReviewEvent {
  std::string timestamp;  // ISO-8601 UTC
  std::string case_id;
  std::vector<std::string> axiom_set;  // sorted
  bool yes = false;
  std::string reviewer;
};

nlohmann::ordered_json to_json(const ReviewEvent& e);
// Throws InputError describing the first bad field.
ReviewEvent review_event_from_json(const nlohmann::json& j);

struct AnsweredQuestion {
  Target target = Target::Entailment;
  ReviewEvent event;
};

struct CaseReviewState {
  ClassifiedCase classified;
  ReviewStatus status = ReviewStatus::AutoClassified;
  std::vector<std::string> accepted_axioms;
  // Ascending (score, axiom ids); both targets.
  std::vector<PendingQuestion> pending;
  std::vector<AnsweredQuestion> answered;

  // The classified verdict, or the target verdict once resolved.
  Verdict effective_verdict() const;
};

struct ReviewOptions {
  int cardinality_bound = kDefaultCardinalityBound;
  // Produces event timestamps; defaults to the UTC wall clock.
  std::function<std::string()> clock;
};

std::string utc_timestamp_now();

// Review state over a fixed dataset plus an append-only answer log.
// Reads may run concurrently; answers are serialized, and each is appended
// and fsync'ed to the log before the in-memory state changes.
class ReviewService {
 public:
  // Classifies every case, abduces both targets for Neutral ones, then
  // replays `log_path` if it exists (ReplayError on a bad line).
  ReviewService(std::vector<Case> cases, std::filesystem::path log_path,
                ReviewOptions options = {});

  // Errors: UnknownCaseId, ConflictingAnswer (set already answered),
  // NotPending (case not awaiting review), UnknownSolution (set not among
  // the pending questions), InputError (empty set).
  CaseReviewState answer(const std::string& case_id,
                         std::vector<std::string> axiom_set, bool yes,
                         const std::string& reviewer);

  CaseReviewState state(const std::string& case_id) const;
  std::size_t size() const { return cases_.size(); }

  nlohmann::ordered_json case_summaries() const;
  nlohmann::ordered_json case_detail(const std::string& case_id) const;
  // Batch report over the dataset plus review status and effective
  // verdict counts.
  nlohmann::ordered_json report() const;
  // Everything that defines review state, in case id order. Two services
  // built from the same dataset and log produce identical snapshots.
  nlohmann::ordered_json snapshot() const;

 private:
  struct Entry {
    const Case* c = nullptr;
    CaseReviewState state;
  };

  void replay();
  // Validates and computes the post-answer state without touching `entry`.
  CaseReviewState transition(const Entry& entry, const ReviewEvent& event) const;
  void append(const ReviewEvent& event);
  const Entry& find(const std::string& case_id) const;
  nlohmann::ordered_json state_json(const Entry& e) const;

  std::vector<Case> cases_;
  std::map<std::string, Entry> entries_;
  std::filesystem::path log_path_;
  ReviewOptions options_;
  nlohmann::ordered_json report_;
  mutable std::shared_mutex mutex_;
};

}  // namespace gapcheck
