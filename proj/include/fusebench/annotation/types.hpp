#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fusebench/corpus/types.hpp"
#include "fusebench/util/error.hpp"

namespace fusebench::annotation {

enum class AnnotationErrc {
  UnknownWorker,
  UnknownSession,
  UnknownPair,
  UnknownAlignment,
  UnknownOutput,
  UnqualifiedWorker,
  PairAlreadyAssigned,
  SessionClosed,
  WrongFocusedSentence,
  WrongReview,
  SpanOutOfBounds,
  IndexOutOfRange,
  TerminalState,
  TutorialRequired,
  ScoreOutOfRange,
  NoJudgments,
  InvalidArgument,
  CorruptStore,
};

std::string to_string(AnnotationErrc code);

class AnnotationError : public Error {
 public:
  AnnotationError(AnnotationErrc code, const std::string& message)
      : Error(to_string(code), message), errc_(code) {}
  AnnotationErrc errc() const noexcept { return errc_; }

 private:
  AnnotationErrc errc_;
};

enum class Stage { OpenRound, ClosedRound, Qualified, Rejected };

struct QualificationState {
  Stage stage = Stage::OpenRound;
  int round = 1;  // meaningful for OpenRound / ClosedRound
  bool tutorial_completed = false;
  // OpenRound(3) passed before the tutorial was completed.
  bool awaiting_tutorial = false;

  bool terminal() const noexcept { return stage == Stage::Qualified || stage == Stage::Rejected; }
  friend bool operator==(const QualificationState&, const QualificationState&) = default;
};

// "open-2", "closed-1", "qualified", "rejected".
std::string stage_label(const QualificationState& state);

struct FeedbackRecord {
  std::string round;  // stage_label of the round being judged
  std::string reviewer_note;
  bool passed = false;
  std::string timestamp;  // ISO 8601 UTC
};

struct WorkerProfile {
  std::string worker_id;
  QualificationState qualification;
  std::vector<FeedbackRecord> feedback;
};

enum class SessionStatus { Open, Submitted, Reviewed };
std::string to_string(SessionStatus status);
SessionStatus parse_session_status(std::string_view name);

struct AnnotationSession {
  std::string session_id;
  std::string worker_id;
  std::string review_set_id;
  std::string summary_id;
  bool training = false;
  std::size_t current_review_index = 0;
  std::size_t focused_sentence_index = 0;
  std::vector<corpus::Alignment> saved_alignments;
  SessionStatus status = SessionStatus::Open;
  bool ready_to_submit = false;
  std::size_t next_alignment_number = 1;
  std::optional<std::string> review_note;
};

enum class AdvanceStep { NextAspect, NextSentence, NextReview };
std::string to_string(AdvanceStep step);
AdvanceStep parse_advance_step(std::string_view name);

struct SaveResult {
  enum class Status { Saved, Duplicate } status = Status::Saved;
  std::string alignment_id;
};

struct SubmissionReceipt {
  std::string session_id;
  std::size_t alignment_count = 0;
  std::vector<std::size_t> unaligned_sentences;
};

enum class JudgmentAxis { Faithfulness, Coverage, Coherence, Redundancy };
std::string to_string(JudgmentAxis axis);
JudgmentAxis parse_axis(std::string_view name);
// Inclusive Likert upper bound: 7 for faithfulness/coverage, 5 otherwise.
int max_score(JudgmentAxis axis);

struct OutputRef {
  std::string instance_id;
  std::string system_id;
  friend auto operator<=>(const OutputRef&, const OutputRef&) = default;
};

struct JudgmentRecord {
  std::string judge_id;
  OutputRef output;
  JudgmentAxis axis = JudgmentAxis::Faithfulness;
  int score = 0;
};

struct JudgmentAggregate {
  double mean = 0.0;
  std::size_t judges = 0;
};

}  // namespace fusebench::annotation
