#include "fusebench/annotation/json_forms.hpp"

#include "fusebench/corpus/interchange.hpp"

namespace fusebench::annotation {

namespace {

Stage parse_stage(const std::string& name) {
  if (name == "open") return Stage::OpenRound;
  if (name == "closed") return Stage::ClosedRound;
  if (name == "qualified") return Stage::Qualified;
  if (name == "rejected") return Stage::Rejected;
  throw AnnotationError(AnnotationErrc::InvalidArgument, "unknown stage '" + name + "'");
}

std::string stage_name(Stage stage) {
  switch (stage) {
    case Stage::OpenRound: return "open";
    case Stage::ClosedRound: return "closed";
    case Stage::Qualified: return "qualified";
    case Stage::Rejected: return "rejected";
  }
  return "rejected";
}

}  // namespace

std::string to_string(AnnotationErrc code) {
  switch (code) {
    case AnnotationErrc::UnknownWorker: return "UnknownWorker";
    case AnnotationErrc::UnknownSession: return "UnknownSession";
    case AnnotationErrc::UnknownPair: return "UnknownPair";
    case AnnotationErrc::UnknownAlignment: return "UnknownAlignment";
    case AnnotationErrc::UnknownOutput: return "UnknownOutput";
    case AnnotationErrc::UnqualifiedWorker: return "UnqualifiedWorker";
    case AnnotationErrc::PairAlreadyAssigned: return "PairAlreadyAssigned";
    case AnnotationErrc::SessionClosed: return "SessionClosed";
    case AnnotationErrc::WrongFocusedSentence: return "WrongFocusedSentence";
    case AnnotationErrc::WrongReview: return "WrongReview";
    case AnnotationErrc::SpanOutOfBounds: return "SpanOutOfBounds";
    case AnnotationErrc::IndexOutOfRange: return "IndexOutOfRange";
    case AnnotationErrc::TerminalState: return "TerminalState";
    case AnnotationErrc::TutorialRequired: return "TutorialRequired";
    case AnnotationErrc::ScoreOutOfRange: return "ScoreOutOfRange";
    case AnnotationErrc::NoJudgments: return "NoJudgments";
    case AnnotationErrc::InvalidArgument: return "InvalidArgument";
    case AnnotationErrc::CorruptStore: return "CorruptStore";
  }
  return "AnnotationError";
}

std::string to_string(SessionStatus status) {
  switch (status) {
    case SessionStatus::Open: return "open";
    case SessionStatus::Submitted: return "submitted";
    case SessionStatus::Reviewed: return "reviewed";
  }
  return "open";
}

SessionStatus parse_session_status(std::string_view name) {
  if (name == "open") return SessionStatus::Open;
  if (name == "submitted") return SessionStatus::Submitted;
  if (name == "reviewed") return SessionStatus::Reviewed;
  throw AnnotationError(AnnotationErrc::InvalidArgument,
                        "unknown session status '" + std::string(name) + "'");
}

std::string to_string(AdvanceStep step) {
  switch (step) {
    case AdvanceStep::NextAspect: return "next_aspect";
    case AdvanceStep::NextSentence: return "next_sentence";
    case AdvanceStep::NextReview: return "next_review";
  }
  return "next_aspect";
}

AdvanceStep parse_advance_step(std::string_view name) {
  if (name == "next_aspect") return AdvanceStep::NextAspect;
  if (name == "next_sentence") return AdvanceStep::NextSentence;
  if (name == "next_review") return AdvanceStep::NextReview;
  throw AnnotationError(AnnotationErrc::InvalidArgument, "unknown step '" + std::string(name) + "'");
}

std::string to_string(JudgmentAxis axis) {
  switch (axis) {
    case JudgmentAxis::Faithfulness: return "faithfulness";
    case JudgmentAxis::Coverage: return "coverage";
    case JudgmentAxis::Coherence: return "coherence";
    case JudgmentAxis::Redundancy: return "redundancy";
  }
  return "faithfulness";
}

JudgmentAxis parse_axis(std::string_view name) {
  if (name == "faithfulness") return JudgmentAxis::Faithfulness;
  if (name == "coverage") return JudgmentAxis::Coverage;
  if (name == "coherence") return JudgmentAxis::Coherence;
  if (name == "redundancy") return JudgmentAxis::Redundancy;
  throw AnnotationError(AnnotationErrc::InvalidArgument, "unknown axis '" + std::string(name) + "'");
}

int max_score(JudgmentAxis axis) {
  return axis == JudgmentAxis::Faithfulness || axis == JudgmentAxis::Coverage ? 7 : 5;
}

nlohmann::json to_json(const QualificationState& s) {
  return {{"stage", stage_name(s.stage)},
          {"round", s.round},
          {"label", stage_label(s)},
          {"tutorial_completed", s.tutorial_completed},
          {"awaiting_tutorial", s.awaiting_tutorial}};
}

QualificationState qualification_from_json(const nlohmann::json& j) {
  QualificationState s;
  s.stage = parse_stage(j.at("stage").get<std::string>());
  s.round = j.at("round").get<int>();
  s.tutorial_completed = j.at("tutorial_completed").get<bool>();
  s.awaiting_tutorial = j.value("awaiting_tutorial", false);
  return s;
}

nlohmann::json to_json(const FeedbackRecord& r) {
  return {{"round", r.round}, {"reviewer_note", r.reviewer_note}, {"passed", r.passed},
          {"timestamp", r.timestamp}};
}

FeedbackRecord feedback_from_json(const nlohmann::json& j) {
  return {j.at("round").get<std::string>(), j.value("reviewer_note", std::string{}),
          j.at("passed").get<bool>(), j.value("timestamp", std::string{})};
}

nlohmann::json to_json(const WorkerProfile& p) {
  nlohmann::json feedback = nlohmann::json::array();
  for (const auto& f : p.feedback) feedback.push_back(to_json(f));
  return {{"worker_id", p.worker_id}, {"qualification", to_json(p.qualification)},
          {"feedback", feedback}};
}

WorkerProfile worker_from_json(const nlohmann::json& j) {
  WorkerProfile p;
  p.worker_id = j.at("worker_id").get<std::string>();
  p.qualification = qualification_from_json(j.at("qualification"));
  for (const auto& f : j.value("feedback", nlohmann::json::array())) {
    p.feedback.push_back(feedback_from_json(f));
  }
  return p;
}

nlohmann::json to_json(const AnnotationSession& s) {
  nlohmann::json alignments = nlohmann::json::array();
  for (const auto& a : s.saved_alignments) alignments.push_back(corpus::alignment_to_json(a, true));
  nlohmann::json j{{"session_id", s.session_id},
                   {"worker_id", s.worker_id},
                   {"review_set_id", s.review_set_id},
                   {"summary_id", s.summary_id},
                   {"training", s.training},
                   {"current_review_index", s.current_review_index},
                   {"focused_sentence_index", s.focused_sentence_index},
                   {"saved_alignments", alignments},
                   {"status", to_string(s.status)},
                   {"ready_to_submit", s.ready_to_submit},
                   {"next_alignment_number", s.next_alignment_number}};
  if (s.review_note) j["review_note"] = *s.review_note;
  return j;
}

AnnotationSession session_from_json(const nlohmann::json& j) {
  AnnotationSession s;
  s.session_id = j.at("session_id").get<std::string>();
  s.worker_id = j.at("worker_id").get<std::string>();
  s.review_set_id = j.at("review_set_id").get<std::string>();
  s.summary_id = j.at("summary_id").get<std::string>();
  s.training = j.value("training", false);
  s.current_review_index = j.at("current_review_index").get<std::size_t>();
  s.focused_sentence_index = j.at("focused_sentence_index").get<std::size_t>();
  for (const auto& a : j.at("saved_alignments")) {
    s.saved_alignments.push_back(corpus::alignment_from_json(a));
  }
  s.status = parse_session_status(j.at("status").get<std::string>());
  s.ready_to_submit = j.value("ready_to_submit", false);
  s.next_alignment_number = j.value("next_alignment_number", s.saved_alignments.size() + 1);
  if (j.contains("review_note")) s.review_note = j.at("review_note").get<std::string>();
  return s;
}

nlohmann::json to_json(const SubmissionReceipt& r) {
  return {{"session_id", r.session_id},
          {"alignment_count", r.alignment_count},
          {"unaligned_sentences", r.unaligned_sentences}};
}

nlohmann::json to_json(const SaveResult& r) {
  return {{"status", r.status == SaveResult::Status::Saved ? "saved" : "duplicate"},
          {"alignment_id", r.alignment_id}};
}

nlohmann::json to_json(const OutputRef& ref) {
  return {{"instance_id", ref.instance_id}, {"system_id", ref.system_id}};
}

OutputRef output_ref_from_json(const nlohmann::json& j) {
  return {j.at("instance_id").get<std::string>(), j.at("system_id").get<std::string>()};
}

nlohmann::json to_json(const JudgmentRecord& r) {
  return {{"judge_id", r.judge_id},
          {"instance_id", r.output.instance_id},
          {"system_id", r.output.system_id},
          {"axis", to_string(r.axis)},
          {"score", r.score}};
}

JudgmentRecord judgment_from_json(const nlohmann::json& j) {
  JudgmentRecord r;
  r.judge_id = j.at("judge_id").get<std::string>();
  r.output = output_ref_from_json(j);
  r.axis = parse_axis(j.at("axis").get<std::string>());
  r.score = j.at("score").get<int>();
  return r;
}

nlohmann::json to_json(const JudgmentAggregate& a) {
  return {{"mean", a.mean}, {"judges", a.judges}};
}

}  // namespace fusebench::annotation
