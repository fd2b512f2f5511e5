#include "fusebench/annotation/service.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "fusebench/annotation/json_forms.hpp"
#include "fusebench/annotation/qualification.hpp"
#include "fusebench/corpus/interchange.hpp"
#include "fusebench/corpus/text.hpp"
#include "fusebench/corpus/validate.hpp"
#include "fusebench/util/clock.hpp"
#include "fusebench/util/rng.hpp"

namespace fusebench::annotation {

namespace {

using Json = nlohmann::json;

std::string judgment_key(const JudgmentRecord& r) {
  return r.judge_id + '|' + r.output.instance_id + '|' + r.output.system_id + '|' +
         to_string(r.axis);
}

AnnotationError unknown(AnnotationErrc code, const std::string& what, const std::string& id) {
  return AnnotationError(code, what + " '" + id + "' not found");
}

}  // namespace

void Catalog::add(CatalogPair pair) {
  auto key = std::make_pair(pair.review_set.id, pair.summary.id);
  pairs_.insert_or_assign(std::move(key), std::move(pair));
}

const CatalogPair* Catalog::find(const std::string& review_set_id,
                                 const std::string& summary_id) const {
  const auto it = pairs_.find({review_set_id, summary_id});
  return it == pairs_.end() ? nullptr : &it->second;
}

Catalog Catalog::from_instances(const std::vector<corpus::FiCInstance>& instances, bool training) {
  Catalog c;
  for (const auto& inst : instances) c.add({inst.review_set, inst.fused_text, training});
  return c;
}

void Catalog::merge(const Catalog& other) {
  for (const auto& [key, pair] : other.pairs_) add(pair);
}

std::vector<std::size_t> embolden_tokens(const corpus::Summary& summary, std::size_t sentence,
                                         const corpus::Review& review) {
  std::set<std::string> stems;
  for (auto idx : corpus::tokens_in(summary.tokens, summary.sentences.at(sentence))) {
    const auto& t = summary.tokens[idx];
    if (t.is_content_word) stems.insert(t.stem);
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < review.tokens.size(); ++i) {
    const auto& t = review.tokens[i];
    if (t.is_content_word && stems.count(t.stem) != 0) out.push_back(i);
  }
  return out;
}

AnnotationService::AnnotationService(Catalog catalog, ServiceConfig config)
    : catalog_(std::move(catalog)),
      config_(std::move(config)),
      store_(config_.data_dir, "annotation") {
  if (config_.closed_rounds < 1) {
    throw AnnotationError(AnnotationErrc::InvalidArgument, "closed_rounds must be >= 1");
  }
  replay();
}

void AnnotationService::replay() {
  auto loaded = store_.load();
  state_ = State{};
  if (loaded.snapshot) state_from_json(*loaded.snapshot);
  for (const auto& event : loaded.events) apply(event);
}

void AnnotationService::commit(Json event) {
  store_.append(event);
  apply(event);
  if (config_.compact_every != 0 && store_.events_since_snapshot() >= config_.compact_every) {
    store_.compact(state_to_json());
  }
}

void AnnotationService::apply(const Json& e) {
  const auto type = e.at("type").get<std::string>();
  if (type == "worker_registered") {
    const auto id = e.at("worker_id").get<std::string>();
    state_.workers[id].worker_id = id;
  } else if (type == "qualification" || type == "tutorial") {
    auto& w = state_.workers.at(e.at("worker_id").get<std::string>());
    w.qualification = qualification_from_json(e.at("state"));
    if (e.contains("feedback")) w.feedback.push_back(feedback_from_json(e.at("feedback")));
  } else if (type == "session_started") {
    auto s = session_from_json(e.at("session"));
    if (!s.training) state_.assignments[{s.review_set_id, s.summary_id}] = s.session_id;
    state_.session_counter = std::max(state_.session_counter, e.value("counter", std::size_t{0}));
    state_.sessions[s.session_id] = std::move(s);
  } else if (type == "alignment_saved") {
    auto& s = state_.sessions.at(e.at("session_id").get<std::string>());
    auto a = corpus::alignment_from_json(e.at("alignment"));
    const auto* pair = catalog_.find(s.review_set_id, s.summary_id);
    if (pair == nullptr ||
        !corpus::validate_alignment(a, pair->summary, pair->review_set).empty()) {
      throw AnnotationError(AnnotationErrc::CorruptStore,
                            "stored alignment " + a.id + " of " + s.session_id +
                                " does not validate against the catalog");
    }
    s.saved_alignments.push_back(std::move(a));
    ++s.next_alignment_number;
  } else if (type == "alignment_deleted") {
    auto& s = state_.sessions.at(e.at("session_id").get<std::string>());
    const auto id = e.at("alignment_id").get<std::string>();
    std::erase_if(s.saved_alignments, [&](const auto& a) { return a.id == id; });
  } else if (type == "advanced") {
    auto& s = state_.sessions.at(e.at("session_id").get<std::string>());
    s.current_review_index = e.at("review_index").get<std::size_t>();
    s.focused_sentence_index = e.at("sentence_index").get<std::size_t>();
    s.ready_to_submit = e.at("ready_to_submit").get<bool>();
  } else if (type == "submitted") {
    state_.sessions.at(e.at("session_id").get<std::string>()).status = SessionStatus::Submitted;
  } else if (type == "reviewed") {
    auto& s = state_.sessions.at(e.at("session_id").get<std::string>());
    s.status = SessionStatus::Reviewed;
    s.review_note = e.value("note", std::string{});
  } else if (type == "output_registered") {
    state_.outputs.insert(output_ref_from_json(e));
  } else if (type == "judgment") {
    const auto r = judgment_from_json(e.at("record"));
    state_.judgments[judgment_key(r)] = r;
  } else {
    throw AnnotationError(AnnotationErrc::CorruptStore, "unknown event type '" + type + "'");
  }
}

Json AnnotationService::state_to_json() const {
  Json workers = Json::array();
  for (const auto& [id, w] : state_.workers) workers.push_back(to_json(w));
  Json sessions = Json::array();
  for (const auto& [id, s] : state_.sessions) sessions.push_back(to_json(s));
  Json outputs = Json::array();
  for (const auto& o : state_.outputs) outputs.push_back(to_json(o));
  Json judgments = Json::array();
  for (const auto& [key, r] : state_.judgments) judgments.push_back(to_json(r));
  return {{"workers", workers},   {"sessions", sessions},
          {"outputs", outputs},   {"judgments", judgments},
          {"session_counter", state_.session_counter}};
}

void AnnotationService::state_from_json(const Json& j) {
  for (const auto& w : j.at("workers")) {
    auto p = worker_from_json(w);
    state_.workers[p.worker_id] = std::move(p);
  }
  for (const auto& sj : j.at("sessions")) {
    auto s = session_from_json(sj);
    const auto* pair = catalog_.find(s.review_set_id, s.summary_id);
    for (const auto& a : s.saved_alignments) {
      if (pair == nullptr ||
          !corpus::validate_alignment(a, pair->summary, pair->review_set).empty()) {
        throw AnnotationError(AnnotationErrc::CorruptStore,
                              "snapshot alignment " + a.id + " of " + s.session_id +
                                  " does not validate against the catalog");
      }
    }
    if (!s.training) state_.assignments[{s.review_set_id, s.summary_id}] = s.session_id;
    state_.sessions[s.session_id] = std::move(s);
  }
  for (const auto& o : j.at("outputs")) state_.outputs.insert(output_ref_from_json(o));
  for (const auto& r : j.at("judgments")) {
    auto rec = judgment_from_json(r);
    state_.judgments[judgment_key(rec)] = rec;
  }
  state_.session_counter = j.value("session_counter", state_.sessions.size());
}

const WorkerProfile& AnnotationService::worker_locked(const std::string& worker_id) const {
  const auto it = state_.workers.find(worker_id);
  if (it == state_.workers.end()) throw unknown(AnnotationErrc::UnknownWorker, "worker", worker_id);
  return it->second;
}

const AnnotationSession& AnnotationService::session_locked(const std::string& session_id) const {
  const auto it = state_.sessions.find(session_id);
  if (it == state_.sessions.end()) throw unknown(AnnotationErrc::UnknownSession, "session", session_id);
  return it->second;
}

const AnnotationSession& AnnotationService::open_session_locked(const std::string& session_id) const {
  const auto& s = session_locked(session_id);
  if (s.status != SessionStatus::Open) {
    throw AnnotationError(AnnotationErrc::SessionClosed,
                          "session " + session_id + " is " + to_string(s.status));
  }
  return s;
}

const CatalogPair& AnnotationService::pair_for(const AnnotationSession& session) const {
  const auto* pair = catalog_.find(session.review_set_id, session.summary_id);
  if (pair == nullptr) {
    throw AnnotationError(AnnotationErrc::UnknownPair,
                          "pair (" + session.review_set_id + ", " + session.summary_id +
                              ") is no longer in the catalog");
  }
  return *pair;
}

WorkerProfile AnnotationService::register_worker(const std::string& worker_id) {
  if (worker_id.empty()) throw AnnotationError(AnnotationErrc::InvalidArgument, "empty worker id");
  std::unique_lock lock(mutex_);
  if (const auto it = state_.workers.find(worker_id); it != state_.workers.end()) return it->second;
  commit({{"type", "worker_registered"}, {"worker_id", worker_id}});
  return state_.workers.at(worker_id);
}

WorkerProfile AnnotationService::worker(const std::string& worker_id) const {
  std::shared_lock lock(mutex_);
  return worker_locked(worker_id);
}

QualificationState AnnotationService::advance_qualification(const std::string& worker_id,
                                                            bool passed, const std::string& note) {
  std::unique_lock lock(mutex_);
  const auto& w = worker_locked(worker_id);
  const auto next = apply_round_result(w.qualification, passed, config_.closed_rounds);
  const FeedbackRecord feedback{stage_label(w.qualification), note, passed, utc_timestamp()};
  commit({{"type", "qualification"},
          {"worker_id", worker_id},
          {"state", to_json(next)},
          {"feedback", to_json(feedback)}});
  return next;
}

QualificationState AnnotationService::complete_tutorial(const std::string& worker_id) {
  std::unique_lock lock(mutex_);
  const auto next = apply_tutorial(worker_locked(worker_id).qualification);
  commit({{"type", "tutorial"}, {"worker_id", worker_id}, {"state", to_json(next)}});
  return next;
}

AnnotationSession AnnotationService::start_session(const std::string& worker_id,
                                                   const std::string& review_set_id,
                                                   const std::string& summary_id) {
  std::unique_lock lock(mutex_);
  const auto& w = worker_locked(worker_id);
  const auto* pair = catalog_.find(review_set_id, summary_id);
  if (pair == nullptr) {
    throw AnnotationError(AnnotationErrc::UnknownPair,
                          "pair (" + review_set_id + ", " + summary_id + ") is not in the catalog");
  }
  const auto& q = w.qualification;
  const bool allowed = pair->training ? q.stage != Stage::Rejected : q.stage == Stage::Qualified;
  if (!allowed) {
    throw AnnotationError(AnnotationErrc::UnqualifiedWorker,
                          "worker " + worker_id + " (" + stage_label(q) + ") may not annotate " +
                              (pair->training ? "training" : "production") + " pairs");
  }
  for (const auto& [id, s] : state_.sessions) {
    if (s.worker_id == worker_id && s.review_set_id == review_set_id && s.summary_id == summary_id) {
      return s;
    }
  }
  if (!pair->training) {
    const auto it = state_.assignments.find({review_set_id, summary_id});
    if (it != state_.assignments.end()) {
      throw AnnotationError(AnnotationErrc::PairAlreadyAssigned,
                            "pair (" + review_set_id + ", " + summary_id + ") is assigned to " +
                                state_.sessions.at(it->second).worker_id);
    }
  }
  if (pair->review_set.reviews.empty() || pair->summary.sentences.empty()) {
    throw AnnotationError(AnnotationErrc::UnknownPair, "pair has no reviews or no summary sentences");
  }
  AnnotationSession s;
  const std::size_t counter = state_.session_counter + 1;
  char id[32];
  std::snprintf(id, sizeof id, "sess-%06zu", counter);
  s.session_id = id;
  s.worker_id = worker_id;
  s.review_set_id = review_set_id;
  s.summary_id = summary_id;
  s.training = pair->training;
  commit({{"type", "session_started"}, {"session", to_json(s)}, {"counter", counter}});
  return state_.sessions.at(s.session_id);
}

AnnotationSession AnnotationService::session(const std::string& session_id) const {
  std::shared_lock lock(mutex_);
  return session_locked(session_id);
}

std::vector<std::size_t> AnnotationService::embolden(const std::string& session_id,
                                                     std::size_t review_index) const {
  std::shared_lock lock(mutex_);
  const auto& s = session_locked(session_id);
  const auto& pair = pair_for(s);
  if (review_index >= pair.review_set.reviews.size()) {
    throw AnnotationError(AnnotationErrc::IndexOutOfRange,
                          "review index " + std::to_string(review_index) + " out of range (" +
                              std::to_string(pair.review_set.reviews.size()) + " reviews)");
  }
  return embolden_tokens(pair.summary, s.focused_sentence_index,
                         pair.review_set.reviews[review_index]);
}

SaveResult AnnotationService::save_alignment(const std::string& session_id,
                                             corpus::Alignment alignment) {
  std::unique_lock lock(mutex_);
  const auto& s = open_session_locked(session_id);
  const auto& pair = pair_for(s);
  if (alignment.summary_sentence_index != s.focused_sentence_index) {
    throw AnnotationError(AnnotationErrc::WrongFocusedSentence,
                          "alignment targets sentence " +
                              std::to_string(alignment.summary_sentence_index) +
                              " but sentence " + std::to_string(s.focused_sentence_index) +
                              " is focused");
  }
  const auto& current = pair.review_set.reviews[s.current_review_index];
  if (alignment.highlight.review_id != current.id) {
    throw AnnotationError(AnnotationErrc::WrongReview,
                          "alignment names review '" + alignment.highlight.review_id +
                              "' but review '" + current.id + "' is displayed");
  }
  const auto violations = corpus::validate_alignment(alignment, pair.summary, pair.review_set);
  if (!violations.empty()) {
    const auto& v = violations.front();
    throw AnnotationError(AnnotationErrc::SpanOutOfBounds, v.field + ": " + v.rule + " (" + v.detail + ")");
  }
  alignment.annotator_id = s.worker_id;
  for (const auto& saved : s.saved_alignments) {
    if (saved.same_spans(alignment)) return {SaveResult::Status::Duplicate, saved.id};
  }
  alignment.id = "a" + std::to_string(s.next_alignment_number);
  commit({{"type", "alignment_saved"},
          {"session_id", session_id},
          {"alignment", corpus::alignment_to_json(alignment, true)}});
  return {SaveResult::Status::Saved, alignment.id};
}

void AnnotationService::delete_alignment(const std::string& session_id,
                                         const std::string& alignment_id) {
  std::unique_lock lock(mutex_);
  const auto& s = open_session_locked(session_id);
  const bool exists = std::any_of(s.saved_alignments.begin(), s.saved_alignments.end(),
                                  [&](const auto& a) { return a.id == alignment_id; });
  if (!exists) throw unknown(AnnotationErrc::UnknownAlignment, "alignment", alignment_id);
  commit({{"type", "alignment_deleted"}, {"session_id", session_id}, {"alignment_id", alignment_id}});
}

AnnotationSession AnnotationService::advance(const std::string& session_id, AdvanceStep step) {
  std::unique_lock lock(mutex_);
  const auto& s = open_session_locked(session_id);
  const auto& pair = pair_for(s);
  std::size_t review = s.current_review_index;
  std::size_t sentence = s.focused_sentence_index;
  bool ready = s.ready_to_submit;
  switch (step) {
    case AdvanceStep::NextAspect:
      return s;
    case AdvanceStep::NextSentence:
      sentence = std::min(sentence + 1, pair.summary.sentences.size() - 1);
      break;
    case AdvanceStep::NextReview:
      if (review + 1 < pair.review_set.reviews.size()) {
        ++review;
        sentence = 0;
      } else {
        ready = true;
      }
      break;
  }
  if (review != s.current_review_index || sentence != s.focused_sentence_index ||
      ready != s.ready_to_submit) {
    commit({{"type", "advanced"},
            {"session_id", session_id},
            {"review_index", review},
            {"sentence_index", sentence},
            {"ready_to_submit", ready}});
  }
  return state_.sessions.at(session_id);
}

SubmissionReceipt AnnotationService::submit_session(const std::string& session_id) {
  std::unique_lock lock(mutex_);
  const auto& s = open_session_locked(session_id);
  const auto& pair = pair_for(s);
  SubmissionReceipt receipt;
  receipt.session_id = session_id;
  receipt.alignment_count = s.saved_alignments.size();
  for (std::size_t i = 0; i < pair.summary.sentences.size(); ++i) {
    const bool aligned = std::any_of(s.saved_alignments.begin(), s.saved_alignments.end(),
                                     [i](const auto& a) { return a.summary_sentence_index == i; });
    if (!aligned) receipt.unaligned_sentences.push_back(i);
  }
  commit({{"type", "submitted"}, {"session_id", session_id}});
  return receipt;
}

AnnotationSession AnnotationService::mark_reviewed(const std::string& session_id,
                                                   const std::string& note) {
  std::unique_lock lock(mutex_);
  const auto& s = session_locked(session_id);
  if (s.status != SessionStatus::Submitted) {
    throw AnnotationError(AnnotationErrc::SessionClosed,
                          "only submitted sessions can be reviewed; " + session_id + " is " +
                              to_string(s.status));
  }
  commit({{"type", "reviewed"}, {"session_id", session_id}, {"note", note}});
  return state_.sessions.at(session_id);
}

std::vector<AnnotationSession> AnnotationService::sample_for_review(double rate,
                                                                   std::uint64_t seed) const {
  if (!(rate >= 0.0 && rate <= 1.0)) {
    throw AnnotationError(AnnotationErrc::InvalidArgument, "rate must lie in [0, 1]");
  }
  std::shared_lock lock(mutex_);
  std::vector<const AnnotationSession*> submitted;
  for (const auto& [id, s] : state_.sessions) {
    if (s.status == SessionStatus::Submitted) submitted.push_back(&s);
  }
  const auto k = static_cast<std::size_t>(std::llround(rate * static_cast<double>(submitted.size())));
  SplitMix64 rng(seed);
  rng.shuffle(std::span(submitted));
  submitted.resize(k);
  std::sort(submitted.begin(), submitted.end(),
            [](const auto* a, const auto* b) { return a->session_id < b->session_id; });
  std::vector<AnnotationSession> out;
  for (const auto* s : submitted) out.push_back(*s);
  return out;
}

std::vector<AnnotationSession> AnnotationService::sessions() const {
  std::shared_lock lock(mutex_);
  std::vector<AnnotationSession> out;
  for (const auto& [id, s] : state_.sessions) out.push_back(s);
  return out;
}

void AnnotationService::register_output(const OutputRef& output) {
  if (output.instance_id.empty() || output.system_id.empty()) {
    throw AnnotationError(AnnotationErrc::InvalidArgument, "output needs instance_id and system_id");
  }
  std::unique_lock lock(mutex_);
  if (state_.outputs.count(output) != 0) return;
  auto event = to_json(output);
  event["type"] = "output_registered";
  commit(std::move(event));
}

bool AnnotationService::has_output(const OutputRef& output) const {
  std::shared_lock lock(mutex_);
  return state_.outputs.count(output) != 0;
}

std::string AnnotationService::record_judgment(const JudgmentRecord& record) {
  if (record.judge_id.empty()) throw AnnotationError(AnnotationErrc::InvalidArgument, "empty judge id");
  const int hi = max_score(record.axis);
  if (record.score < 1 || record.score > hi) {
    throw AnnotationError(AnnotationErrc::ScoreOutOfRange,
                          to_string(record.axis) + " scores must lie in 1.." + std::to_string(hi) +
                              ", got " + std::to_string(record.score));
  }
  std::unique_lock lock(mutex_);
  if (state_.outputs.count(record.output) == 0) {
    throw AnnotationError(AnnotationErrc::UnknownOutput,
                          "output (" + record.output.instance_id + ", " + record.output.system_id +
                              ") is not registered");
  }
  commit({{"type", "judgment"}, {"record", to_json(record)}});
  return judgment_key(record);
}

JudgmentAggregate AnnotationService::aggregate_judgments(const OutputRef& output,
                                                         JudgmentAxis axis) const {
  std::shared_lock lock(mutex_);
  JudgmentAggregate agg;
  double sum = 0.0;
  for (const auto& [key, r] : state_.judgments) {
    if (r.output == output && r.axis == axis) {
      sum += r.score;
      ++agg.judges;
    }
  }
  if (agg.judges == 0) {
    throw AnnotationError(AnnotationErrc::NoJudgments,
                          "no " + to_string(axis) + " judgments for (" + output.instance_id + ", " +
                              output.system_id + ")");
  }
  agg.mean = sum / static_cast<double>(agg.judges);
  return agg;
}

std::vector<JudgmentRecord> AnnotationService::judgments() const {
  std::shared_lock lock(mutex_);
  std::vector<JudgmentRecord> out;
  for (const auto& [key, r] : state_.judgments) out.push_back(r);
  return out;
}

std::uint64_t AnnotationService::last_seq() const {
  std::shared_lock lock(mutex_);
  return store_.last_seq();
}

void AnnotationService::compact() {
  std::unique_lock lock(mutex_);
  store_.compact(state_to_json());
}

}  // namespace fusebench::annotation
