#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <vector>

#include <json.hpp>

#include "fusebench/annotation/types.hpp"
#include "fusebench/corpus/types.hpp"
#include "fusebench/util/journal.hpp"

namespace fusebench::annotation {

// A review-set/summary pair available for annotation. Training pairs are
// open to workers still in qualification and may be annotated by many
// workers; production pairs need a Qualified worker and get exactly one.
struct CatalogPair {
  corpus::ReviewSet review_set;
  corpus::Summary summary;
  bool training = false;
};

class Catalog {
 public:
  void add(CatalogPair pair);
  const CatalogPair* find(const std::string& review_set_id, const std::string& summary_id) const;
  std::size_t size() const noexcept { return pairs_.size(); }

  // Each instance contributes its review-set and summary; `training`
  // applies to all of them.
  static Catalog from_instances(const std::vector<corpus::FiCInstance>& instances, bool training);
  void merge(const Catalog& other);

 private:
  std::map<std::pair<std::string, std::string>, CatalogPair> pairs_;
};

struct ServiceConfig {
  std::filesystem::path data_dir;
  int closed_rounds = 3;
  std::size_t compact_every = 1000;  // journal events between snapshots; 0 disables
};

// Annotation workflow state machine over an event-sourced store. Every
// mutation is validated, appended durably to the journal, then applied to
// memory, so a failed write leaves both unchanged. Thread-safe: mutations
// are serialized; reads share a lock.
class AnnotationService {
 public:
  AnnotationService(Catalog catalog, ServiceConfig config);

  // Workers and qualification.
  WorkerProfile register_worker(const std::string& worker_id);
  WorkerProfile worker(const std::string& worker_id) const;
  QualificationState advance_qualification(const std::string& worker_id, bool passed,
                                           const std::string& note = {});
  QualificationState complete_tutorial(const std::string& worker_id);

  // Sessions.
  AnnotationSession start_session(const std::string& worker_id, const std::string& review_set_id,
                                  const std::string& summary_id);
  AnnotationSession session(const std::string& session_id) const;
  std::vector<std::size_t> embolden(const std::string& session_id, std::size_t review_index) const;
  SaveResult save_alignment(const std::string& session_id, corpus::Alignment alignment);
  void delete_alignment(const std::string& session_id, const std::string& alignment_id);
  AnnotationSession advance(const std::string& session_id, AdvanceStep step);
  SubmissionReceipt submit_session(const std::string& session_id);
  AnnotationSession mark_reviewed(const std::string& session_id, const std::string& note);
  // Submitted sessions, round(rate * N) of them chosen by a seeded
  // shuffle, returned sorted by id.
  std::vector<AnnotationSession> sample_for_review(double rate, std::uint64_t seed) const;
  std::vector<AnnotationSession> sessions() const;

  // Judgments.
  void register_output(const OutputRef& output);
  bool has_output(const OutputRef& output) const;
  std::string record_judgment(const JudgmentRecord& record);
  JudgmentAggregate aggregate_judgments(const OutputRef& output, JudgmentAxis axis) const;
  std::vector<JudgmentRecord> judgments() const;

  const Catalog& catalog() const noexcept { return catalog_; }
  std::uint64_t last_seq() const;

  // Writes a snapshot of the current state and empties the journal.
  void compact();

 private:
  struct State {
    std::map<std::string, WorkerProfile> workers;
    std::map<std::string, AnnotationSession> sessions;
    std::map<std::pair<std::string, std::string>, std::string> assignments;  // production pairs
    std::set<OutputRef> outputs;
    std::map<std::string, JudgmentRecord> judgments;  // key: judge|instance|system|axis
    std::size_t session_counter = 0;
  };

  void replay();
  void commit(nlohmann::json event);
  void apply(const nlohmann::json& event);
  nlohmann::json state_to_json() const;
  void state_from_json(const nlohmann::json& j);

  const WorkerProfile& worker_locked(const std::string& worker_id) const;
  const AnnotationSession& session_locked(const std::string& session_id) const;
  const AnnotationSession& open_session_locked(const std::string& session_id) const;
  const CatalogPair& pair_for(const AnnotationSession& session) const;

  Catalog catalog_;
  ServiceConfig config_;
  mutable std::shared_mutex mutex_;
  EventStore store_;
  State state_;
};

// Review token indices whose stem matches a content-word stem of the
// given summary sentence; stopwords and punctuation never match.
std::vector<std::size_t> embolden_tokens(const corpus::Summary& summary, std::size_t sentence,
                                         const corpus::Review& review);

}  // namespace fusebench::annotation
