#pragma once

#include <json.hpp>

#include "fusebench/annotation/types.hpp"

namespace fusebench::annotation {

nlohmann::json to_json(const QualificationState& state);
QualificationState qualification_from_json(const nlohmann::json& j);

nlohmann::json to_json(const FeedbackRecord& record);
FeedbackRecord feedback_from_json(const nlohmann::json& j);

nlohmann::json to_json(const WorkerProfile& profile);
WorkerProfile worker_from_json(const nlohmann::json& j);

nlohmann::json to_json(const AnnotationSession& session);
AnnotationSession session_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SubmissionReceipt& receipt);
nlohmann::json to_json(const SaveResult& result);

nlohmann::json to_json(const OutputRef& ref);
OutputRef output_ref_from_json(const nlohmann::json& j);

// {judge_id, instance_id, system_id, axis, score}
nlohmann::json to_json(const JudgmentRecord& record);
JudgmentRecord judgment_from_json(const nlohmann::json& j);

nlohmann::json to_json(const JudgmentAggregate& aggregate);

}  // namespace fusebench::annotation
