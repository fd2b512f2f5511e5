#pragma once

#include <string>

#include <httplib.h>
#include <json.hpp>

#include "fusebench/annotation/service.hpp"

namespace fusebench::annotation {

// HTTP status for an annotation error code.
int http_status(AnnotationErrc code);

// Registers the annotation routes on `server`. Error bodies are
// {"code", "message"}; success bodies are the JSON forms of the returned
// domain values. `service` must outlive the server.
//
//   POST   /workers                          {worker_id}
//   GET    /workers/{id}
//   POST   /workers/{id}/qualification       {result: passed|failed, note?}
//                                            or {tutorial_completed: true}
//   POST   /sessions                         {worker_id, review_set_id, summary_id}
//   GET    /sessions                         ?sample_rate=r&seed=s for an audit sample
//   GET    /sessions/{id}
//   GET    /sessions/{id}/documents
//   GET    /sessions/{id}/embolden?review=k
//   POST   /sessions/{id}/alignments         Alignment
//   DELETE /sessions/{id}/alignments/{aid}
//   POST   /sessions/{id}/advance            {step}
//   POST   /sessions/{id}/submit
//   POST   /sessions/{id}/review             {note?}
//   POST   /outputs                          {instance_id, system_id}
//   POST   /judgments                        JudgmentRecord
//   GET    /judgments/aggregate?instance_id=&system_id=&axis=
void register_annotation_routes(httplib::Server& server, AnnotationService& service);

// Shared helpers for JSON routes.
void reply_json(httplib::Response& res, const nlohmann::json& body, int status = 200);
void reply_error(httplib::Response& res, int status, const std::string& code,
                 const std::string& message);
nlohmann::json parse_body(const httplib::Request& req);

}  // namespace fusebench::annotation
