#include "fusebench/annotation/http_api.hpp"

#include <functional>

#include "fusebench/annotation/json_forms.hpp"
#include "fusebench/corpus/interchange.hpp"

namespace fusebench::annotation {

namespace {

using Json = nlohmann::json;
using Handler = std::function<void(const httplib::Request&, httplib::Response&)>;

class BadRequest : public Error {
 public:
  explicit BadRequest(const std::string& message) : Error("BadRequest", message) {}
};

// Runs `fn`, translating exceptions into error responses.
Handler guarded(Handler fn) {
  return [fn = std::move(fn)](const httplib::Request& req, httplib::Response& res) {
    try {
      fn(req, res);
    } catch (const AnnotationError& e) {
      reply_error(res, http_status(e.errc()), e.code(), e.what());
    } catch (const Error& e) {
      reply_error(res, 400, e.code(), e.what());
    } catch (const Json::exception& e) {
      reply_error(res, 400, "BadRequest", e.what());
    } catch (const std::exception& e) {
      reply_error(res, 500, "Internal", e.what());
    }
  };
}

std::string required_param(const httplib::Request& req, const std::string& name) {
  if (!req.has_param(name)) throw BadRequest("missing query parameter '" + name + "'");
  return req.get_param_value(name);
}

std::size_t parse_index(const std::string& text, const std::string& name) {
  std::size_t pos = 0;
  unsigned long long value = 0;
  try {
    value = std::stoull(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != text.size() || text.front() == '-') {
    throw BadRequest("'" + name + "' must be a non-negative integer");
  }
  return static_cast<std::size_t>(value);
}

Json documents_json(const CatalogPair& pair) {
  auto doc = [](const corpus::Document& d) {
    return Json{{"id", d.id},
                {"text", d.text},
                {"sentences", corpus::spans_to_json(d.sentences)}};
  };
  Json reviews = Json::array();
  for (const auto& r : pair.review_set.reviews) reviews.push_back(doc(r));
  return {{"review_set_id", pair.review_set.id}, {"reviews", reviews}, {"summary", doc(pair.summary)}};
}

}  // namespace

int http_status(AnnotationErrc code) {
  switch (code) {
    case AnnotationErrc::UnknownWorker:
    case AnnotationErrc::UnknownSession:
    case AnnotationErrc::UnknownPair:
    case AnnotationErrc::UnknownAlignment:
    case AnnotationErrc::UnknownOutput:
    case AnnotationErrc::NoJudgments:
      return 404;
    case AnnotationErrc::UnqualifiedWorker:
      return 403;
    case AnnotationErrc::PairAlreadyAssigned:
    case AnnotationErrc::SessionClosed:
    case AnnotationErrc::TerminalState:
    case AnnotationErrc::TutorialRequired:
      return 409;
    case AnnotationErrc::WrongFocusedSentence:
    case AnnotationErrc::WrongReview:
    case AnnotationErrc::SpanOutOfBounds:
    case AnnotationErrc::IndexOutOfRange:
    case AnnotationErrc::ScoreOutOfRange:
      return 422;
    case AnnotationErrc::InvalidArgument:
      return 400;
    case AnnotationErrc::CorruptStore:
      return 500;
  }
  return 500;
}

void reply_json(httplib::Response& res, const Json& body, int status) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void reply_error(httplib::Response& res, int status, const std::string& code,
                 const std::string& message) {
  reply_json(res, {{"code", code}, {"message", message}}, status);
}

Json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return Json::object();
  auto body = Json::parse(req.body, nullptr, false);
  if (body.is_discarded()) throw BadRequest("request body is not valid JSON");
  if (!body.is_object()) throw BadRequest("request body must be a JSON object");
  return body;
}

void register_annotation_routes(httplib::Server& server, AnnotationService& service) {
  auto& svc = service;

  server.Post("/workers", guarded([&svc](const auto& req, auto& res) {
    const auto body = parse_body(req);
    reply_json(res, to_json(svc.register_worker(body.at("worker_id").template get<std::string>())), 201);
  }));

  server.Get(R"(/workers/([^/]+))", guarded([&svc](const auto& req, auto& res) {
    reply_json(res, to_json(svc.worker(req.matches[1])));
  }));

  server.Post(R"(/workers/([^/]+)/qualification)", guarded([&svc](const auto& req, auto& res) {
    const auto body = parse_body(req);
    const std::string worker_id = req.matches[1];
    if (body.value("tutorial_completed", false)) {
      reply_json(res, to_json(svc.complete_tutorial(worker_id)));
      return;
    }
    const auto result = body.at("result").template get<std::string>();
    if (result != "passed" && result != "failed") {
      throw BadRequest("result must be 'passed' or 'failed'");
    }
    reply_json(res, to_json(svc.advance_qualification(worker_id, result == "passed",
                                                      body.value("note", std::string{}))));
  }));

  server.Post("/sessions", guarded([&svc](const auto& req, auto& res) {
    const auto body = parse_body(req);
    const auto s = svc.start_session(body.at("worker_id").template get<std::string>(),
                                     body.at("review_set_id").template get<std::string>(),
                                     body.at("summary_id").template get<std::string>());
    reply_json(res, to_json(s), 201);
  }));

  server.Get("/sessions", guarded([&svc](const auto& req, auto& res) {
    std::vector<AnnotationSession> list;
    if (req.has_param("sample_rate")) {
      double rate = 0.0;
      try {
        rate = std::stod(req.get_param_value("sample_rate"));
      } catch (const std::exception&) {
        throw BadRequest("sample_rate must be a number");
      }
      const auto seed = req.has_param("seed") ? parse_index(req.get_param_value("seed"), "seed") : 0;
      list = svc.sample_for_review(rate, seed);
    } else {
      list = svc.sessions();
    }
    Json out = Json::array();
    for (const auto& s : list) out.push_back(to_json(s));
    reply_json(res, {{"sessions", out}});
  }));

  server.Get(R"(/sessions/([^/]+))", guarded([&svc](const auto& req, auto& res) {
    reply_json(res, to_json(svc.session(req.matches[1])));
  }));

  server.Get(R"(/sessions/([^/]+)/documents)", guarded([&svc](const auto& req, auto& res) {
    const auto s = svc.session(req.matches[1]);
    const auto* pair = svc.catalog().find(s.review_set_id, s.summary_id);
    if (pair == nullptr) throw AnnotationError(AnnotationErrc::UnknownPair, "pair not in catalog");
    reply_json(res, documents_json(*pair));
  }));

  server.Get(R"(/sessions/([^/]+)/embolden)", guarded([&svc](const auto& req, auto& res) {
    const auto review = parse_index(required_param(req, "review"), "review");
    reply_json(res, {{"review", review}, {"token_indices", svc.embolden(req.matches[1], review)}});
  }));

  server.Post(R"(/sessions/([^/]+)/alignments)", guarded([&svc](const auto& req, auto& res) {
    const std::string id = req.matches[1];
    const auto result = svc.save_alignment(id, corpus::alignment_from_json(parse_body(req)));
    auto body = to_json(result);
    body["session"] = to_json(svc.session(id));
    reply_json(res, body, result.status == SaveResult::Status::Saved ? 201 : 200);
  }));

  server.Delete(R"(/sessions/([^/]+)/alignments/([^/]+))", guarded([&svc](const auto& req, auto& res) {
    const std::string id = req.matches[1];
    svc.delete_alignment(id, req.matches[2]);
    reply_json(res, to_json(svc.session(id)));
  }));

  server.Post(R"(/sessions/([^/]+)/advance)", guarded([&svc](const auto& req, auto& res) {
    const auto body = parse_body(req);
    const auto step = parse_advance_step(body.at("step").template get<std::string>());
    reply_json(res, to_json(svc.advance(req.matches[1], step)));
  }));

  server.Post(R"(/sessions/([^/]+)/submit)", guarded([&svc](const auto& req, auto& res) {
    reply_json(res, to_json(svc.submit_session(req.matches[1])));
  }));

  server.Post(R"(/sessions/([^/]+)/review)", guarded([&svc](const auto& req, auto& res) {
    const auto body = parse_body(req);
    reply_json(res, to_json(svc.mark_reviewed(req.matches[1], body.value("note", std::string{}))));
  }));

  server.Post("/outputs", guarded([&svc](const auto& req, auto& res) {
    const auto ref = output_ref_from_json(parse_body(req));
    svc.register_output(ref);
    reply_json(res, to_json(ref), 201);
  }));

  server.Post("/judgments", guarded([&svc](const auto& req, auto& res) {
    const auto record = judgment_from_json(parse_body(req));
    reply_json(res, {{"id", svc.record_judgment(record)}}, 201);
  }));

  server.Get("/judgments/aggregate", guarded([&svc](const auto& req, auto& res) {
    const OutputRef ref{required_param(req, "instance_id"), required_param(req, "system_id")};
    const auto axis = parse_axis(required_param(req, "axis"));
    auto body = to_json(svc.aggregate_judgments(ref, axis));
    body["instance_id"] = ref.instance_id;
    body["system_id"] = ref.system_id;
    body["axis"] = to_string(axis);
    reply_json(res, body);
  }));
}

}  // namespace fusebench::annotation
