#include "fusebench/corpus/interchange.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

#include "fusebench/corpus/errors.hpp"
#include "fusebench/util/journal.hpp"
#include "fusebench/util/rng.hpp"

namespace fusebench::corpus {

namespace {

std::string require_nfc(const std::string& text, const std::string& what) {
  if (normalize_nfc(text) != text) {
    throw CorpusError(CorpusErrc::MalformedDocument,
                      what + " is not NFC-normalized; run `ingest` first");
  }
  return text;
}

Document document_from(const nlohmann::json& j, const std::string& what) {
  const auto text = require_nfc(j.at("text").get<std::string>(), what);
  return Document::from_text(j.at("id").get<std::string>(), text);
}

}  // namespace

nlohmann::json spans_to_json(const std::vector<Span>& spans) {
  auto arr = nlohmann::json::array();
  for (const Span& s : spans) arr.push_back({s.start, s.end});
  return arr;
}

std::vector<Span> spans_from_json(const nlohmann::json& j) {
  std::vector<Span> spans;
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2) {
      throw CorpusError(CorpusErrc::MalformedDocument, "span must be [start, end]");
    }
    spans.push_back({pair[0].get<std::size_t>(), pair[1].get<std::size_t>()});
  }
  return spans;
}

nlohmann::json alignment_to_json(const Alignment& a, bool with_id) {
  nlohmann::json j{
      {"summary_sentence_index", a.summary_sentence_index},
      {"summary_spans", spans_to_json(a.summary_spans)},
      {"review_id", a.highlight.review_id},
      {"highlight_spans", spans_to_json(a.highlight.spans)},
      {"annotator_id", a.annotator_id},
  };
  if (a.aspect_label) j["aspect_label"] = *a.aspect_label;
  if (with_id) j["id"] = a.id;
  return j;
}

Alignment alignment_from_json(const nlohmann::json& j) {
  Alignment a;
  a.id = j.value("id", std::string{});
  a.summary_sentence_index = j.at("summary_sentence_index").get<std::size_t>();
  a.summary_spans = spans_from_json(j.at("summary_spans"));
  a.highlight.review_id = j.at("review_id").get<std::string>();
  a.highlight.spans = spans_from_json(j.at("highlight_spans"));
  if (j.contains("aspect_label") && !j.at("aspect_label").is_null()) {
    a.aspect_label = j.at("aspect_label").get<std::string>();
  }
  a.annotator_id = j.value("annotator_id", std::string{});
  return a;
}

std::string derive_review_set_id(const ReviewSet& reviews) {
  std::string material;
  for (const Review& r : reviews.reviews) {
    material += r.id;
    material.push_back('\x1f');
    material += r.text;
    material.push_back('\x1e');
  }
  char buf[24];
  std::snprintf(buf, sizeof buf, "rs-%016llx",
                static_cast<unsigned long long>(stable_hash(material)));
  return buf;
}

nlohmann::json instance_to_json(const FiCInstance& inst) {
  nlohmann::json reviews = nlohmann::json::array();
  for (const Review& r : inst.review_set.reviews) {
    reviews.push_back({{"id", r.id}, {"text", r.text}});
  }
  nlohmann::json alignments = nlohmann::json::array();
  for (const Alignment& a : inst.alignments) alignments.push_back(alignment_to_json(a));
  return {
      {"instance_id", inst.instance_id},
      {"split", to_string(inst.split)},
      {"origin", to_string(inst.review_set.origin)},
      {"review_set_id", inst.review_set.id},
      {"reviews", std::move(reviews)},
      {"summary", {{"id", inst.fused_text.id}, {"text", inst.fused_text.text}}},
      {"alignments", std::move(alignments)},
  };
}

FiCInstance instance_from_json(const nlohmann::json& j) {
  try {
    FiCInstance inst;
    inst.instance_id = j.at("instance_id").get<std::string>();
    inst.split = parse_split(j.value("split", std::string("train")));
    inst.review_set.origin = parse_origin(j.value("origin", std::string("Other")));
    for (const auto& r : j.at("reviews")) {
      inst.review_set.reviews.push_back(document_from(r, "review text"));
    }
    inst.review_set.id = j.contains("review_set_id")
                             ? j.at("review_set_id").get<std::string>()
                             : derive_review_set_id(inst.review_set);
    inst.fused_text = document_from(j.at("summary"), "summary text");
    for (const auto& a : j.value("alignments", nlohmann::json::array())) {
      inst.alignments.push_back(alignment_from_json(a));
    }
    inst.highlights = merge_highlights(inst.alignments, inst.review_set);
    return inst;
  } catch (const nlohmann::json::exception& e) {
    throw CorpusError(CorpusErrc::MalformedDocument, e.what());
  }
}

std::vector<nlohmann::json> read_ndjson(const std::filesystem::path& path) {
  std::vector<nlohmann::json> out;
  std::istringstream in(read_file(path));
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto parsed = nlohmann::json::parse(line, nullptr, false);
    if (parsed.is_discarded()) {
      throw CorpusError(CorpusErrc::MalformedDocument,
                        path.string() + ":" + std::to_string(lineno) + ": invalid JSON");
    }
    out.push_back(std::move(parsed));
  }
  return out;
}

std::vector<FiCInstance> load_instances(const std::filesystem::path& path) {
  std::vector<FiCInstance> out;
  auto load_one = [&](const std::filesystem::path& file) {
    const auto ext = file.extension().string();
    try {
      if (ext == ".jsonl" || ext == ".ndjson") {
        for (const auto& j : read_ndjson(file)) out.push_back(instance_from_json(j));
      } else {
        auto j = nlohmann::json::parse(read_file(file), nullptr, false);
        if (j.is_discarded()) {
          throw CorpusError(CorpusErrc::MalformedDocument, "invalid JSON");
        }
        if (j.is_array()) {
          for (const auto& item : j) out.push_back(instance_from_json(item));
        } else {
          out.push_back(instance_from_json(j));
        }
      }
    } catch (const CorpusError& e) {
      throw CorpusError(e.errc(), file.string() + ": " + e.what());
    }
  };

  if (std::filesystem::is_directory(path)) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(path)) {
      const auto ext = entry.path().extension().string();
      if (entry.is_regular_file() && (ext == ".json" || ext == ".jsonl" || ext == ".ndjson")) {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) load_one(f);
  } else {
    load_one(path);
  }

  std::set<std::string> seen;
  for (const auto& inst : out) {
    if (!seen.insert(inst.instance_id).second) {
      throw CorpusError(CorpusErrc::DuplicateId,
                        "duplicate instance_id '" + inst.instance_id + "'");
    }
  }
  return out;
}

void save_instances(const std::filesystem::path& dir,
                    const std::vector<FiCInstance>& instances) {
  std::filesystem::create_directories(dir);
  for (const auto& inst : instances) {
    write_file_atomic(dir / (inst.instance_id + ".json"),
                      instance_to_json(inst).dump(2) + "\n");
  }
}

std::vector<SystemOutput> load_system_outputs(const std::filesystem::path& path,
                                              const std::string& default_system_id) {
  std::vector<SystemOutput> outputs;
  for (const auto& j : read_ndjson(path)) {
    try {
      outputs.push_back(SystemOutput::from_passage(
          j.at("instance_id").get<std::string>(),
          j.value("system_id", default_system_id), j.at("passage").get<std::string>()));
    } catch (const nlohmann::json::exception& e) {
      throw CorpusError(CorpusErrc::MalformedDocument, path.string() + ": " + e.what());
    }
  }
  return outputs;
}

}  // namespace fusebench::corpus
