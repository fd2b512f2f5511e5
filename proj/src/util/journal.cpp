#include "fusebench/util/journal.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

namespace fusebench {

namespace {

class FileDescriptor {
 public:
  FileDescriptor(const std::filesystem::path& path, int flags)
      : fd_(::open(path.c_str(), flags | O_CLOEXEC, 0644)) {
    if (fd_ < 0) {
      throw StorageError("cannot open " + path.string() + ": " +
                         std::strerror(errno));
    }
  }
  FileDescriptor(const FileDescriptor&) = delete;
  FileDescriptor& operator=(const FileDescriptor&) = delete;
  ~FileDescriptor() {
    if (fd_ >= 0) ::close(fd_);
  }

  void write_all(std::string_view bytes) {
    while (!bytes.empty()) {
      const ssize_t n = ::write(fd_, bytes.data(), bytes.size());
      if (n < 0) {
        if (errno == EINTR) continue;
        throw StorageError(std::string("write failed: ") + std::strerror(errno));
      }
      bytes.remove_prefix(static_cast<std::size_t>(n));
    }
  }

  void sync() {
    if (::fsync(fd_) != 0) {
      throw StorageError(std::string("fsync failed: ") + std::strerror(errno));
    }
  }

 private:
  int fd_;
};

void sync_directory(const std::filesystem::path& dir) {
  const int fd = ::open(dir.c_str(), O_RDONLY | O_DIRECTORY | O_CLOEXEC);
  if (fd >= 0) {
    ::fsync(fd);
    ::close(fd);
  }
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StorageError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::optional<std::string> read_file_if_exists(
    const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return std::nullopt;
  return read_file(path);
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::string& contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    FileDescriptor fd(tmp, O_WRONLY | O_CREAT | O_TRUNC);
    fd.write_all(contents);
    fd.sync();
  }
  std::filesystem::rename(tmp, path);
  sync_directory(path.has_parent_path() ? path.parent_path()
                                        : std::filesystem::path("."));
}

Journal::Journal(std::filesystem::path path) : path_(std::move(path)) {}

std::vector<nlohmann::json> Journal::load() {
  std::vector<nlohmann::json> records;
  const auto contents = read_file_if_exists(path_);
  if (!contents) return records;

  std::size_t pos = 0;
  std::size_t intact = 0;
  while (pos < contents->size()) {
    const auto nl = contents->find('\n', pos);
    if (nl == std::string::npos) break;
    const std::string_view line(contents->data() + pos, nl - pos);
    if (!line.empty()) {
      auto parsed = nlohmann::json::parse(line, nullptr, false);
      if (parsed.is_discarded()) break;
      records.push_back(std::move(parsed));
    }
    pos = nl + 1;
    intact = pos;
  }
  if (intact != contents->size()) {
    std::filesystem::resize_file(path_, intact);
  }
  return records;
}

void Journal::append(const nlohmann::json& record) {
  if (path_.has_parent_path()) {
    std::filesystem::create_directories(path_.parent_path());
  }
  FileDescriptor fd(path_, O_WRONLY | O_CREAT | O_APPEND);
  fd.write_all(record.dump() + "\n");
  fd.sync();
}

void Journal::reset() { write_file_atomic(path_, ""); }

EventStore::EventStore(std::filesystem::path dir, std::string name)
    : snapshot_path_(dir / (name + ".snapshot.json")),
      journal_(dir / (name + ".journal.ndjson")) {
  std::filesystem::create_directories(dir);
}

EventStore::Loaded EventStore::load() {
  Loaded out;
  std::uint64_t base = 0;
  if (auto text = read_file_if_exists(snapshot_path_)) {
    auto snap = nlohmann::json::parse(*text);
    base = snap.at("seq").get<std::uint64_t>();
    out.snapshot = std::move(snap.at("state"));
  }
  seq_ = base;
  pending_ = 0;
  for (auto& event : journal_.load()) {
    const auto seq = event.value("seq", std::uint64_t{0});
    if (seq <= base) continue;
    seq_ = seq;
    ++pending_;
    out.events.push_back(std::move(event));
  }
  return out;
}

void EventStore::append(nlohmann::json event) {
  event["seq"] = seq_ + 1;
  journal_.append(event);
  ++seq_;
  ++pending_;
}

void EventStore::compact(const nlohmann::json& state) {
  nlohmann::json snap{{"seq", seq_}, {"state", state}};
  write_file_atomic(snapshot_path_, snap.dump());
  journal_.reset();
  pending_ = 0;
}

}  // namespace fusebench
