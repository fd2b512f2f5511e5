#include <doctest.h>

#include <filesystem>

#include "fusebench/util/journal.hpp"
#include "fusebench/util/rng.hpp"

using namespace fusebench;

namespace {
std::filesystem::path fresh_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}
}  // namespace

TEST_CASE("journal: torn tail is dropped and truncated") {
  const auto dir = fresh_dir("fusebench_journal");
  Journal j(dir / "log.ndjson");
  for (int i = 0; i < 5; ++i) j.append({{"i", i}});
  const auto full = read_file(j.path());
  for (std::size_t cut = 0; cut <= full.size(); ++cut) {
    write_file_atomic(j.path(), full.substr(0, cut));
    const auto records = j.load();
    // A prefix of the appended records survives.
    for (std::size_t k = 0; k < records.size(); ++k) CHECK(records[k]["i"] == k);
    CHECK(std::filesystem::file_size(j.path()) <= cut);
    // Appends after recovery continue cleanly.
    j.append({{"i", records.size()}});
    CHECK(j.load().size() == records.size() + 1);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("event store: compaction keeps state and skips folded events") {
  const auto dir = fresh_dir("fusebench_eventstore");
  {
    EventStore store(dir, "s");
    store.load();
    store.append({{"v", 1}});
    store.append({{"v", 2}});
    store.compact({{"sum", 3}});
    store.append({{"v", 4}});
  }
  EventStore store(dir, "s");
  const auto loaded = store.load();
  REQUIRE(loaded.snapshot.has_value());
  CHECK((*loaded.snapshot)["sum"] == 3);
  REQUIRE(loaded.events.size() == 1);
  CHECK(loaded.events[0]["v"] == 4);
  CHECK(store.last_seq() == 3);
  std::filesystem::remove_all(dir);
}

TEST_CASE("splitmix: deterministic, bounded, independent splits") {
  SplitMix64 a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  SplitMix64 r(1);
  for (int i = 0; i < 1000; ++i) {
    CHECK(r.below(7) < 7);
    const double u = r.unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  CHECK(SplitMix64(9).split(0).next() != SplitMix64(9).split(1).next());
  CHECK(SplitMix64(9).split(3).next() == SplitMix64(9).split(3).next());
}
