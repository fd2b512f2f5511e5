#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>

namespace fusebench {

// SplitMix64 generator. Integer and real draws are defined here, not by
// <random> distributions, so seeded output is identical on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept;

  // Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound) noexcept;

  // Uniform double in [0, 1).
  double unit() noexcept;

  // Independent stream number `index` derived from this generator's seed
  // material; does not advance *this.
  SplitMix64 split(std::uint64_t index) const noexcept;

  template <typename T>
  void shuffle(std::span<T> items) noexcept {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      using std::swap;
      swap(items[i - 1], items[j]);
    }
  }

 private:
  std::uint64_t state_;
};

// Final avalanche step of SplitMix64; usable as a 64-bit hash mixer.
std::uint64_t mix64(std::uint64_t x) noexcept;

// FNV-1a over bytes; stable across platforms.
std::uint64_t stable_hash(std::string_view bytes) noexcept;

}  // namespace fusebench
