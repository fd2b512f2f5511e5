#include "fusebench/util/rng.hpp"

namespace fusebench {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::next() noexcept {
  state_ += kGolden;
  return mix64(state_);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) noexcept {
  // Rejection sampling removes modulo bias.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = next();
    if (r >= threshold) return r % bound;
  }
}

double SplitMix64::unit() noexcept {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

SplitMix64 SplitMix64::split(std::uint64_t index) const noexcept {
  return SplitMix64(mix64(state_ ^ mix64(index + kGolden)));
}

std::uint64_t stable_hash(std::string_view bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace fusebench
