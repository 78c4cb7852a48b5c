#pragma once

#include <cstdint>

namespace hnup {

/// Counter-based generator: the value at (seed, index, attempt) is a pure
/// function of its inputs, so any draw can be replayed without the ones
/// before it. Mixing is the splitmix64 finalizer applied to a Weyl sequence.
class CounterStream {
 public:
  static constexpr const char* kName = "splitmix64-counter";

  explicit constexpr CounterStream(std::uint64_t seed) : seed_(seed) {}

  constexpr std::uint64_t at(std::uint64_t index, std::uint64_t attempt = 0) const {
    std::uint64_t x = seed_ ^ mix(index * 0xD1B54A32D192ED03ULL + attempt * 0x8CB92BA72F3D8DD7ULL);
    return mix(x + 0x9E3779B97F4A7C15ULL);
  }

  constexpr std::uint64_t seed() const { return seed_; }

 private:
  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
};

}  // namespace hnup
