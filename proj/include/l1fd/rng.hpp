#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

namespace l1fd {

/// Seed for a named, reproducible random stream.
///
/// Identical (value, stream_label) pairs reproduce identical sample
/// sequences. Distinct labels derive statistically independent streams,
/// so parallel consumers can draw from disjoint substreams without
/// shared state.
struct RandomSeed {
  std::uint64_t value = 0;
  std::string stream_label;

  /// Derive a child seed for the substream named `label`.
  RandomSeed derive(std::string_view label) const {
    RandomSeed child;
    child.value = value;
    child.stream_label = stream_label;
    child.stream_label += '/';
    child.stream_label += label;
    return child;
  }

  /// Derive an indexed child seed (e.g. one per table, repetition, trial).
  RandomSeed derive(std::string_view label, std::uint64_t index) const {
    RandomSeed child = derive(label);
    child.stream_label += '#';
    child.stream_label += std::to_string(index);
    return child;
  }
};

namespace detail {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

/// Collapse (value, stream_label) into one 64-bit stream key.
inline std::uint64_t stream_key(const RandomSeed& seed) {
  std::uint64_t h = mix64(seed.value + kGolden);
  for (unsigned char ch : seed.stream_label) {
    h = mix64((h ^ ch) * 0x100000001B3ull + kGolden);
  }
  return h;
}

}  // namespace detail

/// Counter-based uniform generator (SplitMix64 over key + counter).
///
/// The i-th output depends only on (stream key, i), so streams can be
/// split, replayed, or generated out of order deterministically.
class CounterRng {
 public:
  explicit CounterRng(const RandomSeed& seed)
      : key_(detail::stream_key(seed)) {}
  explicit CounterRng(std::uint64_t raw_key) : key_(raw_key) {}

  std::uint64_t next_u64() {
    return detail::mix64(key_ + (++counter_) * detail::kGolden);
  }

  /// Uniform in the open interval (0,1); never returns 0 or 1.
  double next_uniform_open() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Uniform in [0, width).
  double next_uniform(double width) {
    return width * (static_cast<double>(next_u64() >> 11) * 0x1.0p-53);
  }

  /// Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t next_below(std::uint64_t bound) {
    // 128-bit multiply-shift; bias is negligible for desk-scale bounds.
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
  }

  std::uint64_t key() const { return key_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace l1fd
