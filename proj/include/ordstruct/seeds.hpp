#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace ordstruct {

enum class SeedPurpose : std::uint64_t {
  verse_shuffle = 1,
  order_shuffle = 2,
  mask_draw = 3,
};

struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::string translation_id;
  int book_id = 0;
  std::uint64_t replicate = 0;
  SeedPurpose purpose = SeedPurpose::verse_shuffle;
};

/// 64-bit FNV-1a over raw bytes.
std::uint64_t fnv1a64(std::string_view bytes);

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Task seed for one randomized step; the byte-level construction is
/// described in docs/seeds.md.
std::uint64_t derive_seed(const SeedSpec& spec);

/// xorshift64* generator (shifts 12/25/27, multiplier 0x2545F4914F6CDD1D).
class Xorshift64Star {
 public:
  using result_type = std::uint64_t;

  explicit Xorshift64Star(std::uint64_t seed) : state_(seed != 0 ? seed : kZeroSeedReplacement) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1DULL;
  }

  /// Uniform integer in [0, bound) by rejection: draws r until
  /// r < 2^64 - (2^64 mod bound), then returns r mod bound.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform double in [0, 1) from the top 53 bits.
  double unit() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  static constexpr std::uint64_t kZeroSeedReplacement = 0x9E3779B97F4A7C15ULL;

 private:
  std::uint64_t state_;
};

/// Fisher-Yates, i from n-1 down to 1, j = rng.below(i + 1).
template <typename RandomIt>
void shuffle(RandomIt first, RandomIt last, Xorshift64Star& rng) {
  auto n = static_cast<std::uint64_t>(last - first);
  for (std::uint64_t i = n; i > 1; --i) {
    auto j = rng.below(i);
    using std::swap;
    swap(first[i - 1], first[j]);
  }
}

}  // namespace ordstruct
