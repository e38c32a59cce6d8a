#include "ordstruct/seeds.hpp"

#include <array>

namespace ordstruct {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

std::uint64_t derive_seed(const SeedSpec& spec) {
  constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
  const std::array<std::uint64_t, 4> words{
      fnv1a64(spec.translation_id),
      static_cast<std::uint64_t>(static_cast<std::int64_t>(spec.book_id)),
      spec.replicate,
      static_cast<std::uint64_t>(spec.purpose),
  };
  std::uint64_t h = mix64(spec.master_seed + kGolden);
  for (auto w : words) h = mix64((h ^ w) + kGolden);
  return h;
}

std::uint64_t Xorshift64Star::below(std::uint64_t bound) {
  if (bound <= 1) return 0;
  // 2^64 mod bound, computed without 128-bit arithmetic.
  const std::uint64_t rem = (max() - bound + 1) % bound;
  const std::uint64_t limit = rem == 0 ? 0 : max() - rem + 1;
  for (;;) {
    std::uint64_t r = (*this)();
    if (limit == 0 || r < limit) return r % bound;
  }
}

}  // namespace ordstruct
