#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ordstruct/corpus.hpp"

namespace ordstruct {

enum class VariantKind { original, order_destroyed, structure_masked };
enum class OrderScope { per_verse, per_book };

std::string_view variant_name(VariantKind kind);

/// Word type -> replacement of the same length. Types shorter than two
/// characters never appear.
struct MaskTable {
  std::map<std::u32string, std::u32string> masks;
  std::vector<char32_t> mask_alphabet;

  /// Table mapping each mask back to its type.
  MaskTable inverted() const;
  /// `type<TAB>mask` lines, UTF-8, sorted by type.
  std::string to_tsv() const;
};

struct BookVariant {
  VariantKind kind = VariantKind::original;
  Book book;
  SymbolSequence sequence;
  std::vector<std::uint64_t> seeds;
  std::optional<MaskTable> mask;
};

class MaskExhaustedError : public std::runtime_error {
 public:
  MaskExhaustedError(std::size_t length, std::size_t types, std::size_t alphabet)
      : std::runtime_error("mask space exhausted for length " + std::to_string(length) + ": " +
                           std::to_string(types) + " types but only " + std::to_string(alphabet) +
                           "^" + std::to_string(length) + " possible masks"),
        length_(length) {}

  std::size_t length() const { return length_; }

 private:
  std::size_t length_;
};

/// Fisher-Yates permutation of [0, n) under xorshift64*(seed).
std::vector<std::size_t> verse_permutation(std::size_t n, std::uint64_t seed);

/// Verse k of the result is verse perm[k] of the input.
Book permute_verses(const Book& book, std::span<const std::size_t> perm);

Book shuffle_verses(const Book& book, std::uint64_t seed);

BookVariant destroy_word_order(const Book& book, std::uint64_t seed, OrderScope scope);

/// Draws a distinct random mask for every type of length >= 2, visiting types
/// in code-point lexicographic order. The mask alphabet is `alphabet` without
/// whitespace and control characters.
MaskTable build_mask_table(const std::map<std::u32string, std::size_t>& lexicon,
                           const std::set<char32_t>& alphabet, std::uint64_t seed);

BookVariant mask_word_structure(const Book& book, const MaskTable& table);

}  // namespace ordstruct
