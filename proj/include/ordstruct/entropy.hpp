#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ordstruct/corpus.hpp"

namespace ordstruct {

/// values[i - 1] holds l_i: the length of the shortest substring starting at
/// position i that does not occur inside positions 1..i-1. When the whole
/// remaining suffix occurs there, l_i is the suffix length plus one.
struct MatchLengths {
  std::vector<std::uint32_t> values;

  std::size_t size() const { return values.size(); }
  bool operator==(const MatchLengths&) const = default;
};

struct EntropyEstimate {
  double h_bpc = 0.0;
  std::size_t n = 0;
  /// Sum over i of l_i / log2(i + 1).
  double sum_term = 0.0;
};

/// Direct transcription of the definition; quadratic or worse. Test oracle.
MatchLengths match_lengths_naive(std::u32string_view seq);

/// Same result as match_lengths_naive in O(N) amortized suffix-automaton
/// steps, with unbounded lookback.
MatchLengths match_lengths(std::u32string_view seq);

inline MatchLengths match_lengths(const SymbolSequence& seq) { return match_lengths(seq.chars); }
inline MatchLengths match_lengths_naive(const SymbolSequence& seq) {
  return match_lengths_naive(seq.chars);
}

/// H = [ (1/N) sum_i l_i / log2(i + 1) ]^-1, in bits per character.
EntropyEstimate entropy_rate(const MatchLengths& ml);

inline EntropyEstimate estimate_entropy(std::u32string_view seq) {
  return entropy_rate(match_lengths(seq));
}

/// `index,l` lines (1-based index) with a header row.
std::string match_lengths_csv(const MatchLengths& ml);

}  // namespace ordstruct
