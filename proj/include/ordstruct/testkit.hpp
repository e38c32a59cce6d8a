#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ordstruct/corpus.hpp"

namespace ordstruct::testkit {

enum class SourceKind { iid, markov1 };

/// Stationary source with a known entropy rate.
class SyntheticSource {
 public:
  static SyntheticSource iid(std::vector<double> probabilities);
  static SyntheticSource uniform(std::size_t k);
  /// Row-major k x k transition matrix.
  static SyntheticSource markov1(std::vector<std::vector<double>> transitions);

  SourceKind kind() const { return kind_; }
  std::size_t alphabet_size() const { return probabilities_.size(); }
  /// Symbol probabilities (iid) or the stationary distribution (markov1).
  const std::vector<double>& probabilities() const { return probabilities_; }
  const std::vector<std::vector<double>>& transitions() const { return transitions_; }
  double entropy_rate() const { return h_true_; }

 private:
  SyntheticSource() = default;

  SourceKind kind_ = SourceKind::iid;
  std::vector<double> probabilities_;
  std::vector<std::vector<double>> transitions_;
  double h_true_ = 0.0;
};

/// Printable symbol for index j: 'a'.. 'z', then code points from U+00C0.
char32_t symbol(std::size_t j);

SymbolSequence generate(const SyntheticSource& source, std::size_t n, std::uint64_t seed);

/// Splits a space-free sequence into verses of `verse_length` characters.
Book to_book(const SymbolSequence& seq, std::size_t verse_length, int book_id = 1,
             std::string translation_id = "synthetic", std::string language = "und");

enum class RoleMarking {
  positional,  // agent verb patient, bare roots
  affixal,     // free constituent order, role suffixes on arguments
};

std::string_view role_marking_name(RoleMarking mode);

struct ToyLanguageSpec {
  RoleMarking mode = RoleMarking::positional;
  /// Generated from vocabulary_seed when empty.
  std::vector<std::u32string> noun_roots;
  std::vector<std::u32string> verb_roots;
  std::size_t nouns = 40;
  std::size_t verbs = 20;
  std::u32string agent_suffix = U"qo";
  std::u32string patient_suffix = U"zu";
  /// Clauses per sentence, uniform in [min_clauses, max_clauses].
  std::size_t min_clauses = 1;
  std::size_t max_clauses = 2;
  std::uint64_t vocabulary_seed = 7;
  int book_id = 1;
};

/// One sentence per verse. The message stream (who does what to whom)
/// depends only on `seed` and the vocabulary, so both modes render the same
/// messages. Throws std::invalid_argument when a suffix collides with a root
/// ending.
Book render_toy_corpus(const ToyLanguageSpec& spec, std::size_t n_sentences, std::uint64_t seed);

}  // namespace ordstruct::testkit
