#include "ordstruct/testkit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "ordstruct/seeds.hpp"
#include "ordstruct/unicode.hpp"

namespace ordstruct::testkit {

namespace {

constexpr double kNormTolerance = 1e-12;

void check_distribution(const std::vector<double>& p) {
  if (p.empty()) throw std::invalid_argument("distribution is empty");
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("distribution has a negative or non-finite entry");
    sum += v;
  }
  if (std::abs(sum - 1.0) > kNormTolerance) throw std::invalid_argument("distribution does not sum to 1");
}

double shannon(const std::vector<double>& p) {
  double h = 0.0;
  for (double v : p) {
    if (v > 0.0) h -= v * std::log2(v);
  }
  return h;
}

// Fixed point of pi = pi P, iterated on the lazy chain (P + I) / 2 so that
// periodic chains converge too.
std::vector<double> stationary(const std::vector<std::vector<double>>& P) {
  const std::size_t k = P.size();
  std::vector<double> pi(k, 1.0 / static_cast<double>(k)), next(k);
  for (int iter = 0; iter < 10'000'000; ++iter) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t i = 0; i < k; ++i) {
      next[i] += 0.5 * pi[i];
      for (std::size_t j = 0; j < k; ++j) next[j] += 0.5 * pi[i] * P[i][j];
    }
    double delta = 0.0;
    for (std::size_t i = 0; i < k; ++i) delta = std::max(delta, std::abs(next[i] - pi[i]));
    pi.swap(next);
    if (delta < kNormTolerance) break;
  }
  const double sum = std::accumulate(pi.begin(), pi.end(), 0.0);
  for (auto& v : pi) v /= sum;
  return pi;
}

std::size_t draw(const std::vector<double>& p, Xorshift64Star& rng) {
  double u = rng.unit();
  for (std::size_t j = 0; j + 1 < p.size(); ++j) {
    if (u < p[j]) return j;
    u -= p[j];
  }
  return p.size() - 1;
}

}  // namespace

SyntheticSource SyntheticSource::iid(std::vector<double> probabilities) {
  check_distribution(probabilities);
  SyntheticSource s;
  s.kind_ = SourceKind::iid;
  s.h_true_ = shannon(probabilities);
  s.probabilities_ = std::move(probabilities);
  return s;
}

SyntheticSource SyntheticSource::uniform(std::size_t k) {
  if (k == 0) throw std::invalid_argument("alphabet size must be >= 1");
  return iid(std::vector<double>(k, 1.0 / static_cast<double>(k)));
}

SyntheticSource SyntheticSource::markov1(std::vector<std::vector<double>> transitions) {
  const std::size_t k = transitions.size();
  if (k == 0) throw std::invalid_argument("transition matrix is empty");
  for (const auto& row : transitions) {
    if (row.size() != k) throw std::invalid_argument("transition matrix is not square");
    check_distribution(row);
  }
  SyntheticSource s;
  s.kind_ = SourceKind::markov1;
  s.probabilities_ = stationary(transitions);
  for (std::size_t i = 0; i < k; ++i) s.h_true_ += s.probabilities_[i] * shannon(transitions[i]);
  s.transitions_ = std::move(transitions);
  return s;
}

char32_t symbol(std::size_t j) {
  return j < 26 ? static_cast<char32_t>(U'a' + j) : static_cast<char32_t>(0xC0 + (j - 26));
}

SymbolSequence generate(const SyntheticSource& source, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("sequence length must be >= 1");
  Xorshift64Star rng(mix64(seed));
  std::u32string chars;
  chars.reserve(n);
  std::size_t state = draw(source.probabilities(), rng);
  chars.push_back(symbol(state));
  for (std::size_t i = 1; i < n; ++i) {
    state = source.kind() == SourceKind::iid ? draw(source.probabilities(), rng)
                                             : draw(source.transitions()[state], rng);
    chars.push_back(symbol(state));
  }
  return make_sequence(std::move(chars));
}

Book to_book(const SymbolSequence& seq, std::size_t verse_length, int book_id, std::string translation_id,
             std::string language) {
  if (verse_length == 0) throw std::invalid_argument("verse length must be >= 1");
  if (seq.chars.find(U' ') != std::u32string::npos) throw std::invalid_argument("sequence contains spaces");
  Book book;
  book.book_id = book_id;
  book.translation_id = std::move(translation_id);
  book.language = std::move(language);
  int verse = 1;
  for (std::size_t pos = 0; pos < seq.chars.size(); pos += verse_length) {
    book.verses.push_back({{book_id, 1, verse++}, seq.chars.substr(pos, verse_length)});
  }
  return book;
}

std::string_view role_marking_name(RoleMarking mode) {
  return mode == RoleMarking::positional ? "positional" : "affixal";
}

namespace {

std::vector<std::u32string> make_roots(std::size_t count, Xorshift64Star& rng, std::set<std::u32string>& used) {
  static constexpr std::u32string_view kConsonants = U"ptkmnslrbdg";
  static constexpr std::u32string_view kVowels = U"aeiou";
  std::vector<std::u32string> roots;
  while (roots.size() < count) {
    std::u32string root;
    const auto syllables = 2 + rng.below(2);
    for (std::uint64_t s = 0; s < syllables; ++s) {
      root.push_back(kConsonants[rng.below(kConsonants.size())]);
      root.push_back(kVowels[rng.below(kVowels.size())]);
    }
    if (used.insert(root).second) roots.push_back(std::move(root));
  }
  return roots;
}

// Zipf-like weights 1/(r+1) over n items.
std::vector<double> zipf(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t r = 0; r < n; ++r) w[r] = 1.0 / static_cast<double>(r + 1);
  const double sum = std::accumulate(w.begin(), w.end(), 0.0);
  for (auto& v : w) v /= sum;
  return w;
}

bool ends_with(std::u32string_view s, std::u32string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

Book render_toy_corpus(const ToyLanguageSpec& spec, std::size_t n_sentences, std::uint64_t seed) {
  if (n_sentences == 0) throw std::invalid_argument("need at least one sentence");
  if (spec.min_clauses == 0 || spec.max_clauses < spec.min_clauses) {
    throw std::invalid_argument("invalid clause range");
  }
  Xorshift64Star vocab_rng(mix64(spec.vocabulary_seed));
  std::set<std::u32string> used;
  auto nouns = spec.noun_roots;
  auto verbs = spec.verb_roots;
  for (const auto& r : nouns) used.insert(r);
  for (const auto& r : verbs) used.insert(r);
  if (nouns.empty()) nouns = make_roots(spec.nouns, vocab_rng, used);
  if (verbs.empty()) verbs = make_roots(spec.verbs, vocab_rng, used);
  if (nouns.empty() || verbs.empty()) throw std::invalid_argument("empty vocabulary");

  const std::u32string_view affixes[] = {spec.agent_suffix, spec.patient_suffix};
  if (affixes[0].empty() || affixes[1].empty() || affixes[0] == affixes[1]) {
    throw std::invalid_argument("role suffixes must be nonempty and distinct");
  }
  for (const auto* group : {&nouns, &verbs}) {
    for (const auto& root : *group) {
      if (root.empty() || root.find(U' ') != std::u32string::npos) throw std::invalid_argument("invalid root");
      for (auto affix : affixes) {
        if (ends_with(root, affix)) {
          throw std::invalid_argument("suffix '" + unicode::encode(affix) + "' collides with root '" +
                                      unicode::encode(root) + "'");
        }
      }
    }
  }

  const auto noun_weights = zipf(nouns.size());
  const auto verb_weights = zipf(verbs.size());
  Xorshift64Star message_rng(mix64(seed));
  Xorshift64Star order_rng(mix64(seed ^ 0x5DEECE66DULL));

  Book book;
  book.book_id = spec.book_id;
  book.translation_id = "toy_" + std::string(role_marking_name(spec.mode));
  book.language = book.translation_id;
  for (std::size_t s = 0; s < n_sentences; ++s) {
    const auto clauses = spec.min_clauses + message_rng.below(spec.max_clauses - spec.min_clauses + 1);
    std::u32string text;
    for (std::uint64_t c = 0; c < clauses; ++c) {
      const auto verb = draw(verb_weights, message_rng);
      const auto agent = draw(noun_weights, message_rng);
      // Patients depend on the verb, which gives the stream collocations.
      const auto patient = (draw(noun_weights, message_rng) + 3 * verb + 1) % nouns.size();
      std::vector<std::u32string> words;
      if (spec.mode == RoleMarking::positional) {
        words = {nouns[agent], verbs[verb], nouns[patient]};
      } else {
        words = {nouns[agent] + spec.agent_suffix, verbs[verb], nouns[patient] + spec.patient_suffix};
        shuffle(words.begin(), words.end(), order_rng);
      }
      for (const auto& w : words) {
        if (!text.empty()) text.push_back(U' ');
        text += w;
      }
    }
    book.verses.push_back({{spec.book_id, 1, static_cast<int>(s + 1)}, std::move(text)});
  }
  return book;
}

}  // namespace ordstruct::testkit
