#include "ordstruct/transforms.hpp"

#include <numeric>
#include <unordered_set>

#include "ordstruct/seeds.hpp"
#include "ordstruct/unicode.hpp"

namespace ordstruct {

std::string_view variant_name(VariantKind kind) {
  switch (kind) {
    case VariantKind::original:
      return "original";
    case VariantKind::order_destroyed:
      return "order_destroyed";
    case VariantKind::structure_masked:
      return "structure_masked";
  }
  return "?";
}

MaskTable MaskTable::inverted() const {
  MaskTable inv;
  inv.mask_alphabet = mask_alphabet;
  for (const auto& [type, mask] : masks) inv.masks.emplace(mask, type);
  return inv;
}

std::string MaskTable::to_tsv() const {
  std::string out;
  for (const auto& [type, mask] : masks) {
    out += unicode::encode(type);
    out += '\t';
    out += unicode::encode(mask);
    out += '\n';
  }
  return out;
}

std::vector<std::size_t> verse_permutation(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Xorshift64Star rng(seed);
  shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

Book permute_verses(const Book& book, std::span<const std::size_t> perm) {
  if (perm.size() != book.verses.size()) {
    throw std::invalid_argument("permutation size does not match verse count");
  }
  Book out = book;
  for (std::size_t k = 0; k < perm.size(); ++k) out.verses[k] = book.verses[perm[k]];
  return out;
}

Book shuffle_verses(const Book& book, std::uint64_t seed) {
  if (book.empty()) throw std::invalid_argument("cannot shuffle an empty book");
  return permute_verses(book, verse_permutation(book.verses.size(), seed));
}

namespace {

std::u32string join_tokens(std::span<const std::u32string_view> tokens) {
  std::u32string out;
  for (auto t : tokens) {
    if (!out.empty()) out.push_back(U' ');
    out += t;
  }
  return out;
}

BookVariant make_variant(VariantKind kind, Book book, std::vector<std::uint64_t> seeds) {
  BookVariant v;
  v.kind = kind;
  v.sequence = flatten(book);
  v.book = std::move(book);
  v.seeds = std::move(seeds);
  return v;
}

}  // namespace

BookVariant destroy_word_order(const Book& book, std::uint64_t seed, OrderScope scope) {
  if (book.empty()) throw std::invalid_argument("cannot shuffle an empty book");
  Xorshift64Star rng(seed);
  Book out = book;
  if (scope == OrderScope::per_verse) {
    for (auto& verse : out.verses) {
      auto tokens = split_tokens(verse.text);
      shuffle(tokens.begin(), tokens.end(), rng);
      verse.text = join_tokens(tokens);
    }
  } else {
    std::vector<std::u32string_view> all;
    std::vector<std::size_t> counts;
    for (const auto& verse : book.verses) {
      auto tokens = split_tokens(verse.text);
      counts.push_back(tokens.size());
      all.insert(all.end(), tokens.begin(), tokens.end());
    }
    shuffle(all.begin(), all.end(), rng);
    std::size_t pos = 0;
    for (std::size_t k = 0; k < out.verses.size(); ++k) {
      out.verses[k].text = join_tokens(std::span(all).subspan(pos, counts[k]));
      pos += counts[k];
    }
  }
  return make_variant(VariantKind::order_destroyed, std::move(out), {seed});
}

namespace {

struct U32Hash {
  std::size_t operator()(const std::u32string& s) const noexcept {
    return std::hash<std::u32string>{}(s);
  }
};

// min(base^exp, cap) without overflow.
std::size_t saturating_pow(std::size_t base, std::size_t exp, std::size_t cap) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base == 0) return 0;
    if (r > cap / base) return cap;
    r *= base;
  }
  return r;
}

}  // namespace

MaskTable build_mask_table(const std::map<std::u32string, std::size_t>& lexicon,
                           const std::set<char32_t>& alphabet, std::uint64_t seed) {
  if (lexicon.empty()) throw std::invalid_argument("cannot build a mask table for an empty lexicon");
  MaskTable table;
  for (char32_t c : alphabet) {
    if (!unicode::is_space(c) && !unicode::is_control(c)) table.mask_alphabet.push_back(c);
  }

  std::map<std::size_t, std::size_t> types_per_length;
  for (const auto& [type, count] : lexicon) {
    if (type.size() >= 2) ++types_per_length[type.size()];
  }
  for (auto [length, types] : types_per_length) {
    if (saturating_pow(table.mask_alphabet.size(), length, types) < types) {
      throw MaskExhaustedError(length, types, table.mask_alphabet.size());
    }
  }

  Xorshift64Star rng(seed);
  std::unordered_set<std::u32string, U32Hash> used;
  const auto k = static_cast<std::uint64_t>(table.mask_alphabet.size());
  for (const auto& [type, count] : lexicon) {
    if (type.size() < 2) continue;
    std::u32string mask(type.size(), U'\0');
    do {
      for (auto& c : mask) c = table.mask_alphabet[rng.below(k)];
    } while (!used.insert(mask).second);
    table.masks.emplace(type, std::move(mask));
  }
  return table;
}

BookVariant mask_word_structure(const Book& book, const MaskTable& table) {
  if (book.empty()) throw std::invalid_argument("cannot mask an empty book");
  Book out = book;
  std::u32string key;
  for (auto& verse : out.verses) {
    std::u32string text;
    text.reserve(verse.text.size());
    for (auto token : split_tokens(verse.text)) {
      if (!text.empty()) text.push_back(U' ');
      if (token.size() < 2) {
        text += token;
        continue;
      }
      key.assign(token);
      auto it = table.masks.find(key);
      if (it == table.masks.end()) {
        throw std::logic_error("token '" + unicode::encode(token) + "' missing from mask table");
      }
      text += it->second;
    }
    verse.text = std::move(text);
  }
  BookVariant v = make_variant(VariantKind::structure_masked, std::move(out), {});
  v.mask = table;
  return v;
}

}  // namespace ordstruct
