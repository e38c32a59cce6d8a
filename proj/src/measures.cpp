#include "ordstruct/measures.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "ordstruct/entropy.hpp"
#include "ordstruct/seeds.hpp"

namespace ordstruct {

namespace {

double entropy_of(const Book& book) { return estimate_entropy(flatten(book).chars).h_bpc; }

}  // namespace

ReplicateSeeds replicate_seeds(const Book& book, std::uint64_t master_seed, std::size_t replicate) {
  SeedSpec spec{master_seed, book.translation_id, book.book_id, replicate, SeedPurpose::verse_shuffle};
  ReplicateSeeds seeds;
  seeds.verse = derive_seed(spec);
  spec.purpose = SeedPurpose::order_shuffle;
  seeds.order = derive_seed(spec);
  spec.purpose = SeedPurpose::mask_draw;
  seeds.mask = derive_seed(spec);
  return seeds;
}

ReplicateVariants build_variants(const Book& book, const MeasureConfig& config, std::size_t replicate) {
  if (book.empty()) throw std::invalid_argument("cannot measure an empty book");
  ReplicateVariants v;
  v.seeds = replicate_seeds(book, config.master_seed, replicate);

  std::vector<std::size_t> perm(book.verses.size());
  if (config.verse_shuffle) {
    perm = verse_permutation(book.verses.size(), v.seeds.verse);
  } else {
    for (std::size_t k = 0; k < perm.size(); ++k) perm[k] = k;
  }
  auto finish = [&](const Book& b) {
    return config.truncate_after_shuffle ? truncate_to(b, *config.truncate_after_shuffle, config.granularity)
                                         : b;
  };

  v.original = finish(permute_verses(book, perm));
  v.order_destroyed = config.destroy_order
                          ? destroy_word_order(v.original, v.seeds.order, config.scope).book
                          : v.original;
  if (config.mask_structure) {
    const SymbolSequence canonical = flatten(book);
    v.mask = build_mask_table(canonical.lexicon, canonical.alphabet, v.seeds.mask);
    v.structure_masked = finish(permute_verses(mask_word_structure(book, *v.mask).book, perm));
  } else {
    v.structure_masked = v.original;
  }
  return v;
}

BookMeasurement measure_replicate(const Book& book, const MeasureConfig& config,
                                  std::size_t replicate) {
  const ReplicateVariants v = build_variants(book, config, replicate);
  BookMeasurement m;
  m.translation_id = book.translation_id;
  m.language = book.language;
  m.book_id = book.book_id;
  m.replicate = replicate;
  m.verse_seed = v.seeds.verse;
  m.order_seed = v.seeds.order;
  m.mask_seed = v.seeds.mask;
  m.n = v.original.char_length();
  m.h_original = entropy_of(v.original);
  m.h_order = config.destroy_order ? entropy_of(v.order_destroyed) : m.h_original;
  m.h_structure = config.mask_structure ? entropy_of(v.structure_masked) : m.h_original;
  m.d_order = m.h_order - m.h_original;
  m.d_structure = m.h_structure - m.h_original;
  return m;
}

std::vector<BookMeasurement> measure_book(const Book& book, const MeasureConfig& config) {
  if (config.replicates < 1) throw std::invalid_argument("replicates must be >= 1");
  std::vector<BookMeasurement> out;
  out.reserve(config.replicates);
  for (std::size_t r = 0; r < config.replicates; ++r) out.push_back(measure_replicate(book, config, r));
  return out;
}

GroupBy parse_group_by(std::string_view name) {
  if (name == "translation") return GroupBy::translation;
  if (name == "language") return GroupBy::language;
  throw std::invalid_argument("unknown grouping '" + std::string(name) + "'");
}

std::string_view group_by_name(GroupBy g) { return g == GroupBy::translation ? "translation" : "language"; }

namespace {

struct Summary {
  std::size_t count = 0;
  double mean_order = 0.0;
  double mean_structure = 0.0;
  std::optional<double> sd_order;
  std::optional<double> sd_structure;
};

Summary summarize(const std::vector<std::pair<double, double>>& values) {
  Summary s;
  s.count = values.size();
  for (auto [o, st] : values) {
    s.mean_order += o;
    s.mean_structure += st;
  }
  s.mean_order /= static_cast<double>(s.count);
  s.mean_structure /= static_cast<double>(s.count);
  if (s.count > 1) {
    double so = 0.0, ss = 0.0;
    for (auto [o, st] : values) {
      so += (o - s.mean_order) * (o - s.mean_order);
      ss += (st - s.mean_structure) * (st - s.mean_structure);
    }
    s.sd_order = std::sqrt(so / static_cast<double>(s.count - 1));
    s.sd_structure = std::sqrt(ss / static_cast<double>(s.count - 1));
  }
  return s;
}

AggregateMeasurement to_row(std::string group, int book_id, const Summary& s) {
  return {std::move(group), book_id, s.count, s.mean_order, s.mean_structure, s.sd_order, s.sd_structure};
}

}  // namespace

std::vector<AggregateMeasurement> aggregate(std::span<const BookMeasurement> measurements,
                                            GroupBy group_by) {
  if (measurements.empty()) throw std::invalid_argument("nothing to aggregate");
  std::vector<const BookMeasurement*> sorted;
  for (const auto& m : measurements) sorted.push_back(&m);
  std::sort(sorted.begin(), sorted.end(), [](const BookMeasurement* a, const BookMeasurement* b) {
    return std::tie(a->translation_id, a->book_id, a->replicate) <
           std::tie(b->translation_id, b->book_id, b->replicate);
  });

  // (translation, book) -> replicate values, plus the translation's language.
  std::map<std::pair<std::string, int>, std::vector<std::pair<double, double>>> per_translation;
  std::map<std::string, std::string> language_of;
  for (const auto* m : sorted) {
    per_translation[{m->translation_id, m->book_id}].emplace_back(m->d_order, m->d_structure);
    language_of.emplace(m->translation_id, m->language);
  }

  std::vector<AggregateMeasurement> rows;
  if (group_by == GroupBy::translation) {
    for (const auto& [key, values] : per_translation) rows.push_back(to_row(key.first, key.second, summarize(values)));
    return rows;
  }

  std::map<std::pair<std::string, int>, std::vector<std::pair<double, double>>> per_language;
  for (const auto& [key, values] : per_translation) {
    const Summary s = summarize(values);
    per_language[{language_of[key.first], key.second}].emplace_back(s.mean_order, s.mean_structure);
  }
  for (const auto& [key, values] : per_language) rows.push_back(to_row(key.first, key.second, summarize(values)));
  return rows;
}

}  // namespace ordstruct
