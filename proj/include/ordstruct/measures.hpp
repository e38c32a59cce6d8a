#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ordstruct/corpus.hpp"
#include "ordstruct/transforms.hpp"

namespace ordstruct {

struct MeasureConfig {
  std::size_t replicates = 3;
  OrderScope scope = OrderScope::per_verse;
  std::uint64_t master_seed = 0;
  bool verse_shuffle = true;
  /// When set, each variant is cut to this length after the verse shuffle
  /// instead of truncating the canonical-order book beforehand.
  std::optional<std::size_t> truncate_after_shuffle;
  Granularity granularity = Granularity::token;
  /// Ablation switches; a disabled step leaves its variant equal to the original.
  bool destroy_order = true;
  bool mask_structure = true;
};

struct BookMeasurement {
  std::string translation_id;
  std::string language;
  int book_id = 0;
  std::size_t replicate = 0;
  std::size_t n = 0;
  double h_original = 0.0;
  double h_order = 0.0;
  double h_structure = 0.0;
  double d_order = 0.0;
  double d_structure = 0.0;
  std::uint64_t verse_seed = 0;
  std::uint64_t order_seed = 0;
  std::uint64_t mask_seed = 0;

  /// Negative penalties are kept as measured; this flags them.
  bool has_negative() const { return d_order < 0.0 || d_structure < 0.0; }
};

struct ReplicateSeeds {
  std::uint64_t verse = 0;
  std::uint64_t order = 0;
  std::uint64_t mask = 0;
};

ReplicateSeeds replicate_seeds(const Book& book, std::uint64_t master_seed, std::size_t replicate);

/// The three texts of one replicate. All share one verse permutation; the
/// masked text is masked before that permutation is applied.
struct ReplicateVariants {
  ReplicateSeeds seeds;
  Book original;
  Book order_destroyed;
  Book structure_masked;
  std::optional<MaskTable> mask;
};

ReplicateVariants build_variants(const Book& book, const MeasureConfig& config, std::size_t replicate);

/// One replicate: a single verse permutation shared by all three variants.
BookMeasurement measure_replicate(const Book& book, const MeasureConfig& config,
                                  std::size_t replicate);

std::vector<BookMeasurement> measure_book(const Book& book, const MeasureConfig& config);

enum class GroupBy { translation, language };

GroupBy parse_group_by(std::string_view name);
std::string_view group_by_name(GroupBy g);

struct AggregateMeasurement {
  std::string group;
  int book_id = 0;
  std::size_t count = 0;
  double mean_d_order = 0.0;
  double mean_d_structure = 0.0;
  std::optional<double> sd_d_order;
  std::optional<double> sd_d_structure;
};

/// Replicates are averaged per (translation, book) first; with language
/// grouping those means are then averaged per (language, book). Means are
/// unweighted, standard deviations are sample deviations over the last
/// averaging level. Rows come out sorted by (group, book_id).
std::vector<AggregateMeasurement> aggregate(std::span<const BookMeasurement> measurements,
                                            GroupBy group_by);

}  // namespace ordstruct
