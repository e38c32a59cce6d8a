#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ordstruct/books.hpp"
#include "ordstruct/corpus.hpp"
#include "ordstruct/entropy.hpp"
#include "ordstruct/measures.hpp"
#include "ordstruct/stats.hpp"

namespace ordstruct {

std::string_view version();

/// Fatal configuration or input problem (CLI exit code 1).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class TruncateMode { off, token, character };

TruncateMode parse_truncate_mode(std::string_view name);
std::string_view truncate_mode_name(TruncateMode mode);

struct RunConfig {
  std::vector<std::string> inputs;
  CorpusFormat format = CorpusFormat::pbc;
  std::vector<int> books{kDefaultBooks.begin(), kDefaultBooks.end()};
  std::uint64_t seed = 1;
  std::size_t replicates = 3;
  TruncateMode truncate = TruncateMode::token;
  bool truncate_after_shuffle = false;
  OrderScope order_scope = OrderScope::per_verse;
  GroupBy group_by = GroupBy::language;
  bool verse_shuffle = true;
  bool lowercase = false;
  std::size_t workers = 1;
  std::string out_dir = "out";
  bool dump_masks = false;
  bool dump_match_lengths = false;

  /// JSON object; `workers` and `out_dir` are recorded but do not affect results.
  std::string to_json() const;
  static RunConfig from_json(std::string_view json);
};

/// Printed with 6 significant digits; NaN is written as "nan".
std::string format_float(double value);

/// Quotes a CSV field when it contains a comma, quote or newline.
std::string csv_field(std::string_view value);
std::vector<std::string> split_csv_line(std::string_view line);

inline constexpr std::string_view kResultsHeader =
    "translation_id,language,book_id,replicate,N,h_original,h_order,h_structure,d_order,d_structure";

void write_results_csv(std::ostream& out, std::span<const BookMeasurement> rows);

class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inverse of write_results_csv. Seeds are not part of the file and come back as 0.
std::vector<BookMeasurement> read_results_csv(std::istream& in);

struct MissingBook {
  std::string translation_id;
  int book_id = 0;
};

struct BookError {
  std::string translation_id;
  int book_id = 0;
  std::string message;
};

struct AnalyzeResult {
  std::vector<BookMeasurement> rows;
  std::vector<MissingBook> missing;
  std::vector<BookError> errors;

  int exit_code() const { return errors.empty() ? 0 : 2; }
};

/// Parses every input, measures each (translation, book, replicate) on a
/// worker pool and writes results.csv and manifest.json to config.out_dir.
/// Output bytes do not depend on config.workers.
AnalyzeResult run_analyze(const RunConfig& config);

struct StatsConfig {
  std::string results_path;
  std::vector<int> books{kDefaultBooks.begin(), kDefaultBooks.end()};
  GroupBy group_by = GroupBy::language;
  bool constrained = false;
  std::string out_dir = "out";
  /// Pairwise rank-agreement tests are skipped above this many rank tables.
  std::size_t max_rank_pair_tables = 60;
};

struct StatsResult {
  std::vector<std::string> notices;
  std::vector<std::string> written;
};

StatsResult run_stats(const StatsConfig& config);

struct OracleConfig {
  std::size_t count = 1000;
  std::size_t min_length = 1;
  std::size_t max_length = 2000;
  std::size_t min_alphabet = 2;
  std::size_t max_alphabet = 30;
  std::uint64_t seed = 1;
};

struct Counterexample {
  std::u32string sequence;
  std::size_t position = 0;  // 1-based
  std::uint32_t fast = 0;
  std::uint32_t naive = 0;
};

struct OracleReport {
  std::size_t cases = 0;
  bool passed = true;
  std::optional<Counterexample> counterexample;
  std::vector<std::string> warnings;
};

using MatchLengthFn = std::function<MatchLengths(std::u32string_view)>;

/// Compares `fast` against match_lengths_naive on random sequences. The
/// first failing case is shrunk (shortest failing prefix, then greedy
/// single-character deletion) before it is reported.
OracleReport oracle_check(const OracleConfig& config, const MatchLengthFn& fast = MatchLengthFn{});

/// `book<TAB>chapter<TAB>verse<TAB>text` lines preceded by id/language comments.
void write_corpus_tsv(std::ostream& out, std::span<const Book> books);

/// Hex SHA-256 of a file's bytes.
std::string file_sha256(const std::filesystem::path& path);

}  // namespace ordstruct
