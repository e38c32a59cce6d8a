#pragma once

#include <compare>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ordstruct {

struct VerseRef {
  int book = 0;
  int chapter = 1;
  int verse = 1;

  auto operator<=>(const VerseRef&) const = default;
};

/// One verse; text holds space-separated tokens with no leading, trailing
/// or repeated spaces.
struct Verse {
  VerseRef ref;
  std::u32string text;

  bool operator==(const Verse&) const = default;
};

struct Book {
  int book_id = 0;
  std::vector<Verse> verses;
  std::string translation_id;
  std::string language;

  bool empty() const { return verses.empty(); }
  /// Length of the flattened book: verse lengths plus one separator between
  /// consecutive verses.
  std::size_t char_length() const;
  std::size_t token_count() const;
};

enum class CorpusFormat { pbc, tsv };

struct Provenance {
  std::string source;
  CorpusFormat format = CorpusFormat::pbc;
  /// `# key: value` comment lines, in file order.
  std::vector<std::pair<std::string, std::string>> metadata;
  /// Data lines whose text was empty (verse absent in this translation).
  std::size_t empty_verses = 0;
};

struct Translation {
  std::string translation_id;
  std::string language;
  std::map<int, Book> books;
  Provenance provenance;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what, const std::string& source = "")
      : std::runtime_error((source.empty() ? "" : source + ": ") +
                           (line == 0 ? what : "line " + std::to_string(line) + ": " + what)),
        line_(line),
        message_(what) {}

  const std::string& message() const { return message_; }
  /// 1-based line number, 0 when the error is not tied to a line.
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
  std::string message_;
};

struct ParseOptions {
  /// Used when the input carries no `# id:` comment.
  std::string translation_id = "unnamed";
  std::string source;
  bool lowercase = false;
};

/// Reads a verse-aligned corpus. The language is taken from the
/// `closest_ISO_639-3`, `ISO_639-3` or `language` comment keys ("und" if none);
/// an `id` or `translation_id` comment overrides options.translation_id.
Translation parse_corpus(std::istream& in, CorpusFormat format, const ParseOptions& options = {});
Translation parse_corpus_file(const std::filesystem::path& path, CorpusFormat format,
                              bool lowercase = false);

CorpusFormat parse_format(std::string_view name);
std::string_view format_name(CorpusFormat format);

/// Collapses whitespace runs to one space and trims both ends.
std::u32string normalize_text(std::u32string_view text);

/// Splits on single spaces. Views point into `text`.
std::vector<std::u32string_view> split_tokens(std::u32string_view text);

struct SymbolSequence {
  std::u32string chars;
  std::set<char32_t> alphabet;
  std::map<std::u32string, std::size_t> lexicon;

  std::size_t size() const { return chars.size(); }
  std::size_t token_count() const;
};

/// Builds alphabet and lexicon for an already flattened character sequence.
SymbolSequence make_sequence(std::u32string chars);

SymbolSequence flatten(const Book& book);

enum class Granularity { character, token };

std::size_t truncation_target(std::span<const Book> books);

/// Cuts `book` so its flattened length does not exceed `target`. Token
/// granularity cuts at the last token boundary; character granularity cuts
/// exactly, dropping a separator left dangling at the end.
Book truncate_to(const Book& book, std::size_t target, Granularity granularity);

/// Truncates every book to the flattened length of the shortest one.
std::vector<Book> truncate_books(std::span<const Book> books, Granularity granularity);

struct BookSelection {
  std::vector<Book> books;
  std::vector<int> missing;
};

BookSelection select_books(const Translation& translation, std::span<const int> ids);

}  // namespace ordstruct
