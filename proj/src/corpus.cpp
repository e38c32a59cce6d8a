#include "ordstruct/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>

#include "ordstruct/unicode.hpp"

namespace ordstruct {

std::size_t Book::char_length() const {
  if (verses.empty()) return 0;
  std::size_t n = verses.size() - 1;
  for (const auto& v : verses) n += v.text.size();
  return n;
}

std::size_t Book::token_count() const {
  std::size_t n = 0;
  for (const auto& v : verses) n += split_tokens(v.text).size();
  return n;
}

std::u32string normalize_text(std::u32string_view text) {
  std::u32string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char32_t c : text) {
    if (unicode::is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(U' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

std::vector<std::u32string_view> split_tokens(std::u32string_view text) {
  std::vector<std::u32string_view> tokens;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find(U' ', start);
    if (end == std::u32string_view::npos) end = text.size();
    if (end > start) tokens.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return tokens;
}

CorpusFormat parse_format(std::string_view name) {
  if (name == "pbc") return CorpusFormat::pbc;
  if (name == "tsv") return CorpusFormat::tsv;
  throw std::invalid_argument("unknown corpus format '" + std::string(name) + "'");
}

std::string_view format_name(CorpusFormat format) {
  return format == CorpusFormat::pbc ? "pbc" : "tsv";
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

int to_int(std::string_view s, std::size_t line, const char* field) {
  s = trim(s);
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (!all_digits(s) || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError(line, std::string("invalid ") + field + " '" + std::string(s) + "'");
  }
  return value;
}

struct DataLine {
  VerseRef ref;
  std::string_view text;
};

DataLine split_pbc(std::string_view line, std::size_t lineno) {
  auto tab = line.find('\t');
  std::string_view id = trim(line.substr(0, tab));
  std::string_view text = tab == std::string_view::npos ? std::string_view{} : line.substr(tab + 1);
  if (id.size() != 8 || !all_digits(id)) {
    throw ParseError(lineno, "expected an 8-digit verse id, got '" + std::string(id) + "'");
  }
  VerseRef ref{to_int(id.substr(0, 2), lineno, "book"), to_int(id.substr(2, 3), lineno, "chapter"),
               to_int(id.substr(5, 3), lineno, "verse")};
  return {ref, text};
}

DataLine split_tsv(std::string_view line, std::size_t lineno) {
  std::string_view fields[3];
  std::string_view rest = line;
  for (auto& f : fields) {
    auto tab = rest.find('\t');
    if (tab == std::string_view::npos) {
      throw ParseError(lineno, "expected book_id<TAB>chapter<TAB>verse<TAB>text");
    }
    f = rest.substr(0, tab);
    rest = rest.substr(tab + 1);
  }
  VerseRef ref{to_int(fields[0], lineno, "book"), to_int(fields[1], lineno, "chapter"),
               to_int(fields[2], lineno, "verse")};
  return {ref, rest};
}

std::pair<std::string, std::string> parse_comment(std::string_view body) {
  body = trim(body);
  auto colon = body.find(':');
  if (colon == std::string_view::npos) return {std::string(body), ""};
  return {std::string(trim(body.substr(0, colon))), std::string(trim(body.substr(colon + 1)))};
}

}  // namespace

namespace {

Translation parse_lines(std::istream& in, CorpusFormat format, const ParseOptions& options) {
  Translation t;
  t.translation_id = options.translation_id;
  t.language = "und";
  t.provenance.source = options.source;
  t.provenance.format = format;

  std::map<VerseRef, std::size_t> seen;
  std::vector<Verse> verses;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty()) continue;
    if (line.front() == '#') {
      t.provenance.metadata.push_back(parse_comment(line.substr(1)));
      continue;
    }
    DataLine data = format == CorpusFormat::pbc ? split_pbc(line, lineno) : split_tsv(line, lineno);
    if (data.ref.book < 1 || data.ref.chapter < 1 || data.ref.verse < 1) {
      throw ParseError(lineno, "book, chapter and verse must be >= 1");
    }
    auto decoded = unicode::decode(data.text);
    if (!decoded) throw ParseError(lineno, "invalid UTF-8");
    std::u32string text = normalize_text(*decoded);
    if (options.lowercase) text = unicode::lowercase(text);
    if (auto [it, inserted] = seen.emplace(data.ref, lineno); !inserted) {
      throw ParseError(lineno, "duplicate verse id (first seen on line " + std::to_string(it->second) + ")");
    }
    if (text.empty()) {
      ++t.provenance.empty_verses;
      continue;
    }
    verses.push_back({data.ref, std::move(text)});
  }
  if (verses.empty()) throw ParseError(0, "empty input: no verses");

  for (const auto& [key, value] : t.provenance.metadata) {
    if (key == "id" || key == "translation_id") {
      if (!value.empty()) t.translation_id = value;
    } else if (key == "closest_ISO_639-3" || key == "ISO_639-3" || key == "language") {
      if (!value.empty()) t.language = value;
    }
  }

  std::stable_sort(verses.begin(), verses.end(),
                   [](const Verse& a, const Verse& b) { return a.ref < b.ref; });
  for (auto& v : verses) {
    auto& book = t.books[v.ref.book];
    if (book.verses.empty()) {
      book.book_id = v.ref.book;
      book.translation_id = t.translation_id;
      book.language = t.language;
    }
    book.verses.push_back(std::move(v));
  }
  return t;
}

}  // namespace

Translation parse_corpus(std::istream& in, CorpusFormat format, const ParseOptions& options) {
  try {
    return parse_lines(in, format, options);
  } catch (const ParseError& e) {
    if (options.source.empty()) throw;
    throw ParseError(e.line(), e.message(), options.source);
  }
}

Translation parse_corpus_file(const std::filesystem::path& path, CorpusFormat format, bool lowercase) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  ParseOptions options;
  options.translation_id = path.stem().string();
  options.source = path.string();
  options.lowercase = lowercase;
  return parse_corpus(in, format, options);
}

std::size_t SymbolSequence::token_count() const {
  std::size_t n = 0;
  for (const auto& [type, count] : lexicon) n += count;
  return n;
}

SymbolSequence make_sequence(std::u32string chars) {
  SymbolSequence seq;
  seq.chars = std::move(chars);
  seq.alphabet.insert(seq.chars.begin(), seq.chars.end());
  for (auto token : split_tokens(seq.chars)) ++seq.lexicon[std::u32string(token)];
  return seq;
}

SymbolSequence flatten(const Book& book) {
  if (book.empty()) throw std::invalid_argument("cannot flatten an empty book");
  std::u32string chars;
  chars.reserve(book.char_length());
  for (const auto& v : book.verses) {
    if (!chars.empty()) chars.push_back(U' ');
    chars += v.text;
  }
  return make_sequence(std::move(chars));
}

std::size_t truncation_target(std::span<const Book> books) {
  if (books.empty()) throw std::invalid_argument("truncation needs at least one book");
  std::size_t target = books.front().char_length();
  for (const auto& b : books) target = std::min(target, b.char_length());
  return target;
}

Book truncate_to(const Book& book, std::size_t target, Granularity granularity) {
  if (book.char_length() <= target) return book;
  Book out = book;
  out.verses.clear();
  std::size_t length = 0;
  for (const auto& verse : book.verses) {
    std::size_t sep = out.verses.empty() ? 0 : 1;
    if (length + sep >= target) break;
    std::size_t room = target - length - sep;
    if (verse.text.size() <= room) {
      out.verses.push_back(verse);
      length += sep + verse.text.size();
      continue;
    }
    std::u32string kept;
    if (granularity == Granularity::character) {
      kept = verse.text.substr(0, room);
      while (!kept.empty() && kept.back() == U' ') kept.pop_back();
    } else {
      for (auto token : split_tokens(verse.text)) {
        std::size_t extra = (kept.empty() ? 0 : 1) + token.size();
        if (kept.size() + extra > room) break;
        if (!kept.empty()) kept.push_back(U' ');
        kept += token;
      }
    }
    if (!kept.empty()) out.verses.push_back({verse.ref, std::move(kept)});
    break;
  }
  return out;
}

std::vector<Book> truncate_books(std::span<const Book> books, Granularity granularity) {
  if (books.size() < 2) throw std::invalid_argument("truncation needs at least two books");
  for (const auto& b : books) {
    if (b.empty()) throw std::invalid_argument("cannot truncate an empty book");
  }
  const std::size_t target = truncation_target(books);
  std::vector<Book> out;
  out.reserve(books.size());
  for (const auto& b : books) out.push_back(truncate_to(b, target, granularity));
  return out;
}

BookSelection select_books(const Translation& translation, std::span<const int> ids) {
  if (ids.empty()) throw std::invalid_argument("no books requested");
  BookSelection sel;
  for (int id : ids) {
    if (auto it = translation.books.find(id); it != translation.books.end()) {
      sel.books.push_back(it->second);
    } else {
      sel.missing.push_back(id);
    }
  }
  return sel;
}

}  // namespace ordstruct
