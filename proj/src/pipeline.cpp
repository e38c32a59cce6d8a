#include "ordstruct/pipeline.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>
#include <variant>

#include "json.hpp"
#include "ordstruct/seeds.hpp"
#include "ordstruct/testkit.hpp"
#include "ordstruct/unicode.hpp"

namespace ordstruct {

namespace fs = std::filesystem;
using nlohmann::json;

#ifndef ORDSTRUCT_VERSION
#define ORDSTRUCT_VERSION "0.0.0"
#endif

std::string_view version() { return ORDSTRUCT_VERSION; }

TruncateMode parse_truncate_mode(std::string_view name) {
  if (name == "off") return TruncateMode::off;
  if (name == "token") return TruncateMode::token;
  if (name == "char") return TruncateMode::character;
  throw std::invalid_argument("unknown truncation mode '" + std::string(name) + "'");
}

std::string_view truncate_mode_name(TruncateMode mode) {
  switch (mode) {
    case TruncateMode::off:
      return "off";
    case TruncateMode::token:
      return "token";
    case TruncateMode::character:
      return "char";
  }
  return "?";
}

namespace {

OrderScope parse_scope(std::string_view name) {
  if (name == "verse") return OrderScope::per_verse;
  if (name == "book") return OrderScope::per_book;
  throw std::invalid_argument("unknown order scope '" + std::string(name) + "'");
}

std::string_view scope_name(OrderScope scope) { return scope == OrderScope::per_verse ? "verse" : "book"; }

}  // namespace

std::string RunConfig::to_json() const {
  json j;
  j["inputs"] = inputs;
  j["format"] = format_name(format);
  j["books"] = books;
  j["seed"] = seed;
  j["replicates"] = replicates;
  j["truncate"] = truncate_mode_name(truncate);
  j["truncate_after_shuffle"] = truncate_after_shuffle;
  j["order_scope"] = scope_name(order_scope);
  j["group_by"] = group_by_name(group_by);
  j["verse_shuffle"] = verse_shuffle;
  j["lowercase"] = lowercase;
  j["workers"] = workers;
  j["out_dir"] = out_dir;
  j["dump_masks"] = dump_masks;
  j["dump_match_lengths"] = dump_match_lengths;
  return j.dump(2);
}

RunConfig RunConfig::from_json(std::string_view text) {
  RunConfig c;
  try {
    json j = json::parse(text);
    if (j.contains("config")) j = j.at("config");  // accept a whole manifest
    c.inputs = j.at("inputs").get<std::vector<std::string>>();
    c.format = parse_format(j.at("format").get<std::string>());
    c.books = j.at("books").get<std::vector<int>>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.replicates = j.at("replicates").get<std::size_t>();
    c.truncate = parse_truncate_mode(j.at("truncate").get<std::string>());
    c.truncate_after_shuffle = j.value("truncate_after_shuffle", false);
    c.order_scope = parse_scope(j.at("order_scope").get<std::string>());
    c.group_by = parse_group_by(j.at("group_by").get<std::string>());
    c.verse_shuffle = j.value("verse_shuffle", true);
    c.lowercase = j.value("lowercase", false);
    c.workers = j.value("workers", std::size_t{1});
    c.out_dir = j.value("out_dir", std::string("out"));
    c.dump_masks = j.value("dump_masks", false);
    c.dump_match_lengths = j.value("dump_match_lengths", false);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid run config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid run config: ") + e.what());
  }
  return c;
}

std::string format_float(double value) {
  if (std::isnan(value)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

std::string csv_field(std::string_view value) {
  if (value.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(value);
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

void write_results_csv(std::ostream& out, std::span<const BookMeasurement> rows) {
  out << kResultsHeader << '\n';
  for (const auto& m : rows) {
    out << csv_field(m.translation_id) << ',' << csv_field(m.language) << ',' << m.book_id << ','
        << m.replicate << ',' << m.n << ',' << format_float(m.h_original) << ','
        << format_float(m.h_order) << ',' << format_float(m.h_structure) << ','
        << format_float(m.d_order) << ',' << format_float(m.d_structure) << '\n';
  }
}

namespace {

template <typename T>
T parse_number(const std::string& field, std::size_t lineno, const char* name) {
  T value{};
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) {
    throw SchemaError("results line " + std::to_string(lineno) + ": invalid " + name + " '" + field + "'");
  }
  return value;
}

}  // namespace

std::vector<BookMeasurement> read_results_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw SchemaError("results file is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kResultsHeader) throw SchemaError("unexpected results header '" + line + "'");
  std::vector<BookMeasurement> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 10) {
      throw SchemaError("results line " + std::to_string(lineno) + ": expected 10 fields, got " +
                        std::to_string(f.size()));
    }
    BookMeasurement m;
    m.translation_id = f[0];
    m.language = f[1];
    m.book_id = parse_number<int>(f[2], lineno, "book_id");
    m.replicate = parse_number<std::size_t>(f[3], lineno, "replicate");
    m.n = parse_number<std::size_t>(f[4], lineno, "N");
    m.h_original = parse_number<double>(f[5], lineno, "h_original");
    m.h_order = parse_number<double>(f[6], lineno, "h_order");
    m.h_structure = parse_number<double>(f[7], lineno, "h_structure");
    m.d_order = parse_number<double>(f[8], lineno, "d_order");
    m.d_structure = parse_number<double>(f[9], lineno, "d_structure");
    rows.push_back(std::move(m));
  }
  return rows;
}

std::string file_sha256(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 initialisation failed");
  }
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof buf);
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &len);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex += kHex[digest[i] >> 4];
    hex += kHex[digest[i] & 0xF];
  }
  return hex;
}

namespace {

std::string safe_name(std::string_view s) {
  std::string out(s);
  for (auto& c : out) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' ||
                    c == '_' || c == '.';
    if (!ok) c = '_';
  }
  return out;
}

void write_text(const fs::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

struct WorkUnit {
  const Book* book;
  const MeasureConfig* config;
  std::size_t replicate;
};

void dump_artifacts(const RunConfig& rc, const WorkUnit& unit) {
  const ReplicateVariants v = build_variants(*unit.book, *unit.config, unit.replicate);
  const std::string stem = safe_name(unit.book->translation_id) + "_" + std::to_string(unit.book->book_id) +
                           "_r" + std::to_string(unit.replicate);
  if (rc.dump_masks && v.mask) write_text(fs::path(rc.out_dir) / "masks" / (stem + ".tsv"), v.mask->to_tsv());
  if (rc.dump_match_lengths) {
    const std::pair<const char*, const Book*> variants[] = {
        {"original", &v.original}, {"order", &v.order_destroyed}, {"structure", &v.structure_masked}};
    for (auto [name, book] : variants) {
      write_text(fs::path(rc.out_dir) / "match_lengths" / (stem + "_" + name + ".csv"),
                 match_lengths_csv(match_lengths(flatten(*book).chars)));
    }
  }
}

}  // namespace

AnalyzeResult run_analyze(const RunConfig& config) {
  if (config.inputs.empty()) throw ConfigError("no input files");
  if (config.books.empty()) throw ConfigError("no valid books requested");
  for (int b : config.books) {
    if (b < 1) throw ConfigError("invalid book id " + std::to_string(b));
  }
  if (config.replicates < 1) throw ConfigError("replicates must be >= 1");
  if (config.workers < 1) throw ConfigError("workers must be >= 1");

  struct Input {
    Translation translation;
    std::string sha256;
    std::vector<Book> books;
    MeasureConfig measure;
  };
  std::vector<Input> inputs;
  std::set<std::string> ids;
  for (const auto& path : config.inputs) {
    Input in;
    try {
      in.translation = parse_corpus_file(path, config.format, config.lowercase);
      in.sha256 = file_sha256(path);
    } catch (const std::exception& e) {
      throw ConfigError(e.what());
    }
    if (!ids.insert(in.translation.translation_id).second) {
      throw ConfigError("duplicate translation id '" + in.translation.translation_id + "' (" + path + ")");
    }
    inputs.push_back(std::move(in));
  }

  AnalyzeResult result;
  std::vector<WorkUnit> units;
  for (auto& in : inputs) {
    BookSelection sel = select_books(in.translation, config.books);
    for (int id : sel.missing) result.missing.push_back({in.translation.translation_id, id});
    in.measure.replicates = config.replicates;
    in.measure.scope = config.order_scope;
    in.measure.master_seed = config.seed;
    in.measure.verse_shuffle = config.verse_shuffle;
    in.measure.granularity =
        config.truncate == TruncateMode::character ? Granularity::character : Granularity::token;
    in.books = std::move(sel.books);
    if (config.truncate != TruncateMode::off && in.books.size() >= 2) {
      if (config.truncate_after_shuffle) {
        in.measure.truncate_after_shuffle = truncation_target(in.books);
      } else {
        in.books = truncate_books(in.books, in.measure.granularity);
      }
    }
  }
  for (const auto& in : inputs) {
    for (const auto& book : in.books) {
      for (std::size_t r = 0; r < config.replicates; ++r) units.push_back({&book, &in.measure, r});
    }
  }

  fs::create_directories(config.out_dir);
  if (config.dump_masks) fs::create_directories(fs::path(config.out_dir) / "masks");
  if (config.dump_match_lengths) fs::create_directories(fs::path(config.out_dir) / "match_lengths");

  std::vector<std::variant<std::monostate, BookMeasurement, std::string>> slots(units.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < units.size(); i = next++) {
      const auto& u = units[i];
      try {
        slots[i] = measure_replicate(*u.book, *u.config, u.replicate);
        if (config.dump_masks || config.dump_match_lengths) dump_artifacts(config, u);
      } catch (const std::exception& e) {
        slots[i] = std::string(e.what());
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const std::size_t n = std::min(config.workers, std::max<std::size_t>(units.size(), 1));
    for (std::size_t w = 0; w < n; ++w) pool.emplace_back(worker);
  }

  std::map<std::pair<std::string, int>, std::string> errors;
  for (std::size_t i = 0; i < units.size(); ++i) {
    if (auto* m = std::get_if<BookMeasurement>(&slots[i])) {
      result.rows.push_back(std::move(*m));
    } else if (auto* msg = std::get_if<std::string>(&slots[i])) {
      errors.emplace(std::pair{units[i].book->translation_id, units[i].book->book_id}, *msg);
    }
  }
  for (auto& [key, msg] : errors) result.errors.push_back({key.first, key.second, msg});
  std::sort(result.rows.begin(), result.rows.end(), [](const BookMeasurement& a, const BookMeasurement& b) {
    return std::tie(a.translation_id, a.book_id, a.replicate) < std::tie(b.translation_id, b.book_id, b.replicate);
  });
  std::sort(result.missing.begin(), result.missing.end(), [](const MissingBook& a, const MissingBook& b) {
    return std::tie(a.translation_id, a.book_id) < std::tie(b.translation_id, b.book_id);
  });

  {
    std::ofstream out(fs::path(config.out_dir) / "results.csv", std::ios::binary);
    if (!out) throw ConfigError("cannot write results to " + config.out_dir);
    write_results_csv(out, result.rows);
  }

  json manifest;
  manifest["software"] = {{"name", "ordstruct"}, {"version", std::string(version())}};
  manifest["config"] = json::parse(config.to_json());
  manifest["inputs"] = json::array();
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const auto& t = inputs[i].translation;
    manifest["inputs"].push_back({{"path", config.inputs[i]},
                                  {"sha256", inputs[i].sha256},
                                  {"translation_id", t.translation_id},
                                  {"language", t.language},
                                  {"books", t.books.size()},
                                  {"empty_verses", t.provenance.empty_verses}});
  }
  manifest["missing"] = json::array();
  for (const auto& m : result.missing) manifest["missing"].push_back({{"translation_id", m.translation_id}, {"book_id", m.book_id}});
  manifest["errors"] = json::array();
  for (const auto& e : result.errors) {
    manifest["errors"].push_back({{"translation_id", e.translation_id}, {"book_id", e.book_id}, {"message", e.message}});
  }
  std::size_t negative = 0;
  for (const auto& m : result.rows) negative += m.has_negative() ? 1 : 0;
  manifest["rows"] = result.rows.size();
  manifest["rows_with_negative_penalty"] = negative;
  write_text(fs::path(config.out_dir) / "manifest.json", manifest.dump(2) + "\n");
  return result;
}

namespace {

std::ofstream open_output(const fs::path& path, StatsResult& result) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  result.written.push_back(path.string());
  return out;
}

}  // namespace

StatsResult run_stats(const StatsConfig& config) {
  if (config.books.empty()) throw ConfigError("no books selected");
  std::vector<BookMeasurement> rows;
  {
    std::ifstream in(config.results_path, std::ios::binary);
    if (!in) throw ConfigError("cannot open " + config.results_path);
    rows = read_results_csv(in);
  }
  StatsResult result;
  fs::create_directories(config.out_dir);
  const fs::path out_dir(config.out_dir);
  if (rows.empty()) result.notices.push_back("results file has no rows");

  const auto grouped = rows.empty() ? std::vector<AggregateMeasurement>{} : aggregate(rows, config.group_by);
  const auto by_translation =
      rows.empty() ? std::vector<AggregateMeasurement>{} : aggregate(rows, GroupBy::translation);

  {
    auto out = open_output(out_dir / "fits.csv", result);
    out << "book_id,beta0,beta1,r_squared,n,r_s\n";
    for (int book : config.books) {
      std::vector<std::pair<double, double>> points;
      for (const auto& r : grouped) {
        if (r.book_id == book) points.emplace_back(r.mean_d_order, r.mean_d_structure);
      }
      const std::string label = "book " + std::to_string(book);
      if (points.empty()) {
        result.notices.push_back(label + ": no data, fit skipped");
        continue;
      }
      std::vector<double> x, y;
      for (auto [a, b] : points) {
        x.push_back(a);
        y.push_back(b);
      }
      double r_s = std::nan("");
      try {
        r_s = spearman(x, y);
      } catch (const std::invalid_argument& e) {
        result.notices.push_back(label + ": spearman undefined (" + e.what() + ")");
      }
      std::string fit_fields = ",,";
      try {
        const auto fit = fit_reciprocal(points, config.constrained);
        fit_fields = format_float(fit.beta0) + "," + format_float(fit.beta1) + "," + format_float(fit.r_squared);
      } catch (const std::invalid_argument& e) {
        result.notices.push_back(label + ": reciprocal fit rejected (" + e.what() + ")");
      }
      out << book << ',' << fit_fields << ',' << points.size() << ',' << format_float(r_s) << '\n';
    }
  }

  try {
    if (grouped.empty()) throw std::invalid_argument("no data");
    const auto cm = correlation_matrix(grouped, config.books);
    auto out = open_output(out_dir / "corr_matrix.csv", result);
    out << "label";
    for (const auto& l : cm.labels) out << ',' << l;
    out << '\n';
    for (std::size_t i = 0; i < cm.size(); ++i) {
      out << cm.labels[i];
      for (std::size_t j = 0; j < cm.size(); ++j) out << ',' << format_float(cm.at(i, j));
      out << '\n';
    }
  } catch (const std::invalid_argument& e) {
    result.notices.push_back(std::string("correlation matrix skipped: ") + e.what());
  }

  std::vector<RankExclusion> excluded;
  const auto tables =
      by_translation.empty() ? std::vector<RankTable>{} : rank_books(by_translation, config.books, &excluded);
  for (const auto& ex : excluded) {
    std::string ids;
    for (int b : ex.missing) ids += (ids.empty() ? "" : " ") + std::to_string(b);
    result.notices.push_back("translation " + ex.group + " excluded from ranks: missing books " + ids);
  }
  {
    auto out = open_output(out_dir / "ranks.csv", result);
    out << "translation_id,book_id,order_rank,structure_rank,order_tie,structure_tie\n";
    for (const auto& t : tables) {
      for (std::size_t b = 0; b < t.book_ids.size(); ++b) {
        out << csv_field(t.group) << ',' << t.book_ids[b] << ',' << t.order_ranks[b] << ','
            << t.structure_ranks[b] << ',' << (t.order_tie ? 1 : 0) << ',' << (t.structure_tie ? 1 : 0) << '\n';
      }
    }
  }
  {
    auto out = open_output(out_dir / "rank_hist.csv", result);
    out << "book_id,kind,order_rank,structure_rank,count,total,fraction,percent,percent_rounded\n";
    if (!tables.empty()) {
      for (const auto& h : rank_histograms(tables)) {
        auto row = [&](const char* kind, std::string o, std::string s, std::size_t count) {
          const double pct = h.percent(count);
          out << h.book_id << ',' << kind << ',' << o << ',' << s << ',' << count << ',' << h.total << ','
              << count << '/' << h.total << ',' << format_float(pct) << ',' << std::nearbyint(pct) << '\n';
        };
        for (std::size_t r = 0; r < h.ranks; ++r) row("order", std::to_string(r + 1), "", h.order_counts[r]);
        for (std::size_t r = 0; r < h.ranks; ++r) row("structure", "", std::to_string(r + 1), h.structure_counts[r]);
        for (std::size_t o = 0; o < h.ranks; ++o) {
          for (std::size_t s = 0; s < h.ranks; ++s) {
            row("joint", std::to_string(o + 1), std::to_string(s + 1), h.joint[o * h.ranks + s]);
          }
        }
      }
    }
  }

  const std::size_t k = config.books.size();
  const bool enumerable = k >= 2 && k <= kMaxExactPermutationSize;
  auto as_doubles = [](const std::vector<int>& v) { return std::vector<double>(v.begin(), v.end()); };
  if (!tables.empty() && enumerable) {
    auto out = open_output(out_dir / "interbook.csv", result);
    out << "translation_id,r_s,extreme,total,p_less\n";
    for (const auto& t : tables) {
      const auto test = exact_perm_test(as_doubles(t.order_ranks), as_doubles(t.structure_ranks), Alternative::less);
      out << csv_field(t.group) << ',' << format_float(test.r_s) << ',' << test.extreme << ',' << test.total << ','
          << format_float(test.p_value()) << '\n';
    }
  } else if (!tables.empty()) {
    result.notices.push_back("interbook tests skipped: book count outside 2.." +
                             std::to_string(kMaxExactPermutationSize));
  }

  if (tables.size() >= 2 && tables.size() <= config.max_rank_pair_tables && enumerable) {
    auto out = open_output(out_dir / "rank_pairs.csv", result);
    out << "group_a,group_b,dimension,r_s,extreme,total,p_greater\n";
    for (std::size_t a = 0; a < tables.size(); ++a) {
      for (std::size_t b = a + 1; b < tables.size(); ++b) {
        const std::pair<const char*, const std::vector<int> RankTable::*> dims[] = {
            {"order", &RankTable::order_ranks}, {"structure", &RankTable::structure_ranks}};
        for (auto [name, member] : dims) {
          const auto test =
              exact_perm_test(as_doubles(tables[a].*member), as_doubles(tables[b].*member), Alternative::greater);
          out << csv_field(tables[a].group) << ',' << csv_field(tables[b].group) << ',' << name << ','
              << format_float(test.r_s) << ',' << test.extreme << ',' << test.total << ','
              << format_float(test.p_value()) << '\n';
        }
      }
    }
  } else if (tables.size() > config.max_rank_pair_tables) {
    result.notices.push_back("rank_pairs skipped: " + std::to_string(tables.size()) + " rank tables exceed the limit of " +
                             std::to_string(config.max_rank_pair_tables));
  }
  return result;
}

namespace {

bool differs(const MatchLengthFn& fast, std::u32string_view seq) {
  return fast(seq) != match_lengths_naive(seq);
}

std::u32string shrink(const MatchLengthFn& fast, std::u32string seq) {
  for (std::size_t len = 1; len < seq.size(); ++len) {
    if (differs(fast, std::u32string_view(seq).substr(0, len))) {
      seq.resize(len);
      break;
    }
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < seq.size() && seq.size() > 1; ++i) {
      std::u32string candidate = seq;
      candidate.erase(i, 1);
      if (differs(fast, candidate)) {
        seq = std::move(candidate);
        changed = true;
        break;
      }
    }
  }
  return seq;
}

}  // namespace

OracleReport oracle_check(const OracleConfig& config, const MatchLengthFn& fast_in) {
  const MatchLengthFn fast = fast_in ? fast_in : MatchLengthFn([](std::u32string_view s) { return match_lengths(s); });
  if (config.min_length < 1 || config.max_length < config.min_length) {
    throw std::invalid_argument("invalid length range");
  }
  if (config.min_alphabet < 1 || config.max_alphabet < config.min_alphabet) {
    throw std::invalid_argument("invalid alphabet range");
  }
  OracleReport report;
  if (config.count == 0) {
    report.warnings.push_back("no cases requested; the check passes vacuously");
    return report;
  }
  Xorshift64Star rng(mix64(config.seed));
  for (std::size_t c = 0; c < config.count; ++c) {
    const auto length = config.min_length + rng.below(config.max_length - config.min_length + 1);
    const auto k = config.min_alphabet + rng.below(config.max_alphabet - config.min_alphabet + 1);
    std::u32string seq(length, U'\0');
    for (auto& ch : seq) ch = testkit::symbol(rng.below(k));
    ++report.cases;
    if (!differs(fast, seq)) continue;

    report.passed = false;
    Counterexample cx;
    cx.sequence = shrink(fast, std::move(seq));
    const auto f = fast(cx.sequence);
    const auto n = match_lengths_naive(cx.sequence);
    for (std::size_t i = 0; i < n.size(); ++i) {
      const std::uint32_t fv = i < f.size() ? f.values[i] : 0;
      if (fv != n.values[i]) {
        cx.position = i + 1;
        cx.fast = fv;
        cx.naive = n.values[i];
        break;
      }
    }
    report.counterexample = std::move(cx);
    break;
  }
  return report;
}

void write_corpus_tsv(std::ostream& out, std::span<const Book> books) {
  if (books.empty()) return;
  out << "# id: " << books.front().translation_id << '\n';
  out << "# language: " << books.front().language << '\n';
  for (const auto& book : books) {
    for (const auto& v : book.verses) {
      out << v.ref.book << '\t' << v.ref.chapter << '\t' << v.ref.verse << '\t' << unicode::encode(v.text) << '\n';
    }
  }
}

}  // namespace ordstruct
