#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ordstruct/pipeline.hpp"
#include "ordstruct/seeds.hpp"
#include "ordstruct/testkit.hpp"
#include "ordstruct/unicode.hpp"

using namespace ordstruct;

namespace {

constexpr int kExitFatal = 1;

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

// Accepts numeric ids, abbreviations ("Mt") and names ("Matthew").
int parse_book(const std::string& text) {
  if (!text.empty() && std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isdigit(c); })) {
    return std::stoi(text);
  }
  const std::string key = lower(text);
  for (int id = 1; id <= 66; ++id) {
    const auto info = book_info(id);
    if (info && (lower(std::string(info->abbrev)) == key || lower(std::string(info->name)) == key)) return id;
  }
  throw ConfigError("unknown book '" + text + "'");
}

std::vector<int> parse_books(const std::vector<std::string>& items) {
  std::vector<int> out;
  for (const auto& s : items) out.push_back(parse_book(s));
  return out;
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ConfigError("not a number: '" + item + "'");
    }
  }
  return out;
}

// "0.9,0.1;0.1,0.9"
std::vector<std::vector<double>> parse_matrix(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::stringstream ss(text);
  for (std::string row; std::getline(ss, row, ';');) rows.push_back(parse_doubles(row));
  return rows;
}

struct AnalyzeOptions {
  std::string config_path;
  std::vector<std::string> inputs;
  std::string format;
  std::vector<std::string> books;
  std::uint64_t seed = 0;
  std::size_t replicates = 0;
  std::string truncate;
  std::string order_scope;
  std::string group_by;
  std::size_t workers = 0;
  std::string out;
};

struct StatsOptions {
  std::string results;
  std::vector<std::string> books;
  std::string group_by = "language";
  bool constrained = false;
  std::string out = "out";
};

struct SynthOptions {
  std::string source = "iid";
  std::size_t alphabet = 4;
  std::string probabilities;
  std::string matrix = "0.9,0.1;0.1,0.9";
  std::size_t length = 100000;
  std::size_t verse_length = 100;
  std::size_t sentences = 1500;
  std::vector<std::string> books;
  std::uint64_t seed = 1;
  std::string id;
  std::string language;
  std::string out;
};

int run_analyze_command(CLI::App& cmd, const AnalyzeOptions& o) {
  RunConfig rc;
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path, std::ios::binary);
    if (!in) throw ConfigError("cannot open " + o.config_path);
    std::stringstream ss;
    ss << in.rdbuf();
    rc = RunConfig::from_json(ss.str());
  }
  auto given = [&](const char* name) { return cmd.count(name) > 0; };
  if (given("inputs")) rc.inputs = o.inputs;
  if (given("--format")) rc.format = parse_format(o.format);
  if (given("--books")) rc.books = parse_books(o.books);
  if (given("--seed")) rc.seed = o.seed;
  if (given("--replicates")) rc.replicates = o.replicates;
  if (given("--truncate")) rc.truncate = parse_truncate_mode(o.truncate);
  if (given("--truncate-after-shuffle")) rc.truncate_after_shuffle = true;
  if (given("--order-scope")) rc.order_scope = o.order_scope == "book" ? OrderScope::per_book : OrderScope::per_verse;
  if (given("--group-by")) rc.group_by = parse_group_by(o.group_by);
  if (given("--no-verse-shuffle")) rc.verse_shuffle = false;
  if (given("--lowercase")) rc.lowercase = true;
  if (given("--workers")) rc.workers = o.workers;
  if (given("--out")) rc.out_dir = o.out;
  if (given("--dump-masks")) rc.dump_masks = true;
  if (given("--dump-match-lengths")) rc.dump_match_lengths = true;

  const AnalyzeResult result = run_analyze(rc);
  for (const auto& m : result.missing) {
    std::cerr << "missing: " << m.translation_id << " has no book " << book_label(m.book_id) << '\n';
  }
  for (const auto& e : result.errors) {
    std::cerr << "error: " << e.translation_id << " book " << book_label(e.book_id) << ": " << e.message << '\n';
  }
  std::size_t negative = 0;
  for (const auto& r : result.rows) negative += r.has_negative() ? 1 : 0;
  if (negative > 0) std::cerr << "note: " << negative << " rows with a negative penalty\n";
  std::cout << result.rows.size() << " rows written to " << rc.out_dir << "/results.csv\n";
  return result.exit_code();
}

int run_stats_command(const StatsOptions& o) {
  StatsConfig sc;
  sc.results_path = o.results;
  if (!o.books.empty()) sc.books = parse_books(o.books);
  sc.group_by = parse_group_by(o.group_by);
  sc.constrained = o.constrained;
  sc.out_dir = o.out;
  const StatsResult result = run_stats(sc);
  for (const auto& n : result.notices) std::cerr << "notice: " << n << '\n';
  for (const auto& w : result.written) std::cout << w << '\n';
  return 0;
}

int run_oracle_command(const OracleConfig& config) {
  const OracleReport report = oracle_check(config);
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
  if (report.passed) {
    std::cout << "PASS " << report.cases << " cases\n";
    return 0;
  }
  const auto& ce = *report.counterexample;
  std::cout << "FAIL after " << report.cases << " cases\n"
            << "sequence: " << unicode::encode(ce.sequence) << '\n'
            << "position: " << ce.position << '\n'
            << "fast: " << ce.fast << " naive: " << ce.naive << '\n';
  return kExitFatal;
}

int run_synth_command(const SynthOptions& o) {
  std::vector<int> books = o.books.empty() ? std::vector<int>(kDefaultBooks.begin(), kDefaultBooks.end())
                                           : parse_books(o.books);
  std::vector<Book> out;
  std::optional<testkit::SyntheticSource> source;
  if (o.source == "iid") {
    source = o.probabilities.empty() ? testkit::SyntheticSource::uniform(o.alphabet)
                                     : testkit::SyntheticSource::iid(parse_doubles(o.probabilities));
  } else if (o.source == "markov") {
    source = testkit::SyntheticSource::markov1(parse_matrix(o.matrix));
  }
  for (int b : books) {
    const std::uint64_t seed = mix64(o.seed ^ static_cast<std::uint64_t>(b));
    if (source) {
      const auto seq = testkit::generate(*source, o.length, seed);
      out.push_back(testkit::to_book(seq, o.verse_length, b, o.id.empty() ? o.source : o.id,
                                     o.language.empty() ? "und" : o.language));
    } else {
      testkit::ToyLanguageSpec spec;
      spec.mode = o.source == "affixal" ? testkit::RoleMarking::affixal : testkit::RoleMarking::positional;
      spec.book_id = b;
      Book book = testkit::render_toy_corpus(spec, o.sentences, seed);
      if (!o.id.empty()) book.translation_id = o.id;
      if (!o.language.empty()) book.language = o.language;
      out.push_back(std::move(book));
    }
  }
  if (o.out.empty() || o.out == "-") {
    write_corpus_tsv(std::cout, out);
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + o.out);
    write_corpus_tsv(f, out);
  }
  if (source) std::cerr << "entropy rate: " << format_float(source->entropy_rate()) << " bpc\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Word order and word structure information in parallel texts"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);

  AnalyzeOptions ao;
  auto* analyze = app.add_subcommand("analyze", "Measure entropy penalties for every translation and book");
  analyze->add_option("inputs", ao.inputs, "Corpus files, one translation each");
  analyze->add_option("--config", ao.config_path, "Run config or manifest.json to start from");
  analyze->add_option("--format", ao.format, "Input format")->check(CLI::IsMember({"pbc", "tsv"}));
  analyze->add_option("--books", ao.books, "Book ids or abbreviations (default Mt,Mr,Lk,Jn,Ac,Re)")->delimiter(',')->allow_extra_args(false);
  analyze->add_option("--seed", ao.seed, "Master seed");
  analyze->add_option("--replicates", ao.replicates, "Replicates per book")->check(CLI::PositiveNumber);
  analyze->add_option("--truncate", ao.truncate, "Cut books of a translation to the shortest one")
      ->check(CLI::IsMember({"off", "token", "char"}));
  analyze->add_flag("--truncate-after-shuffle", "Truncate each variant after the verse shuffle");
  analyze->add_option("--order-scope", ao.order_scope, "Word order destruction scope")
      ->check(CLI::IsMember({"verse", "book"}));
  analyze->add_option("--group-by", ao.group_by, "Recorded for later stats runs")
      ->check(CLI::IsMember({"translation", "language"}));
  analyze->add_flag("--no-verse-shuffle", "Keep canonical verse order");
  analyze->add_flag("--lowercase", "Lowercase text while parsing");
  analyze->add_option("--workers", ao.workers, "Worker threads")->check(CLI::PositiveNumber);
  analyze->add_option("--out", ao.out, "Output directory");
  analyze->add_flag("--dump-masks", "Write each mask table as TSV");
  analyze->add_flag("--dump-match-lengths", "Write match lengths of every variant as CSV");

  StatsOptions so;
  auto* stats = app.add_subcommand("stats", "Fits, correlations and rank tables from a results file");
  stats->add_option("--results", so.results, "results.csv from analyze")->required();
  stats->add_option("--books", so.books, "Book ids or abbreviations")->delimiter(',')->allow_extra_args(false);
  stats->add_option("--group-by", so.group_by, "Aggregation level for fits and correlations")
      ->check(CLI::IsMember({"translation", "language"}));
  stats->add_flag("--constrained", so.constrained, "Fit d_structure = c / d_order without intercept");
  stats->add_option("--out", so.out, "Output directory");

  OracleConfig oc;
  auto* oracle = app.add_subcommand("oracle-check", "Compare the fast matcher with the literal definition");
  oracle->add_option("--count", oc.count, "Random sequences");
  oracle->add_option("--seed", oc.seed, "Generator seed");
  oracle->add_option("--min-length", oc.min_length)->check(CLI::PositiveNumber);
  oracle->add_option("--max-length", oc.max_length)->check(CLI::PositiveNumber);
  oracle->add_option("--min-alphabet", oc.min_alphabet)->check(CLI::PositiveNumber);
  oracle->add_option("--max-alphabet", oc.max_alphabet)->check(CLI::PositiveNumber);

  SynthOptions syo;
  auto* synth = app.add_subcommand("synth", "Write a synthetic corpus in TSV format");
  synth->add_option("--source", syo.source, "Generator")
      ->check(CLI::IsMember({"iid", "markov", "positional", "affixal"}));
  synth->add_option("--alphabet", syo.alphabet, "Uniform iid alphabet size")->check(CLI::PositiveNumber);
  synth->add_option("--probabilities", syo.probabilities, "iid symbol probabilities, comma separated");
  synth->add_option("--matrix", syo.matrix, "Markov transition rows, e.g. 0.9,0.1;0.1,0.9");
  synth->add_option("--length", syo.length, "Characters per book (iid, markov)")->check(CLI::PositiveNumber);
  synth->add_option("--verse-length", syo.verse_length, "Characters per verse (iid, markov)")
      ->check(CLI::PositiveNumber);
  synth->add_option("--sentences", syo.sentences, "Sentences per book (positional, affixal)")
      ->check(CLI::PositiveNumber);
  synth->add_option("--books", syo.books, "Book ids to generate")->delimiter(',')->allow_extra_args(false);
  synth->add_option("--seed", syo.seed, "Seed");
  synth->add_option("--id", syo.id, "Translation id");
  synth->add_option("--language", syo.language, "Language code");
  synth->add_option("--out", syo.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitFatal;
  }

  try {
    if (*analyze) return run_analyze_command(*analyze, ao);
    if (*stats) return run_stats_command(so);
    if (*oracle) return run_oracle_command(oc);
    if (*synth) return run_synth_command(syo);
  } catch (const std::exception& e) {
    std::cerr << "ordstruct: " << e.what() << '\n';
    return kExitFatal;
  }
  return kExitFatal;
}
