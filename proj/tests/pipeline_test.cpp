#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "ordstruct/pipeline.hpp"
#include "test_util.hpp"

namespace ordstruct {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class PipelineTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ordstruct_pipeline_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  // Writes a translation holding the given books as TSV and returns its path.
  std::string write_translation(const std::string& id, const std::string& language, std::vector<int> books,
                                std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Book> out;
    for (int b : books) {
      Book book = test::random_book(rng, 20, 10, 6, 6, b);
      book.translation_id = id;
      book.language = language;
      out.push_back(std::move(book));
    }
    const fs::path p = dir_ / (id + ".tsv");
    std::ofstream f(p, std::ios::binary);
    write_corpus_tsv(f, out);
    return p.string();
  }

  RunConfig config(std::vector<std::string> inputs, const std::string& out) {
    RunConfig rc;
    rc.inputs = std::move(inputs);
    rc.format = CorpusFormat::tsv;
    rc.books = {40, 41, 42};
    rc.replicates = 2;
    rc.out_dir = (dir_ / out).string();
    return rc;
  }

  fs::path dir_;
};

TEST(PipelineFormat, FloatsAndCsvFields) {
  EXPECT_EQ(format_float(0.1234567), "0.123457");
  EXPECT_EQ(format_float(std::nan("")), "nan");
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(split_csv_line("\"a,b\",c,\"d\"\"e\""), (std::vector<std::string>{"a,b", "c", "d\"e"}));
}

TEST(PipelineFormat, TruncateModes) {
  EXPECT_EQ(parse_truncate_mode("char"), TruncateMode::character);
  EXPECT_EQ(truncate_mode_name(TruncateMode::token), "token");
  EXPECT_THROW(parse_truncate_mode("word"), std::invalid_argument);
}

TEST(PipelineFormat, ConfigJsonRoundTrip) {
  RunConfig rc;
  rc.inputs = {"a.txt", "b.txt"};
  rc.format = CorpusFormat::tsv;
  rc.books = {40, 66};
  rc.seed = 12345678901234ULL;
  rc.replicates = 5;
  rc.truncate = TruncateMode::character;
  rc.order_scope = OrderScope::per_book;
  rc.group_by = GroupBy::translation;
  rc.verse_shuffle = false;
  const RunConfig back = RunConfig::from_json(rc.to_json());
  EXPECT_EQ(back.to_json(), rc.to_json());
  EXPECT_EQ(back.seed, rc.seed);
  EXPECT_EQ(back.order_scope, OrderScope::per_book);
  const std::string manifest = R"({"config": )" + rc.to_json() + R"(, "rows": 3})";
  EXPECT_EQ(RunConfig::from_json(manifest).books, rc.books);
}

TEST(PipelineFormat, ResultsRoundTrip) {
  BookMeasurement m;
  m.translation_id = "x,y";
  m.language = "eng";
  m.book_id = 41;
  m.replicate = 2;
  m.n = 1000;
  m.h_original = 2.5;
  m.h_order = 2.75;
  m.h_structure = 2.625;
  m.d_order = 0.25;
  m.d_structure = 0.125;
  std::stringstream ss;
  write_results_csv(ss, std::vector<BookMeasurement>{m});
  const auto rows = read_results_csv(ss);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].translation_id, "x,y");
  EXPECT_EQ(rows[0].book_id, 41);
  EXPECT_EQ(rows[0].n, 1000u);
  EXPECT_DOUBLE_EQ(rows[0].d_structure, 0.125);
}

TEST(PipelineFormat, ResultsSchemaErrors) {
  std::stringstream bad_header("a,b,c\n");
  EXPECT_THROW(read_results_csv(bad_header), SchemaError);
  std::stringstream bad_row(std::string(kResultsHeader) + "\nt,l,40,0,notanumber,1,1,1,0,0\n");
  EXPECT_THROW(read_results_csv(bad_row), SchemaError);
}

TEST_F(PipelineTest, Sha256) {
  const fs::path p = dir_ / "abc.txt";
  std::ofstream(p, std::ios::binary) << "abc";
  EXPECT_EQ(file_sha256(p), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_F(PipelineTest, AnalyzeWritesResultsAndManifest) {
  auto rc = config({write_translation("t1", "aaa", {40, 41, 42}, 1), write_translation("t2", "bbb", {40, 41}, 2)},
                   "out");
  const auto result = run_analyze(rc);
  EXPECT_EQ(result.exit_code(), 0);
  EXPECT_EQ(result.rows.size(), 3u * 2 + 2u * 2);
  ASSERT_EQ(result.missing.size(), 1u);
  EXPECT_EQ(result.missing[0].translation_id, "t2");
  EXPECT_EQ(result.missing[0].book_id, 42);

  // Books of one translation are cut to within one token of the same length.
  std::size_t lo = SIZE_MAX, hi = 0;
  for (const auto& m : result.rows) {
    if (m.translation_id != "t1") continue;
    lo = std::min(lo, m.n);
    hi = std::max(hi, m.n);
  }
  EXPECT_LE(hi - lo, 7u);

  std::ifstream in(fs::path(rc.out_dir) / "results.csv");
  const auto back = read_results_csv(in);
  ASSERT_EQ(back.size(), result.rows.size());
  EXPECT_EQ(back[0].translation_id, "t1");

  const auto manifest = nlohmann::json::parse(slurp(fs::path(rc.out_dir) / "manifest.json"));
  EXPECT_EQ(manifest["rows"], 10);
  EXPECT_EQ(manifest["inputs"].size(), 2u);
  EXPECT_EQ(manifest["inputs"][0]["sha256"].get<std::string>().size(), 64u);
  EXPECT_EQ(manifest["missing"].size(), 1u);
  EXPECT_EQ(RunConfig::from_json(manifest.dump()).seed, rc.seed);
}

TEST_F(PipelineTest, OutputIndependentOfWorkers) {
  const std::vector<std::string> inputs{write_translation("t1", "aaa", {40, 41, 42}, 3),
                                        write_translation("t2", "aaa", {40, 41, 42}, 4)};
  std::string reference;
  for (std::size_t workers : {1, 3, 8}) {
    auto rc = config(inputs, "w" + std::to_string(workers));
    rc.workers = workers;
    run_analyze(rc);
    const std::string bytes = slurp(fs::path(rc.out_dir) / "results.csv");
    if (reference.empty()) reference = bytes;
    EXPECT_EQ(bytes, reference) << workers;
  }
}

TEST_F(PipelineTest, SeedChangesResults) {
  const std::vector<std::string> inputs{write_translation("t1", "aaa", {40, 41, 42}, 5)};
  auto a = config(inputs, "a");
  auto b = config(inputs, "b");
  b.seed = 2;
  run_analyze(a);
  run_analyze(b);
  EXPECT_NE(slurp(fs::path(a.out_dir) / "results.csv"), slurp(fs::path(b.out_dir) / "results.csv"));
}

TEST_F(PipelineTest, DumpsArtifacts) {
  auto rc = config({write_translation("t1", "aaa", {40, 41}, 6)}, "dump");
  rc.books = {40, 41};
  rc.replicates = 1;
  rc.dump_masks = true;
  rc.dump_match_lengths = true;
  run_analyze(rc);
  EXPECT_FALSE(fs::is_empty(fs::path(rc.out_dir) / "masks"));
  EXPECT_FALSE(fs::is_empty(fs::path(rc.out_dir) / "match_lengths"));
}

TEST_F(PipelineTest, FatalConfigErrors) {
  const std::string t1 = write_translation("t1", "aaa", {40}, 7);
  auto rc = config({t1, t1}, "dup");
  EXPECT_THROW(run_analyze(rc), ConfigError);
  rc = config({(dir_ / "missing.tsv").string()}, "nofile");
  EXPECT_THROW(run_analyze(rc), ConfigError);
  rc = config({t1}, "nobooks");
  rc.books.clear();
  EXPECT_THROW(run_analyze(rc), ConfigError);
  rc = config({t1}, "zero");
  rc.replicates = 0;
  EXPECT_THROW(run_analyze(rc), ConfigError);
}

TEST_F(PipelineTest, StatsOutputs) {
  std::vector<std::string> inputs;
  for (int t = 0; t < 6; ++t) {
    inputs.push_back(write_translation("t" + std::to_string(t), "l" + std::to_string(t), {40, 41, 42}, 10 + t));
  }
  auto rc = config(inputs, "analysis");
  run_analyze(rc);
  StatsConfig sc;
  sc.results_path = (fs::path(rc.out_dir) / "results.csv").string();
  sc.books = rc.books;
  sc.out_dir = (dir_ / "stats").string();
  const auto result = run_stats(sc);
  for (const char* name : {"fits.csv", "corr_matrix.csv", "ranks.csv", "rank_hist.csv"}) {
    EXPECT_TRUE(fs::exists(fs::path(sc.out_dir) / name)) << name;
  }
  std::istringstream fits(slurp(fs::path(sc.out_dir) / "fits.csv"));
  std::string line;
  std::getline(fits, line);
  EXPECT_EQ(line, "book_id,beta0,beta1,r_squared,n,r_s");
  int lines = 0;
  while (std::getline(fits, line)) {
    ++lines;
    EXPECT_EQ(split_csv_line(line)[4], "6");
  }
  EXPECT_EQ(lines, 3);

  sc.results_path = (dir_ / "nope.csv").string();
  EXPECT_THROW(run_stats(sc), ConfigError);
}

TEST_F(PipelineTest, PerBookErrorsAreIsolated) {
  // Book 40 has three length-2 types but only one printable mask symbol.
  const fs::path p = dir_ / "ctl.tsv";
  std::ofstream(p, std::ios::binary) << "# id: ctl\n40\t1\t1\taa a\x01 \x01a\n41\t1\t1\tab ba cd dc\n";
  auto rc = config({p.string()}, "ctl");
  rc.books = {40, 41};
  rc.truncate = TruncateMode::off;
  const auto result = run_analyze(rc);
  EXPECT_EQ(result.exit_code(), 2);
  ASSERT_EQ(result.errors.size(), 1u);
  EXPECT_EQ(result.errors[0].book_id, 40);
  EXPECT_NE(result.errors[0].message.find("length 2"), std::string::npos);
  EXPECT_EQ(result.rows.size(), 2u);
  for (const auto& m : result.rows) EXPECT_EQ(m.book_id, 41);
  const auto manifest = nlohmann::json::parse(slurp(fs::path(rc.out_dir) / "manifest.json"));
  EXPECT_EQ(manifest["errors"].size(), 1u);
}

TEST_F(PipelineTest, StatsWithOneTranslationSkipsCorrelationMatrix) {
  auto rc = config({write_translation("solo", "aaa", {40, 41, 42}, 20)}, "solo");
  run_analyze(rc);
  StatsConfig sc;
  sc.results_path = (fs::path(rc.out_dir) / "results.csv").string();
  sc.books = rc.books;
  sc.out_dir = (dir_ / "solo_stats").string();
  const auto result = run_stats(sc);
  EXPECT_FALSE(fs::exists(fs::path(sc.out_dir) / "corr_matrix.csv"));
  EXPECT_TRUE(fs::exists(fs::path(sc.out_dir) / "ranks.csv"));
  bool noticed = false;
  for (const auto& n : result.notices) noticed = noticed || n.find("correlation matrix skipped") != std::string::npos;
  EXPECT_TRUE(noticed);
}

TEST_F(PipelineTest, StatsWithABookMissingEverywhere) {
  std::vector<std::string> inputs;
  for (int t = 0; t < 3; ++t) {
    inputs.push_back(write_translation("t" + std::to_string(t), "l" + std::to_string(t), {40, 41}, 30 + t));
  }
  auto rc = config(inputs, "partial");
  rc.books = {40, 41};
  run_analyze(rc);
  StatsConfig sc;
  sc.results_path = (fs::path(rc.out_dir) / "results.csv").string();
  sc.books = {40, 41, 42};
  sc.out_dir = (dir_ / "partial_stats").string();
  run_stats(sc);
  std::istringstream ranks(slurp(fs::path(sc.out_dir) / "ranks.csv"));
  std::string line;
  int rank_rows = 0;
  while (std::getline(ranks, line)) ++rank_rows;
  EXPECT_EQ(rank_rows, 1);
  std::istringstream fits(slurp(fs::path(sc.out_dir) / "fits.csv"));
  int fit_rows = 0;
  while (std::getline(fits, line)) ++fit_rows;
  EXPECT_EQ(fit_rows, 3);
}

TEST(Oracle, FastMatcherPasses) {
  OracleConfig oc;
  oc.count = 50;
  oc.max_length = 300;
  const auto report = oracle_check(oc);
  EXPECT_TRUE(report.passed);
  EXPECT_EQ(report.cases, 50u);
}

TEST(Oracle, BrokenMatcherIsShrunk) {
  // Caps every match length at 2. The shortest sequence with an uncapped
  // l = 3 has four symbols ("aaa" ends with l = 2).
  const MatchLengthFn broken = [](std::u32string_view s) {
    auto ml = match_lengths(s);
    for (auto& v : ml.values) v = std::min<std::uint32_t>(v, 2);
    return ml;
  };
  OracleConfig oc;
  oc.count = 20;
  oc.max_length = 200;
  const auto report = oracle_check(oc, broken);
  ASSERT_FALSE(report.passed);
  ASSERT_TRUE(report.counterexample.has_value());
  const auto& ce = *report.counterexample;
  EXPECT_EQ(ce.sequence.size(), 4u);
  EXPECT_EQ(ce.naive, 3u);
  EXPECT_EQ(ce.fast, 2u);
}

TEST(Oracle, ZeroCasesWarns) {
  OracleConfig oc;
  oc.count = 0;
  const auto report = oracle_check(oc);
  EXPECT_TRUE(report.passed);
  EXPECT_FALSE(report.warnings.empty());
}

}  // namespace
}  // namespace ordstruct
