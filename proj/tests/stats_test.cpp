#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ordstruct/stats.hpp"

namespace ordstruct {
namespace {

const std::vector<double> kIdentity{1, 2, 3, 4, 5, 6};

TEST(Ranks, AverageRanksWithTies) {
  const std::vector<double> v{10, 20, 20, 5};
  EXPECT_EQ(average_ranks(v), (std::vector<double>{2, 3.5, 3.5, 1}));
}

TEST(Spearman, MatchesReferenceWithTies) {
  const std::vector<double> x{1, 2, 2, 3, 5}, y{1, 3, 2, 4, 4};
  EXPECT_NEAR(spearman(x, y), 0.9473684210526317, 1e-12);
}

TEST(Spearman, PerfectAndReversed) {
  const std::vector<double> rev{6, 5, 4, 3, 2, 1};
  EXPECT_DOUBLE_EQ(spearman(kIdentity, kIdentity), 1.0);
  EXPECT_DOUBLE_EQ(spearman(kIdentity, rev), -1.0);
}

TEST(Spearman, RejectsDegenerateInput) {
  const std::vector<double> a{1, 2}, b{1, 2, 3}, c{4, 4};
  EXPECT_THROW(spearman(a, b), std::invalid_argument);
  EXPECT_THROW(spearman(std::vector<double>{1}, std::vector<double>{1}), std::invalid_argument);
  EXPECT_THROW(spearman(a, c), std::invalid_argument);
}

TEST(PermutationTest, SumSquaredTen) {
  const std::vector<double> y{3, 2, 1, 4, 6, 5};
  const auto t = exact_perm_test(kIdentity, y);
  EXPECT_EQ(t.extreme, 49u);
  EXPECT_EQ(t.total, 720u);
  EXPECT_EQ(t.rational(), "49/720");
  EXPECT_NEAR(t.r_s, 0.7143, 5e-5);
  EXPECT_NEAR(t.p_value(), 0.068, 5e-4);
}

TEST(PermutationTest, SumSquaredEight) {
  const std::vector<double> y{3, 2, 1, 4, 5, 6};
  const auto t = exact_perm_test(kIdentity, y);
  EXPECT_EQ(t.rational(), "37/720");
  EXPECT_NEAR(t.r_s, 0.7714, 5e-5);
  EXPECT_NEAR(t.p_value(), 0.051, 5e-4);
}

TEST(PermutationTest, PerfectAgreementAndAlternatives) {
  EXPECT_EQ(exact_perm_test(kIdentity, kIdentity).rational(), "1/720");
  EXPECT_EQ(exact_perm_test(kIdentity, kIdentity, Alternative::less).rational(), "720/720");
  const std::vector<double> rev{6, 5, 4, 3, 2, 1};
  EXPECT_EQ(exact_perm_test(kIdentity, rev, Alternative::less).rational(), "1/720");
  EXPECT_EQ(exact_perm_test(kIdentity, rev, Alternative::two_sided).rational(), "2/720");
}

TEST(PermutationTest, DependsOnlyOnRanks) {
  const std::vector<double> x{0.1, 0.5, 0.2, 9.0, 3.0, 4.0};
  const std::vector<double> y{7.0, 1.0, 2.0, 8.0, 5.0, 3.0};
  const std::vector<double> rx{1, 3, 2, 6, 4, 5}, ry{5, 1, 2, 6, 4, 3};
  EXPECT_EQ(exact_perm_test(x, y).extreme, exact_perm_test(rx, ry).extreme);
}

TEST(PermutationTest, RejectsTiesAndLargeN) {
  const std::vector<double> tied{1, 1, 2, 3, 4, 5};
  EXPECT_THROW(exact_perm_test(kIdentity, tied), std::invalid_argument);
  std::vector<double> big(11);
  for (std::size_t i = 0; i < big.size(); ++i) big[i] = static_cast<double>(i);
  EXPECT_THROW(exact_perm_test(big, big), std::invalid_argument);
  EXPECT_EQ(parse_alternative("less"), Alternative::less);
  EXPECT_THROW(parse_alternative("up"), std::invalid_argument);
}

std::vector<std::pair<double, double>> noisy_points() {
  const std::vector<double> x{0.5, 1, 2, 4}, e{0.01, -0.02, 0.015, -0.005};
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < x.size(); ++i) pts.emplace_back(x[i], 0.3 + 1.5 / x[i] + e[i]);
  return pts;
}

TEST(ReciprocalFit, MatchesReferenceLeastSquares) {
  const auto fit = fit_reciprocal(noisy_points());
  EXPECT_NEAR(fit.beta0, 0.29673913, 1e-8);
  EXPECT_NEAR(fit.beta1, 1.50347826, 1e-8);
  EXPECT_NEAR(fit.r_squared, 0.999820734406987, 1e-12);
  EXPECT_EQ(fit.n, 4u);
  ASSERT_EQ(fit.residuals.size(), 4u);
}

TEST(ReciprocalFit, ConstrainedThroughOrigin) {
  const auto fit = fit_reciprocal(noisy_points(), true);
  EXPECT_EQ(fit.beta0, 0.0);
  EXPECT_NEAR(fit.beta1, 1.7129411764705882, 1e-12);
  EXPECT_NEAR(fit.r_squared, 0.9923692923584789, 1e-12);
  EXPECT_TRUE(fit.constrained);
}

TEST(ReciprocalFit, ExactRecovery) {
  std::vector<std::pair<double, double>> pts;
  for (double x = 0.2; x <= 2.0; x += 0.1) pts.emplace_back(x, -0.4 + 0.8 / x);
  const auto fit = fit_reciprocal(pts);
  EXPECT_NEAR(fit.beta0, -0.4, 1e-9);
  EXPECT_NEAR(fit.beta1, 0.8, 1e-9);
  EXPECT_NEAR(fit.r_squared, 1.0, 1e-12);
}

TEST(ReciprocalFit, SingularAndDegeneratePoints) {
  const std::vector<std::pair<double, double>> zero{{1.0, 1.0}, {0.0, 2.0}, {2.0, 3.0}};
  try {
    fit_reciprocal(zero);
    FAIL() << "expected SingularPointError";
  } catch (const SingularPointError& e) {
    EXPECT_EQ(e.index(), 1u);
  }
  const std::vector<std::pair<double, double>> same{{2.0, 1.0}, {2.0, 3.0}};
  EXPECT_THROW(fit_reciprocal(same), std::invalid_argument);
  const std::vector<std::pair<double, double>> one{{2.0, 1.0}};
  EXPECT_THROW(fit_reciprocal(one), std::invalid_argument);
  EXPECT_NEAR(fit_reciprocal(one, true).beta1, 2.0, 1e-12);
}

AggregateMeasurement agg(std::string group, int book, double o, double s) {
  AggregateMeasurement a;
  a.group = std::move(group);
  a.book_id = book;
  a.count = 1;
  a.mean_d_order = o;
  a.mean_d_structure = s;
  return a;
}

TEST(CorrelationMatrix, LayoutAndValues) {
  const std::vector<AggregateMeasurement> rows{agg("a", 40, 1, 3), agg("a", 41, 1, 5), agg("b", 40, 2, 2),
                                               agg("b", 41, 1, 6), agg("c", 40, 3, 1), agg("c", 41, 1, 7),
                                               agg("d", 40, 9, 9)};
  const std::vector<int> books{40, 41};
  const auto cm = correlation_matrix(rows, books);
  EXPECT_EQ(cm.labels, (std::vector<std::string>{"order:Mt", "order:Mr", "structure:Mt", "structure:Mr"}));
  EXPECT_EQ(cm.groups, (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_DOUBLE_EQ(cm.at(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(cm.at(0, 2), -1.0);
  EXPECT_DOUBLE_EQ(cm.at(2, 0), -1.0);
  EXPECT_DOUBLE_EQ(cm.at(0, 3), 1.0);
  EXPECT_TRUE(std::isnan(cm.at(1, 0)));
  const std::vector<AggregateMeasurement> lonely{agg("a", 40, 1, 1), agg("a", 41, 1, 1)};
  EXPECT_THROW(correlation_matrix(lonely, books), std::invalid_argument);
}

TEST(Ranks, DescendingWithPositionTieBreak) {
  bool tie = false;
  const std::vector<double> v{0.2, 0.9, 0.2, 0.5};
  EXPECT_EQ(descending_ranks(v, &tie), (std::vector<int>{3, 1, 4, 2}));
  EXPECT_TRUE(tie);
  const std::vector<double> w{3, 1, 2};
  EXPECT_EQ(descending_ranks(w, &tie), (std::vector<int>{1, 3, 2}));
  EXPECT_FALSE(tie);
}

TEST(Ranks, TablesAndHistograms) {
  const std::vector<AggregateMeasurement> rows{agg("a", 40, 0.3, 0.1), agg("a", 41, 0.1, 0.3), agg("b", 40, 0.5, 0.2),
                                               agg("b", 41, 0.2, 0.1), agg("c", 40, 0.1, 0.1)};
  const std::vector<int> books{40, 41};
  std::vector<RankExclusion> excluded;
  const auto tables = rank_books(rows, books, &excluded);
  ASSERT_EQ(tables.size(), 2u);
  ASSERT_EQ(excluded.size(), 1u);
  EXPECT_EQ(excluded[0].group, "c");
  EXPECT_EQ(excluded[0].missing, std::vector<int>{41});
  EXPECT_EQ(tables[0].order_ranks, (std::vector<int>{1, 2}));
  EXPECT_EQ(tables[0].structure_ranks, (std::vector<int>{2, 1}));

  const auto hist = rank_histograms(tables);
  ASSERT_EQ(hist.size(), 2u);
  EXPECT_EQ(hist[0].book_id, 40);
  EXPECT_EQ(hist[0].total, 2u);
  EXPECT_EQ(hist[0].order_counts, (std::vector<std::size_t>{2, 0}));
  EXPECT_EQ(hist[0].structure_counts, (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(hist[0].joint, (std::vector<std::size_t>{1, 1, 0, 0}));
  EXPECT_DOUBLE_EQ(hist[0].percent(1), 50.0);
  for (const auto& h : hist) {
    std::size_t sum = 0;
    for (auto c : h.order_counts) sum += c;
    EXPECT_EQ(sum, h.total);
  }
}

}  // namespace
}  // namespace ordstruct
