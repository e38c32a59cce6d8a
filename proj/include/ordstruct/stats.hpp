#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ordstruct/measures.hpp"

namespace ordstruct {

/// 1-based ranks in ascending order, ties receive the average of their ranks.
std::vector<double> average_ranks(std::span<const double> values);

/// Pearson correlation of average ranks. Throws std::invalid_argument on
/// length mismatch, n < 2, or a constant input.
double spearman(std::span<const double> x, std::span<const double> y);

enum class Alternative { greater, less, two_sided };

Alternative parse_alternative(std::string_view name);

struct PermutationTest {
  double r_s = 0.0;
  /// Permutations at least as extreme as the observed pairing.
  std::uint64_t extreme = 0;
  std::uint64_t total = 0;

  double p_value() const { return static_cast<double>(extreme) / static_cast<double>(total); }
  std::string rational() const { return std::to_string(extreme) + "/" + std::to_string(total); }
};

inline constexpr std::size_t kMaxExactPermutationSize = 10;

/// Enumerates all n! re-pairings of y against x. Inputs must be tie-free;
/// n is limited to kMaxExactPermutationSize.
PermutationTest exact_perm_test(std::span<const double> x, std::span<const double> y,
                                Alternative alternative = Alternative::greater);

struct RegressionFit {
  double beta0 = 0.0;
  double beta1 = 0.0;
  double r_squared = 0.0;
  std::vector<double> residuals;
  std::size_t n = 0;
  /// beta0 fixed at 0; beta1 is then the constant of y * x = c.
  bool constrained = false;
};

class SingularPointError : public std::invalid_argument {
 public:
  explicit SingularPointError(std::size_t index)
      : std::invalid_argument("point " + std::to_string(index) +
                              " has d_order = 0; the reciprocal regressor is undefined"),
        index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

/// Least squares fit of y = beta0 + beta1 / x, linear in u = 1/x.
/// Points are (x = d_order, y = d_structure).
RegressionFit fit_reciprocal(std::span<const std::pair<double, double>> points, bool constrained = false);

struct CorrelationMatrix {
  /// "order:<book>" labels for every book, then "structure:<book>".
  std::vector<std::string> labels;
  std::vector<double> values;
  std::vector<std::string> groups;

  std::size_t size() const { return labels.size(); }
  double at(std::size_t i, std::size_t j) const { return values[i * labels.size() + j]; }
};

/// Spearman matrix over per-group vectors. Only groups with every book
/// present take part; at least two are required. An entry whose column
/// is constant is NaN.
CorrelationMatrix correlation_matrix(std::span<const AggregateMeasurement> rows, std::span<const int> books);

/// Rank 1 = largest value; equal values are ordered by position.
std::vector<int> descending_ranks(std::span<const double> values, bool* tie = nullptr);

struct RankTable {
  std::string group;
  std::vector<int> book_ids;
  std::vector<int> order_ranks;
  std::vector<int> structure_ranks;
  bool order_tie = false;
  bool structure_tie = false;
};

struct RankExclusion {
  std::string group;
  std::vector<int> missing;
};

/// One table per group holding every book in `books` (taken in the given
/// order, which is also the tie-break order); other groups are reported in
/// `excluded`.
std::vector<RankTable> rank_books(std::span<const AggregateMeasurement> rows, std::span<const int> books,
                                  std::vector<RankExclusion>* excluded = nullptr);

struct RankHistogram {
  int book_id = 0;
  std::size_t ranks = 0;
  std::size_t total = 0;
  std::vector<std::size_t> order_counts;
  std::vector<std::size_t> structure_counts;
  /// joint[(order_rank - 1) * ranks + (structure_rank - 1)]
  std::vector<std::size_t> joint;

  double percent(std::size_t count) const {
    return 100.0 * static_cast<double>(count) / static_cast<double>(total);
  }
};

std::vector<RankHistogram> rank_histograms(std::span<const RankTable> tables);

}  // namespace ordstruct
