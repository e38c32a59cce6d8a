#include "ordstruct/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "ordstruct/books.hpp"

namespace ordstruct {

std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

namespace {

double pearson(std::span<const double> a, std::span<const double> b) {
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) throw std::invalid_argument("spearman: input has zero variance");
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

}  // namespace

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("spearman: length mismatch");
  if (x.size() < 2) throw std::invalid_argument("spearman: need at least two observations");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  return pearson(rx, ry);
}

Alternative parse_alternative(std::string_view name) {
  if (name == "greater") return Alternative::greater;
  if (name == "less") return Alternative::less;
  if (name == "two_sided" || name == "two-sided") return Alternative::two_sided;
  throw std::invalid_argument("unknown alternative '" + std::string(name) + "'");
}

PermutationTest exact_perm_test(std::span<const double> x, std::span<const double> y, Alternative alternative) {
  if (x.size() != y.size()) throw std::invalid_argument("permutation test: length mismatch");
  const std::size_t n = x.size();
  if (n < 2) throw std::invalid_argument("permutation test: need at least two observations");
  if (n > kMaxExactPermutationSize) {
    throw std::invalid_argument("permutation test: n = " + std::to_string(n) +
                                " is too large for full enumeration; use a sampled test");
  }
  auto integer_ranks = [n](std::span<const double> v) {
    const auto r = average_ranks(v);
    std::vector<long> out(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (r[i] != std::floor(r[i])) throw std::invalid_argument("permutation test: ranks must be tie-free");
      out[i] = static_cast<long>(r[i]);
    }
    std::vector<long> check = out;
    std::sort(check.begin(), check.end());
    if (std::adjacent_find(check.begin(), check.end()) != check.end()) {
      throw std::invalid_argument("permutation test: ranks must be tie-free");
    }
    return out;
  };
  const auto rx = integer_ranks(x);
  auto ry = integer_ranks(y);

  auto sum_sq = [&](const std::vector<long>& r) {
    long d = 0;
    for (std::size_t i = 0; i < n; ++i) d += (rx[i] - r[i]) * (rx[i] - r[i]);
    return d;
  };
  const long m = static_cast<long>(n * (n * n - 1));
  const long observed = sum_sq(ry);

  PermutationTest result;
  result.r_s = 1.0 - 6.0 * static_cast<double>(observed) / static_cast<double>(m);
  std::sort(ry.begin(), ry.end());
  do {
    const long d = sum_sq(ry);
    bool extreme = false;
    switch (alternative) {
      case Alternative::greater:
        extreme = d <= observed;
        break;
      case Alternative::less:
        extreme = d >= observed;
        break;
      case Alternative::two_sided:
        extreme = std::labs(m - 6 * d) >= std::labs(m - 6 * observed);
        break;
    }
    result.extreme += extreme ? 1 : 0;
    ++result.total;
  } while (std::next_permutation(ry.begin(), ry.end()));
  return result;
}

RegressionFit fit_reciprocal(std::span<const std::pair<double, double>> points, bool constrained) {
  const std::size_t n = points.size();
  if (n < (constrained ? 1u : 2u)) {
    throw std::invalid_argument("reciprocal fit: need at least " + std::to_string(constrained ? 1 : 2) + " points");
  }
  std::vector<double> u(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (points[i].first == 0.0 || !std::isfinite(points[i].first)) throw SingularPointError(i);
    u[i] = 1.0 / points[i].first;
    y[i] = points[i].second;
  }
  RegressionFit fit;
  fit.n = n;
  fit.constrained = constrained;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  double sst = 0.0;
  if (constrained) {
    double suy = 0.0, suu = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      suy += u[i] * y[i];
      suu += u[i] * u[i];
      sst += y[i] * y[i];
    }
    fit.beta1 = suy / suu;
  } else {
    const double mu = std::accumulate(u.begin(), u.end(), 0.0) / static_cast<double>(n);
    double suy = 0.0, suu = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      suy += (u[i] - mu) * (y[i] - my);
      suu += (u[i] - mu) * (u[i] - mu);
      sst += (y[i] - my) * (y[i] - my);
    }
    if (suu == 0.0) throw std::invalid_argument("reciprocal fit: all d_order values are equal");
    fit.beta1 = suy / suu;
    fit.beta0 = my - fit.beta1 * mu;
  }
  double sse = 0.0;
  fit.residuals.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    fit.residuals[i] = y[i] - (fit.beta0 + fit.beta1 * u[i]);
    sse += fit.residuals[i] * fit.residuals[i];
  }
  if (sst > 0.0) {
    fit.r_squared = std::clamp(1.0 - sse / sst, 0.0, 1.0);
  } else {
    fit.r_squared = sse == 0.0 ? 1.0 : 0.0;
  }
  return fit;
}

namespace {

// group -> book -> row
std::map<std::string, std::map<int, const AggregateMeasurement*>> index_rows(
    std::span<const AggregateMeasurement> rows) {
  std::map<std::string, std::map<int, const AggregateMeasurement*>> index;
  for (const auto& r : rows) index[r.group][r.book_id] = &r;
  return index;
}

}  // namespace

CorrelationMatrix correlation_matrix(std::span<const AggregateMeasurement> rows, std::span<const int> books) {
  if (books.empty()) throw std::invalid_argument("correlation matrix: no books");
  const auto index = index_rows(rows);
  CorrelationMatrix cm;
  for (const auto& [group, by_book] : index) {
    if (std::all_of(books.begin(), books.end(), [&](int b) { return by_book.contains(b); })) {
      cm.groups.push_back(group);
    }
  }
  if (cm.groups.size() < 2) {
    throw std::invalid_argument("correlation matrix: fewer than two groups have every book");
  }
  const std::size_t k = books.size();
  std::vector<std::vector<double>> columns(2 * k);
  for (std::size_t b = 0; b < k; ++b) {
    cm.labels.push_back("order:" + book_label(books[b]));
    for (const auto& g : cm.groups) columns[b].push_back(index.at(g).at(books[b])->mean_d_order);
  }
  for (std::size_t b = 0; b < k; ++b) {
    cm.labels.push_back("structure:" + book_label(books[b]));
    for (const auto& g : cm.groups) columns[k + b].push_back(index.at(g).at(books[b])->mean_d_structure);
  }
  const std::size_t size = 2 * k;
  cm.values.assign(size * size, 1.0);
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = i + 1; j < size; ++j) {
      double r = std::numeric_limits<double>::quiet_NaN();
      try {
        r = spearman(columns[i], columns[j]);
      } catch (const std::invalid_argument&) {
      }
      cm.values[i * size + j] = r;
      cm.values[j * size + i] = r;
    }
  }
  return cm;
}

std::vector<int> descending_ranks(std::span<const double> values, bool* tie) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  std::vector<int> ranks(n);
  bool any_tie = false;
  for (std::size_t i = 0; i < n; ++i) {
    ranks[order[i]] = static_cast<int>(i) + 1;
    if (i > 0 && values[order[i]] == values[order[i - 1]]) any_tie = true;
  }
  if (tie != nullptr) *tie = any_tie;
  return ranks;
}

std::vector<RankTable> rank_books(std::span<const AggregateMeasurement> rows, std::span<const int> books,
                                  std::vector<RankExclusion>* excluded) {
  if (books.empty()) throw std::invalid_argument("rank_books: no books");
  std::vector<RankTable> tables;
  for (const auto& [group, by_book] : index_rows(rows)) {
    RankExclusion ex{group, {}};
    std::vector<double> order, structure;
    for (int b : books) {
      auto it = by_book.find(b);
      if (it == by_book.end()) {
        ex.missing.push_back(b);
        continue;
      }
      order.push_back(it->second->mean_d_order);
      structure.push_back(it->second->mean_d_structure);
    }
    if (!ex.missing.empty()) {
      if (excluded != nullptr) excluded->push_back(std::move(ex));
      continue;
    }
    RankTable t;
    t.group = group;
    t.book_ids.assign(books.begin(), books.end());
    t.order_ranks = descending_ranks(order, &t.order_tie);
    t.structure_ranks = descending_ranks(structure, &t.structure_tie);
    tables.push_back(std::move(t));
  }
  return tables;
}

std::vector<RankHistogram> rank_histograms(std::span<const RankTable> tables) {
  if (tables.empty()) throw std::invalid_argument("rank histograms: no rank tables");
  const auto& books = tables.front().book_ids;
  const std::size_t k = books.size();
  std::vector<RankHistogram> hist(k);
  for (std::size_t b = 0; b < k; ++b) {
    hist[b].book_id = books[b];
    hist[b].ranks = k;
    hist[b].order_counts.assign(k, 0);
    hist[b].structure_counts.assign(k, 0);
    hist[b].joint.assign(k * k, 0);
  }
  for (const auto& t : tables) {
    if (t.book_ids != books) throw std::invalid_argument("rank histograms: tables cover different books");
    for (std::size_t b = 0; b < k; ++b) {
      const auto o = static_cast<std::size_t>(t.order_ranks[b] - 1);
      const auto s = static_cast<std::size_t>(t.structure_ranks[b] - 1);
      ++hist[b].total;
      ++hist[b].order_counts[o];
      ++hist[b].structure_counts[s];
      ++hist[b].joint[o * k + s];
    }
  }
  return hist;
}

}  // namespace ordstruct
