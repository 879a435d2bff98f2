#include "dta/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

#include "dta/error.hpp"
#include "t_table.hpp"

namespace dta::metrics {

namespace {

void validate(const PredictionBatch& batch) {
  if (batch.predicted.size() != batch.actual.size())
    throw ConfigError("prediction batch size mismatch: " +
                      std::to_string(batch.predicted.size()) + " vs " +
                      std::to_string(batch.actual.size()));
  if (batch.predicted.empty()) throw ConfigError("empty prediction batch");
  for (double v : batch.predicted)
    if (!std::isfinite(v)) throw NumericError("non-finite prediction");
  for (double v : batch.actual)
    if (!std::isfinite(v)) throw NumericError("non-finite actual value");
}

/// Fenwick tree over compressed ranks; counts insertions.
class CountTree {
 public:
  explicit CountTree(std::size_t n) : tree_(n + 1, 0) {}

  void insert(std::size_t rank) {  // 1-based
    for (std::size_t i = rank; i < tree_.size(); i += i & (~i + 1))
      tree_[i] += 1;
  }

  std::uint64_t prefix(std::size_t rank) const {  // count of ranks <= rank
    std::uint64_t s = 0;
    for (std::size_t i = rank; i > 0; i -= i & (~i + 1)) s += tree_[i];
    return s;
  }

 private:
  std::vector<std::uint64_t> tree_;
};

}  // namespace

double concordance_index(const PredictionBatch& batch) {
  validate(batch);
  const auto& b = batch.predicted;
  const auto& d = batch.actual;
  const std::size_t n = b.size();

  double numerator = 0.0;
  std::uint64_t z = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!(d[i] > d[j])) continue;
      ++z;
      const double m = b[i] - b[j];
      if (m > 0)
        numerator += 1.0;
      else if (m == 0)
        numerator += 0.5;
    }
  }
  if (z == 0)
    throw NumericError("CI undefined: all actual values are equal");
  return numerator / static_cast<double>(z);
}

double concordance_index_fast(const PredictionBatch& batch) {
  validate(batch);
  const std::size_t n = batch.predicted.size();

  // Compressed prediction ranks.
  std::vector<double> sorted_preds = batch.predicted;
  std::sort(sorted_preds.begin(), sorted_preds.end());
  sorted_preds.erase(std::unique(sorted_preds.begin(), sorted_preds.end()),
                     sorted_preds.end());
  const auto rank_of = [&](double v) {
    return static_cast<std::size_t>(
               std::lower_bound(sorted_preds.begin(), sorted_preds.end(), v) -
               sorted_preds.begin()) +
           1;
  };

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return batch.actual[a] < batch.actual[b];
  });

  // Walk groups of equal actual value in ascending order. Everything already
  // inserted has a strictly smaller actual, so for the current item the pair
  // credit is: predictions below -> 1, equal -> 1/2. All counts stay in
  // 64-bit integers until the final division.
  CountTree tree(sorted_preds.size());
  std::uint64_t inserted = 0, z = 0, concordant = 0, pred_ties = 0;
  std::size_t g = 0;
  while (g < n) {
    std::size_t h = g;
    while (h < n && batch.actual[order[h]] == batch.actual[order[g]]) ++h;
    for (std::size_t i = g; i < h; ++i) {
      const std::size_t r = rank_of(batch.predicted[order[i]]);
      const std::uint64_t below = tree.prefix(r - 1);
      const std::uint64_t at = tree.prefix(r) - below;
      concordant += below;
      pred_ties += at;
    }
    z += static_cast<std::uint64_t>(h - g) * inserted;
    for (std::size_t i = g; i < h; ++i)
      tree.insert(rank_of(batch.predicted[order[i]]));
    inserted += h - g;
    g = h;
  }
  if (z == 0)
    throw NumericError("CI undefined: all actual values are equal");
  return static_cast<double>(2 * concordant + pred_ties) /
         static_cast<double>(2 * z);
}

double mse(const PredictionBatch& batch) {
  validate(batch);
  double s = 0.0;
  for (std::size_t i = 0; i < batch.predicted.size(); ++i) {
    const double diff = batch.predicted[i] - batch.actual[i];
    s += diff * diff;
  }
  return s / static_cast<double>(batch.predicted.size());
}

TTestResult paired_t_test(std::span<const double> scores_a,
                          std::span<const double> scores_b) {
  if (scores_a.size() != scores_b.size())
    throw ConfigError("paired_t_test: unequal score vectors");
  const std::size_t n = scores_a.size();
  if (n < 2) throw ConfigError("paired_t_test needs at least 2 pairs");

  std::vector<double> diff(n);
  for (std::size_t i = 0; i < n; ++i) diff[i] = scores_a[i] - scores_b[i];
  const double mean =
      std::accumulate(diff.begin(), diff.end(), 0.0) / static_cast<double>(n);
  double ss = 0.0;
  for (double v : diff) ss += (v - mean) * (v - mean);
  const double var = ss / static_cast<double>(n - 1);

  TTestResult res{};
  if (var == 0.0) {
    res.degenerate = true;
    if (mean == 0.0) {
      res.t_statistic = std::numeric_limits<double>::quiet_NaN();
      res.significant_at_95 = false;
    } else {
      res.t_statistic = mean > 0 ? std::numeric_limits<double>::infinity()
                                 : -std::numeric_limits<double>::infinity();
      res.significant_at_95 = true;
    }
    return res;
  }

  res.t_statistic =
      mean / (std::sqrt(var) / std::sqrt(static_cast<double>(n)));
  const std::size_t df = std::min<std::size_t>(n - 1, 100);  // table extent
  const double at = std::fabs(res.t_statistic);
  res.significant_at_95 = at > detail::kCrit05[df - 1];
  if (at > detail::kCrit0001[df - 1])
    res.p_below = 0.0001;
  else if (at > detail::kCrit001[df - 1])
    res.p_below = 0.001;
  else if (at > detail::kCrit01[df - 1])
    res.p_below = 0.01;
  else if (at > detail::kCrit05[df - 1])
    res.p_below = 0.05;
  return res;
}

FoldScores summarize_folds(std::vector<double> per_fold) {
  if (per_fold.empty()) throw ConfigError("no fold scores to summarize");
  FoldScores out;
  out.per_fold = std::move(per_fold);
  const double n = static_cast<double>(out.per_fold.size());
  out.mean = std::accumulate(out.per_fold.begin(), out.per_fold.end(), 0.0) / n;
  if (out.per_fold.size() > 1) {
    double ss = 0.0;
    for (double v : out.per_fold) ss += (v - out.mean) * (v - out.mean);
    out.std_dev = std::sqrt(ss / (n - 1.0));
  }
  return out;
}

}  // namespace dta::metrics
