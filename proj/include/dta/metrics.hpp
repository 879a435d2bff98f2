#pragma once

#include <optional>
#include <span>
#include <vector>

namespace dta::metrics {

struct PredictionBatch {
  std::vector<double> predicted;
  std::vector<double> actual;
};

/// Concordance Index by the O(n^2) definition: over all pairs whose actual
/// values differ, credit 1 when the predictions are ordered the same way,
/// 0.5 when they tie, 0 otherwise. Throws if all actual values are equal.
double concordance_index(const PredictionBatch& batch);

/// Same value computed in O(n log n) via sorting and order-statistic
/// counting. Counts are held in 64-bit integers; the only floating-point
/// step is the final division, so it matches concordance_index exactly.
double concordance_index_fast(const PredictionBatch& batch);

double mse(const PredictionBatch& batch);

struct TTestResult {
  double t_statistic;           // NaN when the differences have zero variance
  bool significant_at_95;
  std::optional<double> p_below;  // tightest of {0.05, 0.01, 0.001, 0.0001}
  bool degenerate;                // zero-variance differences
};

/// Two-sided paired t-test, df = n-1, critical values from a frozen table
/// (df up to 100). Zero-variance differences are reported as degenerate:
/// significant when the common difference is nonzero, not otherwise.
TTestResult paired_t_test(std::span<const double> scores_a,
                          std::span<const double> scores_b);

struct FoldScores {
  std::vector<double> per_fold;
  double mean = 0;
  double std_dev = 0;  // sample standard deviation (n-1)
};

FoldScores summarize_folds(std::vector<double> per_fold);

}  // namespace dta::metrics
