#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gcjstyle/matrix.hpp"
#include "gcjstyle/metrics.hpp"
#include "gcjstyle/models.hpp"

namespace gcjstyle::learn {

struct FoldPlan {
  std::size_t k = 0;
  /// Sorted, disjoint test indices; their union is 0..n-1.
  std::vector<std::vector<std::size_t>> folds;
  std::uint64_t seed = 0;

  /// Every index not in fold f, ascending.
  std::vector<std::size_t> training_indices(std::size_t f) const;
};

/// Seeded stratified K-fold. Positives are dealt round-robin after a
/// shuffle, negatives continue the same cycle, so per-fold positive counts
/// and fold sizes each differ by at most one. Throws InvalidConfig (k < 2)
/// and TooFewSamplesPerClass.
FoldPlan stratified_folds(const std::vector<bool>& y, std::size_t k,
                          std::uint64_t seed);

struct FoldResult {
  std::vector<std::size_t> test_indices;
  metrics::ConfusionMatrix confusion;
  metrics::MetricBundle metrics;
  std::vector<std::string> warnings;
};

struct MeanMetrics {
  double recall = 0.0;
  double macro_f1 = 0.0;
  double auc_roc = 0.0;
  double balanced_accuracy = 0.0;
};

struct EvalReport {
  ModelKind model = ModelKind::Dummy;
  TrainConfig config;
  FoldPlan plan;
  std::vector<FoldResult> folds;
  MeanMetrics mean;
  metrics::ConfusionMatrix pooled;
  bool zero_division = false;
};

/// Trains on `train_idx` rows only (standardization and resampling see
/// nothing else) and evaluates on `test_idx`.
FoldResult evaluate_split(const TrainConfig& config, const Matrix& x,
                          const std::vector<bool>& y,
                          const std::vector<std::size_t>& train_idx,
                          const std::vector<std::size_t>& test_idx);

/// Stratified K-fold cross-validation. Throws TooFewSamplesPerClass when a
/// class has fewer than k rows.
EvalReport cross_validate(const TrainConfig& config, const Matrix& x,
                          const std::vector<bool>& y, std::size_t k,
                          std::uint64_t seed);

}  // namespace gcjstyle::learn
