#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gcjstyle/matrix.hpp"
#include "gcjstyle/rng.hpp"

namespace gcjstyle::learn {

struct TreeOptions {
  int max_depth = 0;  // 0: unlimited
  std::size_t min_samples_split = 2;
  std::size_t max_features = 0;  // 0: all features
};

/// CART classification tree with Gini impurity over integer class labels
/// 0..n_classes-1. Split ties go to the lower feature index, then the lower
/// threshold.
class DecisionTree {
 public:
  struct Node {
    int feature = -1;  // -1 for leaves
    double threshold = 0.0;
    std::size_t left = 0;
    std::size_t right = 0;
    std::vector<double> distribution;  // class fractions at the node
  };

  /// Fits on rows `samples` of x (duplicates allowed, as in bootstraps).
  void fit(const Matrix& x, const std::vector<int>& labels, int n_classes,
           std::span<const std::size_t> samples, const TreeOptions& options,
           Rng& rng);

  std::span<const double> predict_proba(std::span<const double> row) const;
  /// Class with the largest leaf fraction, ties to the lower class.
  int predict(std::span<const double> row) const;

  /// Unnormalized mean decrease in impurity, weighted by node sample share.
  const std::vector<double>& impurity_decrease() const { return importance_; }

  const std::vector<Node>& nodes() const { return nodes_; }
  int depth() const { return depth_; }

 private:
  std::vector<Node> nodes_;
  std::vector<double> importance_;
  int depth_ = 0;
};

}  // namespace gcjstyle::learn
