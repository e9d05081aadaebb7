#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gcjstyle/matrix.hpp"
#include "gcjstyle/tree.hpp"

namespace gcjstyle::learn {

enum class Bootstrap {
  /// n draws with replacement from all rows.
  Standard,
  /// Per tree, minority-count draws with replacement from every class.
  Balanced,
};

struct ForestOptions {
  std::size_t n_trees = 100;
  Bootstrap bootstrap = Bootstrap::Standard;
  /// 0: floor(sqrt(d)), at least 1.
  std::size_t max_features = 0;
  bool parallel = true;
};

/// Random forest of CART trees. Each tree draws from its own stream
/// derive_seed(seed, tree index), so the fitted forest does not depend on
/// thread scheduling.
class RandomForest {
 public:
  void fit(const Matrix& x, const std::vector<int>& labels, int n_classes,
           const ForestOptions& options, std::uint64_t seed);

  /// Votes per class from each tree's predicted class.
  std::vector<std::size_t> votes(std::span<const double> row) const;
  /// Majority vote, ties to the lower class.
  int predict(std::span<const double> row) const;
  /// Fraction of trees voting for class 1.
  double positive_vote_fraction(std::span<const double> row) const;

  /// Per-tree normalized impurity decrease, averaged, normalized to sum 1.
  std::vector<double> feature_importances() const;

  const std::vector<DecisionTree>& trees() const { return trees_; }
  /// Class counts of each tree's bootstrap sample.
  const std::vector<std::vector<std::size_t>>& bootstrap_class_counts() const {
    return bootstrap_counts_;
  }
  int n_classes() const { return n_classes_; }

 private:
  std::vector<DecisionTree> trees_;
  std::vector<std::vector<std::size_t>> bootstrap_counts_;
  int n_classes_ = 0;
  std::size_t n_features_ = 0;
};

}  // namespace gcjstyle::learn
