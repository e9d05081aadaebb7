#include "gcjstyle/forest.hpp"

#include <algorithm>
#include <cmath>

#include "gcjstyle/rng.hpp"

namespace gcjstyle::learn {

void RandomForest::fit(const Matrix& x, const std::vector<int>& labels,
                       int n_classes, const ForestOptions& opt,
                       std::uint64_t seed) {
  n_classes_ = n_classes;
  n_features_ = x.cols();
  const std::size_t n = x.rows();
  TreeOptions tree_opt;
  tree_opt.max_features =
      opt.max_features != 0
          ? opt.max_features
          : std::max<std::size_t>(
                1, static_cast<std::size_t>(std::sqrt(static_cast<double>(x.cols()))));

  std::vector<std::vector<std::size_t>> by_class(static_cast<std::size_t>(n_classes));
  for (std::size_t i = 0; i < n; ++i) {
    by_class[static_cast<std::size_t>(labels[i])].push_back(i);
  }
  std::size_t minority = n;
  for (const auto& members : by_class) {
    if (!members.empty()) minority = std::min(minority, members.size());
  }

  trees_.assign(opt.n_trees, DecisionTree{});
  bootstrap_counts_.assign(opt.n_trees,
                           std::vector<std::size_t>(static_cast<std::size_t>(n_classes), 0));

  auto grow = [&](std::size_t t) {
    Rng rng(derive_seed(seed, t));
    std::vector<std::size_t> sample;
    if (opt.bootstrap == Bootstrap::Balanced) {
      sample.reserve(minority * by_class.size());
      for (const auto& members : by_class) {
        if (members.empty()) continue;
        for (std::size_t s = 0; s < minority; ++s) {
          sample.push_back(members[rng.below(members.size())]);
        }
      }
    } else {
      sample.resize(n);
      for (std::size_t s = 0; s < n; ++s) sample[s] = rng.below(n);
    }
    for (std::size_t i : sample) {
      ++bootstrap_counts_[t][static_cast<std::size_t>(labels[i])];
    }
    trees_[t].fit(x, labels, n_classes, sample, tree_opt, rng);
  };

  const long n_trees = static_cast<long>(opt.n_trees);
  if (opt.parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long t = 0; t < n_trees; ++t) grow(static_cast<std::size_t>(t));
  } else {
    for (long t = 0; t < n_trees; ++t) grow(static_cast<std::size_t>(t));
  }
}

std::vector<std::size_t> RandomForest::votes(std::span<const double> row) const {
  std::vector<std::size_t> v(static_cast<std::size_t>(n_classes_), 0);
  for (const DecisionTree& tree : trees_) {
    ++v[static_cast<std::size_t>(tree.predict(row))];
  }
  return v;
}

int RandomForest::predict(std::span<const double> row) const {
  const auto v = votes(row);
  return static_cast<int>(std::max_element(v.begin(), v.end()) - v.begin());
}

double RandomForest::positive_vote_fraction(std::span<const double> row) const {
  const auto v = votes(row);
  return v.size() > 1 ? static_cast<double>(v[1]) / static_cast<double>(trees_.size())
                      : 0.0;
}

std::vector<double> RandomForest::feature_importances() const {
  std::vector<double> total(n_features_, 0.0);
  std::size_t contributing = 0;
  for (const DecisionTree& tree : trees_) {
    const auto& imp = tree.impurity_decrease();
    double sum = 0.0;
    for (double v : imp) sum += v;
    if (sum <= 0.0) continue;
    ++contributing;
    for (std::size_t f = 0; f < n_features_; ++f) total[f] += imp[f] / sum;
  }
  double sum = 0.0;
  for (double v : total) sum += v;
  if (contributing == 0 || sum <= 0.0) {
    std::fill(total.begin(), total.end(),
              n_features_ == 0 ? 0.0 : 1.0 / static_cast<double>(n_features_));
    return total;
  }
  for (double& v : total) v /= sum;
  return total;
}

}  // namespace gcjstyle::learn
