#include <algorithm>
#include <cmath>
#include <set>

#include "gcjstyle/cluster.hpp"
#include "gcjstyle/error.hpp"
#include "gcjstyle/forest.hpp"

namespace gcjstyle::cluster {

Matrix standardize(const Matrix& x) {
  const std::size_t n = x.rows();
  const std::size_t d = x.cols();
  Matrix out(n, d);
  if (n == 0) return out;
  for (std::size_t c = 0; c < d; ++c) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += x(i, c);
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i) var += (x(i, c) - mean) * (x(i, c) - mean);
    const double sd = std::sqrt(var / static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
      out(i, c) = sd > 0.0 ? (x(i, c) - mean) / sd : 0.0;
    }
  }
  return out;
}

ImportanceReport cluster_feature_importance(
    const Matrix& x, const std::vector<int>& assignments, std::uint64_t seed,
    const std::vector<std::string>& feature_names) {
  if (assignments.size() != x.rows() || feature_names.size() != x.cols()) {
    throw Error(ErrorCode::LengthMismatch,
                "cluster_feature_importance: shape mismatch");
  }
  const std::set<int> distinct(assignments.begin(), assignments.end());
  if (distinct.size() < 2) {
    throw Error(ErrorCode::SingleCluster,
                "cluster_feature_importance needs at least two clusters");
  }
  // Relabel densely so arbitrary cluster ids work.
  std::vector<int> labels(assignments.size());
  const std::vector<int> ids(distinct.begin(), distinct.end());
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    labels[i] = static_cast<int>(
        std::lower_bound(ids.begin(), ids.end(), assignments[i]) - ids.begin());
  }

  learn::RandomForest forest;
  learn::ForestOptions opt;
  opt.n_trees = 100;
  forest.fit(x, labels, static_cast<int>(ids.size()), opt, seed);
  const std::vector<double> imp = forest.feature_importances();

  ImportanceReport report;
  for (std::size_t f = 0; f < imp.size(); ++f) {
    report.ranked.emplace_back(feature_names[f], imp[f]);
  }
  std::stable_sort(report.ranked.begin(), report.ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  return report;
}

}  // namespace gcjstyle::cluster
