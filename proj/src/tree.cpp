#include "gcjstyle/tree.hpp"

#include <algorithm>
#include <numeric>

namespace gcjstyle::learn {

namespace {

double gini(const std::vector<double>& counts, double total) {
  if (total <= 0.0) return 0.0;
  double s = 0.0;
  for (double c : counts) s += (c / total) * (c / total);
  return 1.0 - s;
}

struct Split {
  int feature = -1;
  double threshold = 0.0;
  double child_impurity = 0.0;  // weighted sum n_l*g_l + n_r*g_r
};

/// Best split over one feature; returns false if the feature is constant on
/// the node.
bool best_split_on(const Matrix& x, const std::vector<int>& labels,
                   int n_classes, std::vector<std::size_t>& idx,
                   std::size_t feature, Split& best, bool& found) {
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return x(a, feature) < x(b, feature);
  });
  if (x(idx.front(), feature) == x(idx.back(), feature)) return false;

  const double total = static_cast<double>(idx.size());
  std::vector<double> right(static_cast<std::size_t>(n_classes), 0.0);
  std::vector<double> left(static_cast<std::size_t>(n_classes), 0.0);
  for (std::size_t i : idx) right[static_cast<std::size_t>(labels[i])] += 1.0;

  for (std::size_t pos = 0; pos + 1 < idx.size(); ++pos) {
    const auto cls = static_cast<std::size_t>(labels[idx[pos]]);
    left[cls] += 1.0;
    right[cls] -= 1.0;
    const double v = x(idx[pos], feature);
    const double next = x(idx[pos + 1], feature);
    if (v == next) continue;
    const double nl = static_cast<double>(pos + 1);
    const double nr = total - nl;
    const double impurity = nl * gini(left, nl) + nr * gini(right, nr);
    double threshold = v + (next - v) / 2.0;
    if (threshold >= next) threshold = v;  // midpoint rounding guard
    const auto f = static_cast<int>(feature);
    if (!found || impurity < best.child_impurity ||
        (impurity == best.child_impurity &&
         (f < best.feature ||
          (f == best.feature && threshold < best.threshold)))) {
      best = {f, threshold, impurity};
      found = true;
    }
  }
  return true;
}

}  // namespace

void DecisionTree::fit(const Matrix& x, const std::vector<int>& labels,
                       int n_classes, std::span<const std::size_t> samples,
                       const TreeOptions& opt, Rng& rng) {
  nodes_.clear();
  depth_ = 0;
  importance_.assign(x.cols(), 0.0);
  const double root_n = static_cast<double>(samples.size());
  const std::size_t d = x.cols();
  const std::size_t max_features =
      opt.max_features == 0 ? d : std::min(opt.max_features, d);

  struct Pending {
    std::size_t node;
    std::vector<std::size_t> idx;
    int depth;
  };
  std::vector<Pending> stack;
  nodes_.emplace_back();
  stack.push_back({0, std::vector<std::size_t>(samples.begin(), samples.end()), 0});

  std::vector<std::size_t> features(d);
  while (!stack.empty()) {
    Pending p = std::move(stack.back());
    stack.pop_back();
    depth_ = std::max(depth_, p.depth);

    std::vector<double> counts(static_cast<std::size_t>(n_classes), 0.0);
    for (std::size_t i : p.idx) counts[static_cast<std::size_t>(labels[i])] += 1.0;
    const double n = static_cast<double>(p.idx.size());
    const double impurity = gini(counts, n);
    {
      Node& node = nodes_[p.node];
      node.distribution = counts;
      for (double& c : node.distribution) c /= n;
    }

    const bool can_split = impurity > 0.0 && p.idx.size() >= opt.min_samples_split &&
                           (opt.max_depth == 0 || p.depth < opt.max_depth);
    if (!can_split) continue;

    // Visit features in random order; constant ones do not count toward
    // max_features.
    std::iota(features.begin(), features.end(), std::size_t{0});
    if (max_features < d) rng.shuffle(features);
    Split best;
    bool found = false;
    std::size_t visited = 0;
    std::vector<std::size_t> work = p.idx;
    for (std::size_t f : features) {
      if (visited == max_features) break;
      if (best_split_on(x, labels, n_classes, work, f, best, found)) ++visited;
    }
    if (!found) continue;

    std::vector<std::size_t> left_idx;
    std::vector<std::size_t> right_idx;
    const auto bf = static_cast<std::size_t>(best.feature);
    for (std::size_t i : p.idx) {
      (x(i, bf) <= best.threshold ? left_idx : right_idx).push_back(i);
    }
    importance_[bf] += (n * impurity - best.child_impurity) / root_n;

    const std::size_t left_id = nodes_.size();
    nodes_.emplace_back();
    const std::size_t right_id = nodes_.size();
    nodes_.emplace_back();
    Node& node = nodes_[p.node];
    node.feature = best.feature;
    node.threshold = best.threshold;
    node.left = left_id;
    node.right = right_id;
    stack.push_back({right_id, std::move(right_idx), p.depth + 1});
    stack.push_back({left_id, std::move(left_idx), p.depth + 1});
  }
}

std::span<const double> DecisionTree::predict_proba(
    std::span<const double> row) const {
  std::size_t cur = 0;
  while (nodes_[cur].feature >= 0) {
    const Node& node = nodes_[cur];
    cur = row[static_cast<std::size_t>(node.feature)] <= node.threshold
              ? node.left
              : node.right;
  }
  return nodes_[cur].distribution;
}

int DecisionTree::predict(std::span<const double> row) const {
  const auto dist = predict_proba(row);
  return static_cast<int>(std::max_element(dist.begin(), dist.end()) -
                          dist.begin());
}

}  // namespace gcjstyle::learn
