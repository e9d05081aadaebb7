#include <algorithm>
#include <limits>
#include <map>

#include "gcjstyle/cluster.hpp"
#include "gcjstyle/error.hpp"
#include "gcjstyle/kernels.hpp"

namespace gcjstyle::cluster {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Condensed upper-triangular storage over slot indices.
class PairTable {
 public:
  explicit PairTable(std::size_t n) : n_(n), d_(n * (n - 1) / 2) {}

  double& at(std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    return d_[a * n_ - a * (a + 1) / 2 + (b - a - 1)];
  }

 private:
  std::size_t n_;
  std::vector<double> d_;
};

}  // namespace

Dendrogram ward_hac(const Matrix& x) {
  const std::size_t n = x.rows();
  if (n < 2) throw Error(ErrorCode::TooFewPoints, "ward_hac needs n >= 2");
  if (!x.all_finite()) {
    throw Error(ErrorCode::NonFiniteInput, "ward_hac: non-finite input");
  }

  // Ward cost of merging two singletons is ||a - b||^2 / 2.
  PairTable cost(n);
  {
    std::vector<double> dist(n * n);
    kernels::pairwise_sq_dists_parallel(x, dist);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) cost.at(i, j) = dist[i * n + j] / 2.0;
    }
  }

  std::vector<std::size_t> node(n);   // slot -> current node id
  std::vector<std::size_t> size(n, 1);
  std::vector<bool> active(n, true);
  std::vector<std::size_t> nn(n, n);  // slot -> nearest active slot
  std::vector<double> nn_cost(n, kInf);

  // Nearest neighbour of a slot; ties go to the partner with the smaller
  // node id, which yields the smallest (left, right) pair.
  auto refresh = [&](std::size_t a) {
    nn[a] = n;
    nn_cost[a] = kInf;
    for (std::size_t b = 0; b < n; ++b) {
      if (b == a || !active[b]) continue;
      const double c = cost.at(a, b);
      if (c < nn_cost[a] || (c == nn_cost[a] && node[b] < node[nn[a]])) {
        nn_cost[a] = c;
        nn[a] = b;
      }
    }
  };
  for (std::size_t i = 0; i < n; ++i) node[i] = i;
  for (std::size_t i = 0; i < n; ++i) refresh(i);

  Dendrogram dg;
  dg.n_leaves = n;
  dg.merges.reserve(n - 1);
  for (std::size_t step = 0; step + 1 < n; ++step) {
    std::size_t a = n;
    for (std::size_t s = 0; s < n; ++s) {
      if (!active[s]) continue;
      if (a == n) {
        a = s;
        continue;
      }
      if (nn_cost[s] < nn_cost[a]) {
        a = s;
      } else if (nn_cost[s] == nn_cost[a]) {
        const auto pair_s = std::minmax(node[s], node[nn[s]]);
        const auto pair_a = std::minmax(node[a], node[nn[a]]);
        if (pair_s < pair_a) a = s;
      }
    }
    const std::size_t b = nn[a];
    const double height = nn_cost[a];
    const std::size_t left = std::min(node[a], node[b]);
    const std::size_t right = std::max(node[a], node[b]);
    const std::size_t merged = size[a] + size[b];
    dg.merges.push_back({left, right, height, merged});

    // Lance-Williams update for Ward, kept in slot a.
    const double na = static_cast<double>(size[a]);
    const double nb = static_cast<double>(size[b]);
    for (std::size_t k = 0; k < n; ++k) {
      if (!active[k] || k == a || k == b) continue;
      const double nk = static_cast<double>(size[k]);
      cost.at(a, k) = ((na + nk) * cost.at(a, k) + (nb + nk) * cost.at(b, k) -
                       nk * height) /
                      (na + nb + nk);
    }
    active[b] = false;
    size[a] = merged;
    node[a] = n + step;

    refresh(a);
    for (std::size_t k = 0; k < n; ++k) {
      if (!active[k] || k == a) continue;
      if (nn[k] == a || nn[k] == b) {
        refresh(k);
      } else if (cost.at(a, k) < nn_cost[k]) {
        nn_cost[k] = cost.at(a, k);
        nn[k] = a;
      }
    }
  }
  return dg;
}

std::vector<int> cut_tree(const Dendrogram& dg, std::size_t k) {
  const std::size_t n = dg.n_leaves;
  if (k < 1 || k > n) {
    throw Error(ErrorCode::InvalidRange, "cut_tree: k out of range");
  }
  // Union-find over the first n - k merges.
  std::vector<std::size_t> parent(2 * n - 1);
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (std::size_t s = 0; s < n - k; ++s) {
    const Merge& m = dg.merges[s];
    parent[find(m.left)] = n + s;
    parent[find(m.right)] = n + s;
  }
  std::map<std::size_t, int> label_of_root;
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = find(i);
    auto [it, inserted] =
        label_of_root.emplace(root, static_cast<int>(label_of_root.size()));
    labels[i] = it->second;
  }
  return labels;
}

SuggestedK suggest_k(const Dendrogram& dg, std::size_t k_min,
                     std::size_t k_max) {
  const std::size_t n = dg.n_leaves;
  if (k_min < 2 || k_min > k_max || k_max + 1 > n) {
    throw Error(ErrorCode::InvalidRange,
                "suggest_k requires 2 <= k_min <= k_max <= n - 1");
  }
  // h(i) is the i-th merge height, 1-based.
  auto h = [&](std::size_t i) { return dg.merges[i - 1].height; };

  SuggestedK out;
  out.k = k_min;
  double best = -1.0;
  for (std::size_t k = k_min; k <= k_max; ++k) {
    const double below = h(n - k);
    if (!(below > 0.0)) continue;
    const double gap = h(n - k + 1) / below;
    if (gap > best) {
      best = gap;
      out.k = k;
    }
  }

  bool all_equal = true;
  for (const Merge& m : dg.merges) {
    if (m.height != dg.merges.front().height) all_equal = false;
  }
  if (best < 0.0 || all_equal) {
    out.k = k_min;
    out.degenerate = true;
    out.warnings.push_back(
        "dendrogram heights are degenerate; falling back to k_min");
  }
  return out;
}

}  // namespace gcjstyle::cluster
