#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gcjstyle/matrix.hpp"

namespace gcjstyle::cluster {

/// Per-column z-scores (population variance). Constant columns become 0.
Matrix standardize(const Matrix& x);

// ---------------------------------------------------------------------------
// t-SNE

struct TsneOptions {
  double perplexity = 30.0;
  int iterations = 1000;
  std::uint64_t seed = 42;
  double learning_rate = 200.0;
  double early_exaggeration = 12.0;
  int exaggeration_iterations = 250;
  double initial_momentum = 0.5;
  double final_momentum = 0.8;
  int momentum_switch_iteration = 250;
  double init_stddev = 1e-4;
  bool parallel = true;
};

struct Affinities {
  Matrix conditional;  // row i holds p_{j|i}; rows sum to 1
  Matrix joint;        // (P + P^T) / 2n; symmetric, sums to 1
  std::vector<double> achieved_perplexity;
  double target_perplexity = 0.0;
};

/// Per-row Gaussian bandwidths found by bisection so that each conditional
/// distribution's perplexity is within 1e-4 (relative) of the target.
Affinities compute_affinities(const Matrix& x, double perplexity);

/// KL(P || Q) with Q the Student-t affinities of the embedding y.
double kl_divergence(const Matrix& joint, const Matrix& y);

struct Embedding2D {
  Matrix points;  // n x 2
  double initial_kl = 0.0;
  double final_kl = 0.0;
  std::uint64_t seed = 0;
  double perplexity = 0.0;  // after clamping
  std::vector<std::string> warnings;
};

/// Exact t-SNE to two dimensions. Throws TooFewPoints (n < 4) or
/// NonFiniteInput. Perplexity >= (n-1)/3 is clamped with a warning.
Embedding2D tsne_embed(const Matrix& x, const TsneOptions& options);

// ---------------------------------------------------------------------------
// Ward hierarchical clustering

struct Merge {
  std::size_t left = 0;   // node ids: leaves 0..n-1, merges n..2n-2
  std::size_t right = 0;  // left < right
  double height = 0.0;    // increase in within-cluster sum of squares
  std::size_t size = 0;

  friend bool operator==(const Merge&, const Merge&) = default;
};

struct Dendrogram {
  std::size_t n_leaves = 0;
  std::vector<Merge> merges;  // n - 1 entries
};

/// Greedy Ward agglomeration via Lance-Williams updates. Ties go to the
/// smallest (left, right) node-id pair. Throws TooFewPoints or
/// NonFiniteInput.
Dendrogram ward_hac(const Matrix& x);

/// Flat clusters obtained by stopping the merge sequence at k clusters,
/// labelled 0..k-1 in order of first appearance.
std::vector<int> cut_tree(const Dendrogram& dendrogram, std::size_t k);

struct SuggestedK {
  std::size_t k = 0;
  bool degenerate = false;
  std::vector<std::string> warnings;
};

/// k in [k_min, k_max] maximizing h(n-k+1) / h(n-k) over 1-based merge
/// heights; ties go to the smaller k. Throws InvalidRange.
SuggestedK suggest_k(const Dendrogram& dendrogram, std::size_t k_min,
                     std::size_t k_max);

// ---------------------------------------------------------------------------
// K-Means

struct KMeansOptions {
  std::size_t k = 2;
  std::uint64_t seed = 42;
  int max_iter = 300;
  bool parallel = true;
};

struct ClusterResult {
  std::vector<int> assignments;  // cluster index per row
  Matrix centroids;              // k x d
  double inertia = 0.0;
  int iterations = 0;
  std::vector<double> inertia_history;  // after each Lloyd iteration
};

/// k-means++ seeding then Lloyd iterations until assignments are stable.
/// Empty clusters take the point farthest from its centroid. Throws
/// KTooLarge or NonFiniteInput.
ClusterResult kmeans(const Matrix& x, const KMeansOptions& options);

double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b);

// ---------------------------------------------------------------------------
// Cluster characterization

struct ImportanceReport {
  std::vector<std::pair<std::string, double>> ranked;  // descending
};

/// Random forest (100 trees) trained on x -> cluster label; returns
/// normalized mean-decrease-in-impurity importances. Throws SingleCluster.
ImportanceReport cluster_feature_importance(
    const Matrix& x, const std::vector<int>& assignments, std::uint64_t seed,
    const std::vector<std::string>& feature_names);

}  // namespace gcjstyle::cluster
