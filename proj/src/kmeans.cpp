#include <algorithm>
#include <limits>
#include <map>

#include "gcjstyle/cluster.hpp"
#include "gcjstyle/error.hpp"
#include "gcjstyle/kernels.hpp"
#include "gcjstyle/rng.hpp"

namespace gcjstyle::cluster {

namespace {

Matrix kmeans_plus_plus(const Matrix& x, std::size_t k, Rng& rng) {
  const std::size_t n = x.rows();
  Matrix centroids(k, x.cols());
  std::vector<double> closest(n, std::numeric_limits<double>::infinity());
  std::size_t chosen = rng.below(n);
  for (std::size_t c = 0; c < k; ++c) {
    const auto src = x.row(chosen);
    std::copy(src.begin(), src.end(), centroids.row(c).begin());
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      closest[i] = std::min(closest[i], squared_distance(x.row(i), src));
      total += closest[i];
    }
    if (c + 1 == k) break;
    // All remaining mass zero (duplicates): fall back to a uniform draw.
    chosen = total > 0.0 ? rng.weighted(closest, total) : rng.below(n);
  }
  return centroids;
}

void update_centroids(const Matrix& x, const std::vector<int>& assignment,
                      Matrix& centroids, std::vector<std::size_t>& counts) {
  std::fill(centroids.data().begin(), centroids.data().end(), 0.0);
  std::fill(counts.begin(), counts.end(), 0);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const auto c = static_cast<std::size_t>(assignment[i]);
    ++counts[c];
    auto row = centroids.row(c);
    const auto xi = x.row(i);
    for (std::size_t d = 0; d < x.cols(); ++d) row[d] += xi[d];
  }
  for (std::size_t c = 0; c < centroids.rows(); ++c) {
    if (counts[c] == 0) continue;
    for (double& v : centroids.row(c)) v /= static_cast<double>(counts[c]);
  }
}

double inertia_of(const Matrix& x, const std::vector<int>& assignment,
                  const Matrix& centroids) {
  double total = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    total += squared_distance(x.row(i),
                              centroids.row(static_cast<std::size_t>(assignment[i])));
  }
  return total;
}

}  // namespace

ClusterResult kmeans(const Matrix& x, const KMeansOptions& opt) {
  const std::size_t n = x.rows();
  if (opt.k < 1 || opt.k > n) {
    throw Error(ErrorCode::KTooLarge, "kmeans: k must lie in [1, n]");
  }
  if (!x.all_finite()) {
    throw Error(ErrorCode::NonFiniteInput, "kmeans: non-finite input");
  }

  Rng rng(opt.seed);
  ClusterResult r;
  r.centroids = kmeans_plus_plus(x, opt.k, rng);
  r.assignments.assign(n, -1);
  std::vector<double> sq_dist(n);
  std::vector<std::size_t> counts(opt.k);

  for (int iter = 0; iter < opt.max_iter; ++iter) {
    const std::size_t changed =
        opt.parallel
            ? kernels::assign_nearest_parallel(x, r.centroids, r.assignments, sq_dist)
            : kernels::assign_nearest_serial(x, r.centroids, r.assignments, sq_dist);
    if (changed == 0 && iter > 0) break;
    r.iterations = iter + 1;

    update_centroids(x, r.assignments, r.centroids, counts);
    // Re-seed empty clusters with the point farthest from its centroid.
    for (std::size_t c = 0; c < opt.k; ++c) {
      if (counts[c] != 0) continue;
      std::size_t far = 0;
      double far_d = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        const auto own = static_cast<std::size_t>(r.assignments[i]);
        if (counts[own] <= 1) continue;
        const double d = squared_distance(x.row(i), r.centroids.row(own));
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      if (far_d < 0.0) continue;
      r.assignments[far] = static_cast<int>(c);
      update_centroids(x, r.assignments, r.centroids, counts);
    }
    r.inertia_history.push_back(inertia_of(x, r.assignments, r.centroids));
  }
  r.inertia = inertia_of(x, r.assignments, r.centroids);
  return r;
}

double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::LengthMismatch, "adjusted_rand_index: size mismatch");
  }
  const double n = static_cast<double>(a.size());
  std::map<std::pair<int, int>, double> joint;
  std::map<int, double> rows;
  std::map<int, double> cols;
  for (std::size_t i = 0; i < a.size(); ++i) {
    joint[{a[i], b[i]}] += 1.0;
    rows[a[i]] += 1.0;
    cols[b[i]] += 1.0;
  }
  auto pairs = [](double m) { return m * (m - 1.0) / 2.0; };
  double index = 0.0;
  for (const auto& [key, m] : joint) index += pairs(m);
  double sum_rows = 0.0;
  for (const auto& [key, m] : rows) sum_rows += pairs(m);
  double sum_cols = 0.0;
  for (const auto& [key, m] : cols) sum_cols += pairs(m);
  const double expected = sum_rows * sum_cols / pairs(n);
  const double max_index = (sum_rows + sum_cols) / 2.0;
  if (max_index == expected) return 1.0;
  return (index - expected) / (max_index - expected);
}

}  // namespace gcjstyle::cluster
