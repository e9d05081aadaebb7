#include "gcjstyle/kernels.hpp"

#include <limits>

namespace gcjstyle::kernels {

namespace {

inline void pairwise_row(const Matrix& x, std::size_t i, std::span<double> out) {
  const std::size_t n = x.rows();
  const auto xi = x.row(i);
  for (std::size_t j = 0; j < n; ++j) {
    out[i * n + j] = i == j ? 0.0 : squared_distance(xi, x.row(j));
  }
}

inline double tsne_num_row(const Matrix& y, std::size_t i,
                           std::span<double> num) {
  const std::size_t n = y.rows();
  const double yi0 = y(i, 0);
  const double yi1 = y(i, 1);
  double row_sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i) {
      num[i * n + j] = 0.0;
      continue;
    }
    const double d0 = yi0 - y(j, 0);
    const double d1 = yi1 - y(j, 1);
    const double v = 1.0 / (1.0 + d0 * d0 + d1 * d1);
    num[i * n + j] = v;
    row_sum += v;
  }
  return row_sum;
}

inline void tsne_grad_row(const Matrix& p, const Matrix& y, double exaggeration,
                          double inv_z, std::span<const double> num,
                          std::size_t i, Matrix& grad) {
  const std::size_t n = y.rows();
  double g0 = 0.0;
  double g1 = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i) continue;
    const double nij = num[i * n + j];
    const double mult = (exaggeration * p(i, j) - nij * inv_z) * nij;
    g0 += mult * (y(i, 0) - y(j, 0));
    g1 += mult * (y(i, 1) - y(j, 1));
  }
  grad(i, 0) = 4.0 * g0;
  grad(i, 1) = 4.0 * g1;
}

inline bool assign_row(const Matrix& x, const Matrix& centroids, std::size_t i,
                       std::span<int> assignment, std::span<double> sq_dist) {
  const auto xi = x.row(i);
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centroids.rows(); ++c) {
    const double d = squared_distance(xi, centroids.row(c));
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(c);
    }
  }
  sq_dist[i] = best_d;
  const bool changed = assignment[i] != best;
  assignment[i] = best;
  return changed;
}

}  // namespace

void pairwise_sq_dists_serial(const Matrix& x, std::span<double> out) {
  for (std::size_t i = 0; i < x.rows(); ++i) pairwise_row(x, i, out);
}

void pairwise_sq_dists_parallel(const Matrix& x, std::span<double> out) {
  const long n = static_cast<long>(x.rows());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) pairwise_row(x, static_cast<std::size_t>(i), out);
}

double tsne_gradient_serial(const Matrix& p, const Matrix& y,
                            double exaggeration, Matrix& grad,
                            std::span<double> num) {
  const std::size_t n = y.rows();
  std::vector<double> row_sums(n);
  for (std::size_t i = 0; i < n; ++i) row_sums[i] = tsne_num_row(y, i, num);
  double z = 0.0;
  for (double s : row_sums) z += s;
  const double inv_z = 1.0 / z;
  for (std::size_t i = 0; i < n; ++i) {
    tsne_grad_row(p, y, exaggeration, inv_z, num, i, grad);
  }
  return z;
}

double tsne_gradient_parallel(const Matrix& p, const Matrix& y,
                              double exaggeration, Matrix& grad,
                              std::span<double> num) {
  const long n = static_cast<long>(y.rows());
  std::vector<double> row_sums(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    row_sums[i] = tsne_num_row(y, static_cast<std::size_t>(i), num);
  }
  double z = 0.0;
  for (double s : row_sums) z += s;
  const double inv_z = 1.0 / z;
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    tsne_grad_row(p, y, exaggeration, inv_z, num, static_cast<std::size_t>(i),
                  grad);
  }
  return z;
}

std::size_t assign_nearest_serial(const Matrix& x, const Matrix& centroids,
                                  std::span<int> assignment,
                                  std::span<double> sq_dist) {
  std::size_t changed = 0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    changed += assign_row(x, centroids, i, assignment, sq_dist) ? 1 : 0;
  }
  return changed;
}

std::size_t assign_nearest_parallel(const Matrix& x, const Matrix& centroids,
                                    std::span<int> assignment,
                                    std::span<double> sq_dist) {
  const long n = static_cast<long>(x.rows());
  long changed = 0;
#pragma omp parallel for schedule(static) reduction(+ : changed)
  for (long i = 0; i < n; ++i) {
    changed += assign_row(x, centroids, static_cast<std::size_t>(i), assignment,
                          sq_dist)
                   ? 1
                   : 0;
  }
  return static_cast<std::size_t>(changed);
}

}  // namespace gcjstyle::kernels
