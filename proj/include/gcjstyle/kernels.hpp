#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gcjstyle/matrix.hpp"

/// Data-parallel inner loops. Every kernel has a serial reference and an
/// OpenMP version; both produce bit-identical results because each output
/// element is computed by exactly one thread in the same operation order,
/// and reductions are finished serially over per-row partials.
namespace gcjstyle::kernels {

/// out[i*n + j] = ||x_i - x_j||^2, full symmetric n x n.
void pairwise_sq_dists_serial(const Matrix& x, std::span<double> out);
void pairwise_sq_dists_parallel(const Matrix& x, std::span<double> out);

/// t-SNE gradient for a 2-d embedding y (n x 2) against joint affinities p
/// (n x n, scaled by `exaggeration`). Writes grad (n x 2) and returns the
/// Student-t normalizer Z = sum_{i != j} 1 / (1 + ||y_i - y_j||^2).
/// `num` is n x n scratch.
double tsne_gradient_serial(const Matrix& p, const Matrix& y,
                            double exaggeration, Matrix& grad,
                            std::span<double> num);
double tsne_gradient_parallel(const Matrix& p, const Matrix& y,
                              double exaggeration, Matrix& grad,
                              std::span<double> num);

/// Nearest centroid per row (ties to the lower index). Returns the number of
/// rows whose assignment changed; `sq_dist` receives the distance to the
/// chosen centroid.
std::size_t assign_nearest_serial(const Matrix& x, const Matrix& centroids,
                                  std::span<int> assignment,
                                  std::span<double> sq_dist);
std::size_t assign_nearest_parallel(const Matrix& x, const Matrix& centroids,
                                    std::span<int> assignment,
                                    std::span<double> sq_dist);

}  // namespace gcjstyle::kernels
